#pragma once

// Umbrella header for the left quasigroup library.

#include "commutator.hpp"
#include "congruence.hpp"
#include "constructions.hpp"
#include "core.hpp"
#include "enumerate.hpp"
#include "error.hpp"
#include "iso.hpp"
#include "left_quasigroup.hpp"
#include "partition.hpp"
#include "perm.hpp"
#include "report.hpp"
#include "verify.hpp"
