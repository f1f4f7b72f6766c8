#pragma once

// Exhaustive generation of small left quasigroups by class, with two
// independent strategies and isomorphism reduction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "iso.hpp"
#include "left_quasigroup.hpp"

namespace lqg {

  enum class TableClass {
    all,
    rack,
    quandle,
    semimedial,
    medial,
    two_divisible_semimedial,
    latin,
  };

  constexpr std::string_view to_string(TableClass c) noexcept {
    switch (c) {
      case TableClass::all: return "all";
      case TableClass::rack: return "rack";
      case TableClass::quandle: return "quandle";
      case TableClass::semimedial: return "semimedial";
      case TableClass::medial: return "medial";
      case TableClass::two_divisible_semimedial: return "2-divisible-semimedial";
      case TableClass::latin: return "latin";
    }
    return "unknown";
  }

  inline TableClass table_class_from_string(std::string_view s) {
    for (auto c : {TableClass::all,
                   TableClass::rack,
                   TableClass::quandle,
                   TableClass::semimedial,
                   TableClass::medial,
                   TableClass::two_divisible_semimedial,
                   TableClass::latin}) {
      if (to_string(c) == s) {
        return c;
      }
    }
    detail::raise(ErrorKind::InvalidArgument, "unknown class " + std::string(s));
  }

  //! Whether a complete table belongs to the class.
  inline bool in_class(LeftQuasigroup const& q, TableClass c) {
    switch (c) {
      case TableClass::all: return true;
      case TableClass::rack: return is_rack(q);
      case TableClass::quandle: return is_quandle(q);
      case TableClass::semimedial: return is_semimedial(q);
      case TableClass::medial: return is_medial(q);
      case TableClass::two_divisible_semimedial:
        return is_semimedial(q) && squaring_profile(q).bijective;
      case TableClass::latin: return identities::latin(q);
    }
    return false;
  }

  struct EnumSpec {
    std::size_t n          = 1;
    TableClass  cls        = TableClass::all;
    bool        up_to_iso  = false;
    std::size_t limit      = static_cast<std::size_t>(-1);
  };

  inline constexpr std::size_t kMaxEnumerateAll         = 4;
  inline constexpr std::size_t kMaxEnumerateConstrained = 6;

  inline void check_spec(EnumSpec const& spec) {
    detail::check(spec.n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");
    detail::check(spec.limit > 0, ErrorKind::InvalidArgument, "limit must be > 0");
    std::size_t cap = spec.cls == TableClass::all ? kMaxEnumerateAll : kMaxEnumerateConstrained;
    detail::check(spec.n <= cap,
                  ErrorKind::OrderTooLarge,
                  "class " + std::string(to_string(spec.cls)) + " enumerated up to n = "
                      + std::to_string(cap));
  }

  namespace detail {
    inline constexpr int kUnset = 255;

    //! A table under construction with unset cells = kUnset; every identity
    //! instance is checked only once all the cells it reads are set.
    class PartialTable {
     public:
      explicit PartialTable(std::size_t n) : _n(n), _t(n * n, kUnset) {}

      int at(std::size_t a, std::size_t b) const {
        return _t[a * _n + b];
      }

      void set(std::size_t a, std::size_t b, int v) {
        _t[a * _n + b] = static_cast<std::uint8_t>(v);
      }

      std::uint8_t* row(std::size_t a) {
        return _t.data() + a * _n;
      }

      std::vector<std::uint8_t> const& cells() const noexcept {
        return _t;
      }

      //! a*b if set; kUnset otherwise (also when a is kUnset).
      int mul(int a, int b) const {
        if (a == kUnset || b == kUnset) {
          return kUnset;
        }
        return _t[static_cast<std::size_t>(a) * _n + static_cast<std::size_t>(b)];
      }

      //! No decided instance of the class identity is violated.
      bool consistent(TableClass c) const {
        switch (c) {
          case TableClass::all: return true;
          case TableClass::rack:
          case TableClass::quandle: return ld_ok();
          case TableClass::semimedial: return semimedial_ok();
          case TableClass::two_divisible_semimedial: return semimedial_ok() && squares_distinct();
          case TableClass::medial: return medial_ok();
          case TableClass::latin: return columns_distinct();
        }
        return true;
      }

     private:
      bool ld_ok() const {
        for (std::size_t x = 0; x < _n; ++x) {
          for (std::size_t y = 0; y < _n; ++y) {
            int xy = at(x, y);
            if (xy == kUnset) {
              continue;
            }
            for (std::size_t z = 0; z < _n; ++z) {
              int l = mul(static_cast<int>(x), mul(static_cast<int>(y), static_cast<int>(z)));
              int r = mul(xy, at(x, z));
              if (l != kUnset && r != kUnset && l != r) {
                return false;
              }
            }
          }
        }
        return true;
      }

      bool semimedial_ok() const {
        for (std::size_t x = 0; x < _n; ++x) {
          int xx = at(x, x);
          if (xx == kUnset) {
            continue;
          }
          for (std::size_t y = 0; y < _n; ++y) {
            int xy = at(x, y);
            if (xy == kUnset) {
              continue;
            }
            for (std::size_t z = 0; z < _n; ++z) {
              int l = mul(xx, at(y, z));
              int r = mul(xy, at(x, z));
              if (l != kUnset && r != kUnset && l != r) {
                return false;
              }
            }
          }
        }
        return true;
      }

      bool medial_ok() const {
        for (std::size_t x = 0; x < _n; ++x) {
          for (std::size_t y = 0; y < _n; ++y) {
            int xy = at(x, y);
            if (xy == kUnset) {
              continue;
            }
            for (std::size_t z = 0; z < _n; ++z) {
              int xz = at(x, z);
              if (xz == kUnset) {
                continue;
              }
              for (std::size_t u = 0; u < _n; ++u) {
                int l = mul(xy, at(z, u));
                int r = mul(xz, at(y, u));
                if (l != kUnset && r != kUnset && l != r) {
                  return false;
                }
              }
            }
          }
        }
        return true;
      }

      bool squares_distinct() const {
        std::vector<bool> seen(_n, false);
        for (std::size_t x = 0; x < _n; ++x) {
          int s = at(x, x);
          if (s == kUnset) {
            continue;
          }
          if (seen[static_cast<std::size_t>(s)]) {
            return false;
          }
          seen[static_cast<std::size_t>(s)] = true;
        }
        return true;
      }

      bool columns_distinct() const {
        for (std::size_t b = 0; b < _n; ++b) {
          std::vector<bool> seen(_n, false);
          for (std::size_t a = 0; a < _n; ++a) {
            int v = at(a, b);
            if (v == kUnset) {
              continue;
            }
            if (seen[static_cast<std::size_t>(v)]) {
              return false;
            }
            seen[static_cast<std::size_t>(v)] = true;
          }
        }
        return true;
      }

      std::size_t               _n;
      std::vector<std::uint8_t> _t;
    };

    inline LeftQuasigroup to_quasigroup(std::size_t n, std::vector<std::uint8_t> const& t) {
      return LeftQuasigroup::from_flat(n, t);
    }
  }  // namespace detail

  //! Row-by-row backtracking over the n! permutations per row (in
  //! lexicographic order), pruning partial tables that already violate the
  //! class identity. Calls f on every table in lexicographic order; f
  //! returns false to stop. Returns the number of tables emitted.
  template <typename F>
  std::size_t for_each_table(EnumSpec const& spec, F&& f) {
    check_spec(spec);
    std::size_t const             n = spec.n;
    std::vector<std::vector<int>> perms;
    std::vector<int>              p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    detail::PartialTable t(n);
    std::size_t          count = 0;
    bool                 stop  = false;
    std::function<void(std::size_t)> rec = [&](std::size_t row) {
      if (row == n) {
        LeftQuasigroup q = detail::to_quasigroup(n, t.cells());
        if (!in_class(q, spec.cls)) {
          return;
        }
        ++count;
        if (!f(q) || count >= spec.limit) {
          stop = true;
        }
        return;
      }
      for (auto const& perm : perms) {
        if (spec.cls == TableClass::quandle
            && perm[row] != static_cast<int>(row)) {
          continue;
        }
        std::copy(perm.begin(), perm.end(), t.row(row));
        if (t.consistent(spec.cls)) {
          rec(row + 1);
        }
        if (stop) {
          break;
        }
      }
      std::fill(t.row(row), t.row(row) + n, detail::kUnset);
    };
    rec(0);
    return count;
  }

  //! Cell-by-cell backtracking (row-major), each cell choosing a value not
  //! yet used in its row, with the same consistency pruning. Independent of
  //! for_each_table; used as a cross-check.
  template <typename F>
  std::size_t for_each_table_by_cells(EnumSpec const& spec, F&& f) {
    check_spec(spec);
    std::size_t const              n = spec.n;
    detail::PartialTable           t(n);
    std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
    std::size_t                    count = 0;
    bool                           stop  = false;
    std::function<void(std::size_t)> rec = [&](std::size_t cell) {
      if (cell == n * n) {
        LeftQuasigroup q = detail::to_quasigroup(n, t.cells());
        if (!in_class(q, spec.cls)) {
          return;
        }
        ++count;
        if (!f(q) || count >= spec.limit) {
          stop = true;
        }
        return;
      }
      std::size_t const a = cell / n, b = cell % n;
      for (std::size_t v = 0; v < n && !stop; ++v) {
        if (used[a][v]) {
          continue;
        }
        if (spec.cls == TableClass::quandle && a == b && v != a) {
          continue;
        }
        used[a][v] = true;
        t.set(a, b, static_cast<int>(v));
        if (t.consistent(spec.cls)) {
          rec(cell + 1);
        }
        t.set(a, b, detail::kUnset);
        used[a][v] = false;
      }
    };
    rec(0);
    return count;
  }

  //! The lexicographically least table of each isomorphism class, sorted.
  //! Canonical forms up to order 8, pairwise isomorphism tests beyond.
  inline std::vector<LeftQuasigroup> dedupe_up_to_iso(std::vector<LeftQuasigroup> const& tables) {
    if (tables.empty()) {
      return {};
    }
    std::size_t const n = tables.front().order();
    for (auto const& q : tables) {
      detail::check(q.order() == n, ErrorKind::SizeMismatch, "tables of different order");
    }
    if (n <= kMaxCanonicalOrder) {
      std::set<LeftQuasigroup> reps;
      for (auto const& q : tables) {
        reps.insert(canonical_form(q));
      }
      return {reps.begin(), reps.end()};
    }
    detail::check_iso_order(n);
    std::vector<LeftQuasigroup> reps;
    for (auto const& q : tables) {
      bool merged = false;
      for (auto& r : reps) {
        if (is_isomorphic(r, q)) {
          r      = std::min(r, q);
          merged = true;
          break;
        }
      }
      if (!merged) {
        reps.push_back(q);
      }
    }
    std::sort(reps.begin(), reps.end());
    return reps;
  }

  //! Pairwise backtracking isomorphism reduction, bucketed by invariants;
  //! independent of canonical_form. Keeps the least table per class.
  inline std::vector<LeftQuasigroup> dedupe_pairwise(std::vector<LeftQuasigroup> const& tables) {
    std::map<std::vector<std::vector<int>>, std::vector<LeftQuasigroup>> buckets;
    for (auto const& q : tables) {
      detail::check_iso_order(q.order());
      auto inv = detail::element_invariants(q);
      std::sort(inv.begin(), inv.end());
      auto& reps   = buckets[inv];
      bool  merged = false;
      for (auto& r : reps) {
        if (is_isomorphic(r, q)) {
          r      = std::min(r, q);
          merged = true;
          break;
        }
      }
      if (!merged) {
        reps.push_back(q);
      }
    }
    std::vector<LeftQuasigroup> out;
    for (auto& [k, reps] : buckets) {
      out.insert(out.end(), reps.begin(), reps.end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  //! All tables described by an EnumSpec (reduced up to isomorphism when requested).
  inline std::vector<LeftQuasigroup> enumerate_tables(EnumSpec const& spec) {
    std::vector<LeftQuasigroup> out;
    if (spec.up_to_iso && spec.n <= kMaxCanonicalOrder) {
      std::set<LeftQuasigroup> reps;
      EnumSpec                 all = spec;
      all.limit                    = static_cast<std::size_t>(-1);
      for_each_table(all, [&](LeftQuasigroup const& q) {
        reps.insert(canonical_form(q));
        return reps.size() < spec.limit;
      });
      return {reps.begin(), reps.end()};
    }
    for_each_table(spec, [&](LeftQuasigroup const& q) {
      out.push_back(q);
      return true;
    });
    return spec.up_to_iso ? dedupe_up_to_iso(out) : out;
  }

}  // namespace lqg
