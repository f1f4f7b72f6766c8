#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"

#include "lqg/left_quasigroup.hpp"
#include "lqg/perm.hpp"

namespace lqg {

  namespace {
    Perm cyc(std::size_t n, std::vector<std::vector<int>> const& c) {
      return Perm::from_cycles(n, c);
    }

    PermGroup klein() {
      return PermGroup::generate(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
    }

    // Every subgroup of a small group, by closing all subsets of elements
    // under one extra generator at a time.
    std::vector<PermGroup> all_subgroups(PermGroup const& g) {
      std::vector<PermGroup> found{PermGroup(g.degree())};
      for (std::size_t i = 0; i < found.size(); ++i) {
        for (auto const& x : g.elements()) {
          if (found[i].contains(x)) {
            continue;
          }
          PermGroup h = found[i].with(x);
          if (std::find(found.begin(), found.end(), h) == found.end()) {
            found.push_back(h);
          }
        }
      }
      return found;
    }
  }  // namespace

  TEST_CASE("Perm: basic operations", "[perm]") {
    Perm p = Perm::from_images(std::vector<int>{1, 2, 0, 3});
    REQUIRE(p(0) == 1);
    REQUIRE((p * p.inverse()).is_identity());
    REQUIRE(p.pow(3).is_identity());
    REQUIRE(p.pow(-1) == p.inverse());
    REQUIRE(p.fixed_points() == 1);
    REQUIRE(p.to_string(true) == "(1 2 3)");
    REQUIRE_THROWS_AS(Perm::from_images(std::vector<int>{0, 0, 1}), Error);
  }

  TEST_CASE("group_from_generators", "[perm]") {
    SECTION("empty generator list gives the trivial group") {
      REQUIRE(group_from_generators(3, {}).order() == 1);
    }
    SECTION("a transposition and a 3-cycle give Sym_3") {
      PermGroup g = group_from_generators(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})});
      REQUIRE(g.order() == 6);
      REQUIRE(g == symmetric_group(3));
    }
    SECTION("rows of the 4-element table") {
      auto const q = fixtures::P4();
      PermGroup  g = group_from_generators(4, q.left_translations());
      REQUIRE(g.order() == 8);
      REQUIRE(!g.is_abelian());
    }
    SECTION("errors") {
      REQUIRE_THROWS_AS(group_from_generators(3, {cyc(4, {{0, 1}})}), Error);
      REQUIRE_THROWS_AS(group_from_generators(5, {cyc(5, {{0, 1}}), cyc(5, {{0, 1, 2, 3, 4}})}, 50),
                        Error);
    }
  }

  TEST_CASE("group closure under products", "[perm]") {
    std::mt19937 rng(7);
    PermGroup    g = symmetric_group(5);
    REQUIRE(g.order() == 120);
    for (int i = 0; i < 200; ++i) {
      auto const& a = g.elements()[rng() % g.order()];
      auto const& b = g.elements()[rng() % g.order()];
      REQUIRE(g.contains(a * b));
      REQUIRE(g.contains(a.inverse()));
    }
    for (auto const& x : g.generators()) {
      REQUIRE(g.contains(x));
    }
  }

  TEST_CASE("orbit_partition", "[perm]") {
    REQUIRE(orbit_partition(PermGroup(4)).number_of_blocks() == 4);
    REQUIRE(orbit_partition(PermGroup::generate(3, {cyc(3, {{0, 1, 2}})})).is_full());
    auto const q = fixtures::R3();
    PermGroup  g = PermGroup::generate(3, {q.left(0), q.left(1), q.left(2)});
    REQUIRE(orbit_partition(g).is_full());
  }

  TEST_CASE("normal_closure", "[perm]") {
    PermGroup s3 = symmetric_group(3);
    REQUIRE(normal_closure(s3, {Perm(3)}).is_trivial());
    REQUIRE(normal_closure(s3, {cyc(3, {{0, 1, 2}})}).order() == 3);
    REQUIRE(normal_closure(s3, {cyc(3, {{0, 1}})}).order() == 6);
  }

  TEST_CASE("centralizer and center", "[perm]") {
    PermGroup s3 = symmetric_group(3);
    REQUIRE(centralizer(s3, PermGroup(3)) == s3);
    REQUIRE(center(s3).is_trivial());
    REQUIRE(center(klein()) == klein());
    PermGroup d4 = PermGroup::generate(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
    REQUIRE(center(d4).order() == 2);
  }

  TEST_CASE("commutator_subgroup", "[perm]") {
    PermGroup s3 = symmetric_group(3);
    REQUIRE(commutator_subgroup(s3, s3, PermGroup(3)).is_trivial());
    REQUIRE(commutator_subgroup(s3, s3, s3).order() == 3);
    auto const q = fixtures::R3();
    PermGroup  dis
        = PermGroup::generate(3, {q.left(1) * q.left(0).inverse(), q.left(2) * q.left(0).inverse()});
    REQUIRE(dis.order() == 3);
    REQUIRE(commutator_subgroup(dis, dis, dis).is_trivial());
    PermGroup s4 = symmetric_group(4);
    REQUIRE(commutator_subgroup(s4, s4, s4).order() == 12);
  }

  TEST_CASE("group_series", "[perm]") {
    SECTION("trivial group") {
      auto s = group_series(PermGroup(3));
      REQUIRE(s.solvable_length == 0);
      REQUIRE(s.nilpotent_length == 0);
    }
    SECTION("Sym_3") {
      auto s = group_series(symmetric_group(3));
      REQUIRE(s.is_solvable);
      REQUIRE(s.solvable_length == 2);
      REQUIRE(!s.is_nilpotent);
      REQUIRE(!s.nilpotent_length);
    }
    SECTION("abelian groups") {
      auto s = group_series(klein());
      REQUIRE(s.solvable_length == 1);
      REQUIRE(s.nilpotent_length == 1);
    }
    SECTION("dihedral group of order 8 has class 2") {
      auto s = group_series(PermGroup::generate(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})}));
      REQUIRE(s.nilpotent_length == 2);
      REQUIRE(s.solvable_length == 2);
    }
    SECTION("Sym_5 is not solvable") {
      auto s = group_series(symmetric_group(5));
      REQUIRE(!s.is_solvable);
    }
    SECTION("series are descending") {
      for (auto const& g : {symmetric_group(4), klein(), symmetric_group(3)}) {
        auto s = group_series(g);
        for (std::size_t i = 1; i < s.derived.size(); ++i) {
          REQUIRE(s.derived[i].is_subgroup_of(s.derived[i - 1]));
        }
        for (std::size_t i = 1; i < s.lower_central.size(); ++i) {
          REQUIRE(s.lower_central[i].is_subgroup_of(s.lower_central[i - 1]));
        }
      }
    }
  }

  TEST_CASE("normal_subgroups", "[perm]") {
    REQUIRE(normal_subgroups(PermGroup(2)).size() == 1);
    REQUIRE(normal_subgroups(symmetric_group(3)).size() == 3);
    REQUIRE(normal_subgroups(klein()).size() == 5);
    REQUIRE(normal_subgroups(symmetric_group(4)).size() == 4);

    SECTION("agrees with a brute-force subgroup scan") {
      PermGroup d4 = PermGroup::generate(4, {cyc(4, {{0, 1, 2, 3}}), cyc(4, {{0, 2}})});
      for (auto const& g : {symmetric_group(4), d4, symmetric_group(3), klein()}) {
        auto const normals = normal_subgroups(g);
        for (auto const& h : normals) {
          for (auto const& x : g.generators()) {
            for (auto const& y : h.generators()) {
              REQUIRE(h.contains(x * y * x.inverse()));
            }
          }
        }
        std::size_t expected = 0;
        for (auto const& h : all_subgroups(g)) {
          bool normal = true;
          for (auto const& x : g.elements()) {
            for (auto const& y : h.generators()) {
              normal = normal && h.contains(x * y * x.inverse());
            }
          }
          if (normal) {
            ++expected;
            REQUIRE(std::find(normals.begin(), normals.end(), h) != normals.end());
          }
        }
        REQUIRE(normals.size() == expected);
      }
    }
  }

  TEST_CASE("is_semiregular", "[perm]") {
    PermGroup t = PermGroup::generate(3, {cyc(3, {{0, 1}})});
    REQUIRE(is_semiregular(t, Partition::discrete(3)));
    REQUIRE(is_semiregular(t, Partition::from_blocks(3, {{0, 1}, {2}})));
    REQUIRE(!is_semiregular(t, Partition::from_blocks(3, {{0, 2}, {1}})));
    REQUIRE(is_semiregular(PermGroup(3), Partition::full(3)));
    // one block: every non-identity element is fixed-point-free
    REQUIRE(is_semiregular(klein(), Partition::full(4)));
    REQUIRE(!is_semiregular(symmetric_group(3), Partition::full(3)));
  }

  TEST_CASE("stabilizer_partition", "[perm]") {
    REQUIRE(stabilizer_partition(PermGroup(3)).is_full());
    PermGroup t = PermGroup::generate(3, {cyc(3, {{0, 1}})});
    REQUIRE(stabilizer_partition(t) == Partition::from_blocks(3, {{0, 1}, {2}}));
    // The displacement group of the 4-element table is the regular Klein
    // group, so all stabilizers are trivial.
    auto const q   = fixtures::P4();
    PermGroup  dis = PermGroup::generate(
        4, {q.left(1) * q.left(0).inverse(), q.left(3) * q.left(0).inverse()});
    REQUIRE(dis == klein().with(cyc(4, {{0, 3}, {1, 2}})));
    REQUIRE(stabilizer_partition(dis).is_full());
  }

}  // namespace lqg
