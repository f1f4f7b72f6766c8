#include <set>
#include <vector>

#include "catch_amalgamated.hpp"

#include "lqg/enumerate.hpp"
#include "lqg/iso.hpp"

namespace lqg {

  namespace {
    constexpr TableClass kClasses[] = {TableClass::all,
                                       TableClass::rack,
                                       TableClass::quandle,
                                       TableClass::semimedial,
                                       TableClass::medial,
                                       TableClass::two_divisible_semimedial,
                                       TableClass::latin};

    std::size_t count(EnumSpec const& spec) {
      return for_each_table(spec, [](LeftQuasigroup const&) { return true; });
    }
  }  // namespace

  TEST_CASE("counts of all tables", "[enumerate]") {
    REQUIRE(count({1, TableClass::all}) == 1);
    REQUIRE(count({2, TableClass::all}) == 4);
    REQUIRE(count({3, TableClass::all}) == 216);
    REQUIRE(count({4, TableClass::all}) == 331776);
    REQUIRE(enumerate_tables({2, TableClass::all}).size() == 4);
  }

  TEST_CASE("every emitted table passes its class filter", "[enumerate]") {
    for (auto cls : kClasses) {
      for (std::size_t n = 1; n <= 4; ++n) {
        for (auto const& q : enumerate_tables({n, cls})) {
          REQUIRE(q.order() == n);
          REQUIRE(from_table(q.rows()) == q);
          REQUIRE(in_class(q, cls));
        }
      }
    }
  }

  TEST_CASE("pruned enumeration agrees with filtering all tables", "[enumerate][exhaustive]") {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::size_t> filtered(std::size(kClasses), 0);
      for_each_table({n, TableClass::all}, [&](LeftQuasigroup const& q) {
        for (std::size_t i = 0; i < std::size(kClasses); ++i) {
          filtered[i] += in_class(q, kClasses[i]);
        }
        return true;
      });
      for (std::size_t i = 0; i < std::size(kClasses); ++i) {
        INFO(to_string(kClasses[i]) << " n = " << n);
        REQUIRE(count({n, kClasses[i]}) == filtered[i]);
      }
    }
  }

  TEST_CASE("row and cell strategies agree", "[enumerate]") {
    for (auto cls : {TableClass::quandle, TableClass::rack, TableClass::medial}) {
      for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<LeftQuasigroup> rows, cells;
        for_each_table({n, cls}, [&](LeftQuasigroup const& q) {
          rows.push_back(q);
          return true;
        });
        for_each_table_by_cells({n, cls}, [&](LeftQuasigroup const& q) {
          cells.push_back(q);
          return true;
        });
        INFO(to_string(cls) << " n = " << n);
        REQUIRE(std::set<LeftQuasigroup>(rows.begin(), rows.end())
                == std::set<LeftQuasigroup>(cells.begin(), cells.end()));
        REQUIRE(rows.size() == cells.size());
        if (cls == TableClass::quandle) {
          REQUIRE(dedupe_up_to_iso(rows) == dedupe_pairwise(cells));
        }
      }
    }
  }

  TEST_CASE("enumeration is deterministic and lexicographic", "[enumerate]") {
    auto const a = enumerate_tables({3, TableClass::all});
    auto const b = enumerate_tables({3, TableClass::all});
    REQUIRE(a == b);
    REQUIRE(std::is_sorted(a.begin(), a.end()));
    auto const c = enumerate_tables({4, TableClass::rack, true});
    REQUIRE(c == enumerate_tables({4, TableClass::rack, true}));
    REQUIRE(std::is_sorted(c.begin(), c.end()));
  }

  TEST_CASE("limit", "[enumerate]") {
    REQUIRE(enumerate_tables({3, TableClass::all, false, 10}).size() == 10);
    REQUIRE(enumerate_tables({3, TableClass::all, true, 5}).size() == 5);
    auto const first = enumerate_tables({3, TableClass::all, false, 10});
    auto const all   = enumerate_tables({3, TableClass::all});
    REQUIRE(std::equal(first.begin(), first.end(), all.begin()));
  }

  TEST_CASE("dedupe_up_to_iso", "[enumerate]") {
    auto const p4 = fixtures::P4();
    REQUIRE(dedupe_up_to_iso({p4}) == std::vector<LeftQuasigroup>{canonical_form(p4)});
    REQUIRE(dedupe_up_to_iso({}).empty());
    // regression values fixed by running the dedup
    REQUIRE(dedupe_up_to_iso(enumerate_tables({2, TableClass::all})).size() == 3);
    REQUIRE(dedupe_up_to_iso(enumerate_tables({3, TableClass::all})).size() == 44);
    REQUIRE(enumerate_tables({3, TableClass::rack, true}).size() == 6);
    for (std::size_t n = 1; n <= 3; ++n) {
      auto const all = enumerate_tables({n, TableClass::all});
      REQUIRE(dedupe_up_to_iso(all) == dedupe_pairwise(all));
      for (auto const& rep : dedupe_up_to_iso(all)) {
        for (auto const& q : all) {
          if (is_isomorphic(q, rep)) {
            REQUIRE(!(q < rep));
          }
        }
      }
    }
    REQUIRE_THROWS_AS(dedupe_up_to_iso({fixtures::R3(), fixtures::Z2()}), Error);
  }

  TEST_CASE("caps", "[enumerate]") {
    REQUIRE_THROWS_AS(check_spec({5, TableClass::all}), Error);
    REQUIRE_THROWS_AS(check_spec({7, TableClass::rack}), Error);
    REQUIRE_THROWS_AS(check_spec({0, TableClass::rack}), Error);
    REQUIRE_THROWS_AS(check_spec({3, TableClass::rack, false, 0}), Error);
    REQUIRE_NOTHROW(check_spec({6, TableClass::quandle}));
    REQUIRE_THROWS_AS(enumerate_tables({5, TableClass::all}), Error);
    REQUIRE(table_class_from_string("2-divisible-semimedial")
            == TableClass::two_divisible_semimedial);
    REQUIRE_THROWS_AS(table_class_from_string("loop"), Error);
  }

}  // namespace lqg
