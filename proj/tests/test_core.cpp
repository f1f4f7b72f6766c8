#include <vector>

#include "catch_amalgamated.hpp"

#include "lqg/core.hpp"
#include "lqg/enumerate.hpp"
#include "lqg/iso.hpp"

namespace lqg {

  using namespace fixtures;

  TEST_CASE("from_table", "[core]") {
    REQUIRE_NOTHROW(P4());
    try {
      from_table({{0, 0}, {1, 1}});
      FAIL("accepted a repeated entry");
    } catch (Error const& e) {
      REQUIRE(e.kind() == ErrorKind::NotLeftQuasigroup);
      REQUIRE(e.detail() == "row 0");
    }
    auto const q = R3();
    REQUIRE(q.table() == q.ldiv_table());
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        REQUIRE(P4().mul(a, P4().ldiv(a, b)) == b);
        REQUIRE(P4().ldiv(a, P4().mul(a, b)) == b);
      }
    }
  }

  TEST_CASE("identity_profile", "[core]") {
    SECTION("R3") {
      auto p = identity_profile(R3());
      REQUIRE(p.is_quandle);
      REQUIRE(p.is_medial);
      REQUIRE(p.is_latin);
      REQUIRE(p.is_connected);
      REQUIRE(p.is_superconnected == true);
      REQUIRE(!p.reductivity_level);
    }
    SECTION("C3") {
      auto p = identity_profile(C3());
      REQUIRE(p.is_permutation);
      REQUIRE(p.is_rack);
      REQUIRE(p.is_medial);
      REQUIRE(!p.is_faithful);
    }
    SECTION("Z2") {
      auto p = identity_profile(Z2());
      REQUIRE(p.is_medial);
      REQUIRE(p.is_faithful);
      REQUIRE(!p.is_rack);
      REQUIRE(p.is_associative);
    }
    SECTION("Proj2") {
      auto p = identity_profile(Proj2());
      REQUIRE(p.is_projection);
      REQUIRE(p.is_permutation);
      REQUIRE(p.is_idempotent);
    }
  }

  TEST_CASE("identity invariants over all tables of order <= 4", "[core][exhaustive]") {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (auto const& q : enumerate_tables({n, TableClass::all, true})) {
        auto p = identity_profile(q);  // asserts both forms of the semimedial law agree
        if (p.is_medial) {
          REQUIRE(p.is_semimedial);
        }
        if (p.is_rack) {
          REQUIRE(p.is_semimedial);
          REQUIRE(p.is_2_divisible);
        }
        if (p.is_projection) {
          REQUIRE(p.is_permutation);
          REQUIRE(p.is_idempotent);
        }
        if (p.is_semimedial) {
          auto const s      = squaring_profile(q);
          auto const lambda = cayley_kernel_relation(q);
          REQUIRE(s.kernel.meet(lambda).is_discrete());
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
              REQUIRE(q.square(q.mul(a, b)) == q.mul(q.square(a), q.square(b)));
              if (a != b && q.square(a) == q.square(b)) {
                REQUIRE((q.left_inverse(a) * q.left(b)).fixed_points() == 0);
              }
            }
          }
        }
      }
    }
  }

  TEST_CASE("multipotent semimedial tables", "[core][exhaustive]") {
    for (std::size_t n = 1; n <= 5; ++n) {
      for (auto const& q : enumerate_tables({n, TableClass::semimedial, true})) {
        auto const s = squaring_profile(q);
        if (!s.multipotency_class) {
          continue;
        }
        REQUIRE(identities::latin(q));
        REQUIRE(identities::faithful(q));
        REQUIRE(s.idempotents.size() == 1);
        int const e = s.idempotents.front();
        for (auto const& sub : subalgebras(q)) {
          REQUIRE(std::find(sub.begin(), sub.end(), e) != sub.end());
        }
      }
    }
  }

  TEST_CASE("lmlt_and_dis", "[core]") {
    auto g = lmlt_and_dis(Proj2());
    REQUIRE(g.lmlt.is_trivial());
    REQUIRE(g.dis.is_trivial());
    g = lmlt_and_dis(C3());
    REQUIRE(g.lmlt.order() == 3);
    REQUIRE(g.dis.is_trivial());
    g = lmlt_and_dis(R3());
    REQUIRE(g.lmlt.order() == 6);
    REQUIRE(g.dis.order() == 3);
    g = lmlt_and_dis(P4());
    REQUIRE(g.lmlt.order() == 8);
    REQUIRE(g.dis.order() == 4);
  }

  TEST_CASE("squaring_profile", "[core]") {
    auto s = squaring_profile(R3());
    REQUIRE(s.map == std::vector<int>{0, 1, 2});
    REQUIRE(s.idempotents.size() == 3);
    s = squaring_profile(C3());
    REQUIRE(s.map == std::vector<int>{1, 2, 0});
    REQUIRE(s.bijective);
    REQUIRE(s.idempotents.empty());
    s = squaring_profile(Z2());
    REQUIRE(s.map == std::vector<int>{0, 0});
    REQUIRE(s.kernel.is_full());
    REQUIRE(s.multipotency_class == 1);
  }

  TEST_CASE("subalgebra_generate", "[core]") {
    REQUIRE(subalgebra_generate(P4(), {0, 1, 2, 3}) == std::vector<int>{0, 1, 2, 3});
    REQUIRE(subalgebra_generate(R3(), {0}) == std::vector<int>{0});
    REQUIRE(subalgebra_generate(C3(), {0}) == std::vector<int>{0, 1, 2});
  }

  TEST_CASE("cayley_kernel", "[core]") {
    REQUIRE(cayley_kernel(P4()) == Partition::from_blocks(4, {{0, 2}, {1}, {3}}));
    REQUIRE(cayley_kernel(C3()).is_full());
    REQUIRE(cayley_kernel(Z2()).is_discrete());
  }

  TEST_CASE("the kernel of the action on Q/lambda need not be central", "[core]") {
    // Semimedial, lambda = {{1,2,3},{4},{5}} is a congruence, and the
    // 3-cycle (1 2 3) acts trivially on Q/lambda but does not commute with
    // L_4 = (1 2)(4 5).
    auto const q = from_table(
        {{0, 2, 1, 4, 3}, {0, 2, 1, 4, 3}, {0, 2, 1, 4, 3}, {1, 0, 2, 4, 3}, {2, 1, 0, 4, 3}});
    REQUIRE(is_semimedial(q));
    REQUIRE(is_compatible(q, cayley_kernel(q)));
    REQUIRE(!lmlt_kernel_is_central(q));
    for (auto const& r : {R3(), C3(), Z2(), Proj2()}) {
      REQUIRE(lmlt_kernel_is_central(r));
    }
  }

  TEST_CASE("connectivity", "[core]") {
    auto c = connectivity(R3());
    REQUIRE(c.is_connected);
    REQUIRE(c.is_superconnected == true);
    REQUIRE(!connectivity(Proj2()).is_connected);
    REQUIRE(connectivity(C3()).is_connected);
    REQUIRE_THROWS_AS(connectivity(direct_product(R3(), C3())), Error);
    REQUIRE(connectivity(direct_product(R3(), C3()), true).is_connected);
  }

  TEST_CASE("reductivity_level", "[core]") {
    REQUIRE(reductivity_level(Proj2()) == 1);
    REQUIRE(reductivity_level(C3()) == 1);
    REQUIRE(!reductivity_level(R3()));
    try {
      reductivity_level(P4());
      FAIL("P4 has no Cayley property");
    } catch (Error const& e) {
      REQUIRE(e.kind() == ErrorKind::CayleyPropertyFails);
    }
  }

  TEST_CASE("word_s_map", "[core]") {
    REQUIRE(word_s_map(R3(), {}).is_identity());
    Word const w{{0, 1}, {2, -1}, {1, 1}};
    REQUIRE(word_s_map(R3(), w) == evaluate_word(R3(), w));
    REQUIRE(word_s_map(C3(), w) == evaluate_word(C3(), w));
    for (int a = 0; a < 2; ++a) {
      REQUIRE(word_s_map(Z2(), {{a, 1}}) == Z2().left(0));
    }
    REQUIRE_THROWS_AS(word_s_map(P4(), w), Error);
  }

  TEST_CASE("iso_and_aut", "[core]") {
    auto r = iso_and_aut(R3(), R3());
    REQUIRE(r.isomorphism == std::vector<int>{0, 1, 2});
    REQUIRE(r.automorphisms->order() == 6);
    REQUIRE(!iso_and_aut(R3(), C3()).isomorphism);
    REQUIRE(automorphism_group(P4()).contains(Perm(4)));
    auto const phi = std::vector<int>{2, 0, 3, 1};
    REQUIRE(is_isomorphic(relabel(P4(), phi), P4()));
    REQUIRE(canonical_form(relabel(P4(), phi)) == canonical_form(P4()));
  }

  TEST_CASE("direct_product", "[core]") {
    auto const trivial = from_table({{0}});
    REQUIRE(is_isomorphic(direct_product(R3(), trivial), R3()));
    auto const rc = direct_product(R3(), C3());
    REQUIRE(rc.order() == 9);
    REQUIRE(is_rack(rc));
    REQUIRE(is_medial(rc));
    REQUIRE(connectivity(rc, true).is_connected);
    auto const pp = identity_profile(direct_product(Proj2(), Proj2()));
    REQUIRE(pp.is_projection);
  }

}  // namespace lqg
