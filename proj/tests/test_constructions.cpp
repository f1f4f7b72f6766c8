#include <vector>

#include "catch_amalgamated.hpp"

#include "lqg/constructions.hpp"
#include "lqg/enumerate.hpp"
#include "lqg/iso.hpp"

namespace lqg {

  using namespace fixtures;

  namespace {
    AbelianGroup cyclic(int n) {
      return AbelianGroup({n});
    }

    Perm shift(std::size_t n, std::size_t k = 1) {
      std::vector<int> img(n);
      for (std::size_t x = 0; x < n; ++x) {
        img[x] = static_cast<int>((x + k) % n);
      }
      return Perm::from_images(img);
    }
  }  // namespace

  TEST_CASE("abelian groups", "[constructions]") {
    REQUIRE(abelian_groups_of_order(1).size() == 1);
    REQUIRE(abelian_groups_of_order(4).size() == 2);
    REQUIRE(abelian_groups_of_order(8).size() == 3);
    REQUIRE(abelian_groups_of_order(12).size() == 2);
    auto const z3 = cyclic(3);
    REQUIRE(endomorphisms(z3).size() == 3);
    REQUIRE(automorphisms(z3).size() == 2);
    auto const klein = AbelianGroup({2, 2});
    REQUIRE(automorphisms(klein).size() == 6);
    REQUIRE(endomorphisms(klein).size() == 16);
    for (auto const& f : endomorphisms(klein)) {
      REQUIRE(is_additive(klein, f));
    }
    REQUIRE(!is_additive(z3, {1, 0, 2}));
  }

  TEST_CASE("affine", "[constructions]") {
    auto const z3 = cyclic(3);
    REQUIRE(affine({z3, scalar_map(z3, 0), identity_map(3), 1}) == C3());
    REQUIRE(affine({z3, scalar_map(z3, 2), scalar_map(z3, -1), 0}) == R3());
    auto const z2 = cyclic(2);
    REQUIRE(affine({z2, identity_map(2), identity_map(2), 0}) == Z2());
    REQUIRE(cyclic_permutation(3) == C3());
    REQUIRE(cyclic_permutation(1) == trivial());
    REQUIRE_THROWS_AS(affine({z3, {1, 0, 2}, identity_map(3), 0}), Error);
    REQUIRE_THROWS_AS(affine({z3, identity_map(3), scalar_map(z3, 0), 0}), Error);
    SECTION("affine tables over groups of order <= 4 are medial iff fg = gf") {
      std::size_t non_medial = 0;
      for (std::size_t d = 1; d <= 4; ++d) {
        for (auto const& a : abelian_groups_of_order(d)) {
          for (auto const& f : endomorphisms(a)) {
            for (auto const& g : automorphisms(a)) {
              bool commute = true;
              for (std::size_t x = 0; x < d; ++x) {
                commute = commute && f[g[x]] == g[f[x]];
              }
              auto const q = affine({a, f, g, d - 1});
              REQUIRE(is_semimedial(q) == commute);
              REQUIRE(is_medial(q) == commute);
              non_medial += !commute;
            }
          }
        }
      }
      // only the Klein group has non-commuting pairs
      REQUIRE(non_medial > 0);
    }
  }

  TEST_CASE("extension", "[constructions]") {
    SECTION("a constant identity cocycle gives a product with a projection table") {
      for (auto const& q : {R3(), C3(), P4()}) {
        auto const e = extension(q, Cocycle::constant(q.order(), Perm(2)));
        REQUIRE(e == direct_product(q, Proj2()));
      }
    }
    SECTION("a constant m-cycle gives a product with (Z_m, +1)") {
      for (std::size_t m = 1; m <= 4; ++m) {
        auto const e = extension(R3(), Cocycle::constant(3, shift(m)));
        REQUIRE(e == direct_product(R3(), cyclic_permutation(m)));
      }
    }
    SECTION("medial cocycles give medial extensions of medial tables") {
      for (auto const& q : {R3(), C3(), Z2(), Proj2()}) {
        auto const cs = mc_cocycles(q, 2, 50);
        REQUIRE(!cs.empty());
        for (auto const& t : cs) {
          REQUIRE(satisfies_mc(q, t));
          REQUIRE(is_medial(extension(q, t)));
        }
      }
      REQUIRE_THROWS_AS(mc_cocycles(P4(), 2, 1), Error);
    }
    REQUIRE_THROWS_AS(extension(R3(), Cocycle::constant(2, Perm(2))), Error);
  }

  TEST_CASE("cohomologous cocycles", "[constructions]") {
    auto const theta = mc_cocycles(R3(), 3, 20);
    REQUIRE(theta.size() == 20);
    for (auto const& t : theta) {
      auto const same = cohomologous(R3(), t, std::vector<Perm>(3, Perm(3)));
      REQUIRE(same.theta == t.theta);
    }
    SECTION("normalizing over a quasigroup base makes column u constant") {
      for (auto const& q : {R3(), Z2()}) {
        for (auto const& t : mc_cocycles(q, 2, 100)) {
          for (std::size_t u = 0; u < q.order(); ++u) {
            auto const eps = normalize(q, t, u);
            for (std::size_t a = 0; a < q.order(); ++a) {
              REQUIRE(eps.at(a, u) == eps.at(0, u));
            }
          }
        }
      }
      REQUIRE_THROWS_AS(normalize(C3(), Cocycle::constant(3, Perm(2)), 0), Error);
    }
    SECTION("over a medial latin base the normalized cocycle is constant") {
      for (auto const& t : mc_cocycles(R3(), 2, 100)) {
        auto const eps = normalize(R3(), t, 0);
        for (auto const& p : eps.theta) {
          REQUIRE(p == eps.theta.front());
        }
        auto const e = extension(R3(), t);
        REQUIRE(is_isomorphic(e, direct_product(R3(), extension(trivial(), Cocycle::constant(
                                                              1, eps.theta.front())))));
      }
    }
    REQUIRE(right_divide(R3(), 1, 0) == 2);
    REQUIRE_THROWS_AS(right_divide(C3(), 1, 0), Error);
  }

  TEST_CASE("from_quandle and to_quandle", "[constructions]") {
    SECTION("f = id gives the quandle back") {
      for (auto const& q : {R3(), Proj2(), trivial()}) {
        REQUIRE(from_quandle({q, Perm(q.order())}) == q);
      }
    }
    SECTION("(R3, x + 1)") {
      auto const r = from_quandle({R3(), shift(3)});
      auto const p = identity_profile(r);
      REQUIRE(p.is_semimedial);
      REQUIRE(p.is_2_divisible);
      REQUIRE(p.is_connected);
      REQUIRE(!p.is_idempotent);
      REQUIRE(!p.is_rack);
    }
    SECTION("C3 and R3") {
      auto const c = to_quandle(C3());
      REQUIRE(c.quandle == from_table({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}));
      REQUIRE(c.f == shift(3));
      auto const r = to_quandle(R3());
      REQUIRE(r.quandle == R3());
      REQUIRE(r.f.is_identity());
    }
    SECTION("round trips and the rack criterion") {
      for (std::size_t n = 1; n <= 4; ++n) {
        for (auto const& q : enumerate_tables({n, TableClass::two_divisible_semimedial, true})) {
          auto const p = to_quandle(q);
          REQUIRE(from_quandle(p) == q);
          auto const back = to_quandle(from_quandle(p));
          REQUIRE(back.quandle == p.quandle);
          REQUIRE(back.f == p.f);
          auto const g = lmlt(p.quandle);
          bool const commutes
              = PermGroup::generate(n, {p.f}).commutes_with(g);
          REQUIRE(is_rack(q) == commutes);
        }
      }
    }
    REQUIRE_THROWS_AS(to_quandle(Z2()), Error);
    REQUIRE_THROWS_AS(from_quandle({C3(), Perm(3)}), Error);
    // swapping two elements of one fiber of R3 x Proj2 is not an automorphism
    auto const q6 = direct_product(R3(), Proj2());
    REQUIRE_THROWS_AS(from_quandle({q6, Perm::from_cycles(6, {{0, 1}})}), Error);
  }

  TEST_CASE("classify_connected_medial_racks", "[constructions]") {
    auto const one = classify_connected_medial_racks(1);
    REQUIRE(one.size() == 1);
    REQUIRE(one.front() == trivial());
    auto const three = classify_connected_medial_racks(3);
    REQUIRE(three.size() == 2);
    bool has_r3 = false, has_c3 = false;
    for (auto const& r : three) {
      has_r3 = has_r3 || is_isomorphic(r, R3());
      has_c3 = has_c3 || is_isomorphic(r, C3());
    }
    REQUIRE(has_r3);
    REQUIRE(has_c3);
    SECTION("agrees with a brute-force search") {
      for (std::size_t n = 1; n <= 5; ++n) {
        std::size_t brute = 0;
        for (auto const& q : enumerate_tables({n, TableClass::rack, true})) {
          brute += is_medial(q) && connectivity(q, true).is_connected;
        }
        INFO("n = " << n);
        REQUIRE(classify_connected_medial_racks(n).size() == brute);
      }
    }
    REQUIRE_THROWS_AS(classify_connected_medial_racks(13), Error);
    REQUIRE_THROWS_AS(classify_connected_medial_racks(0), Error);
  }

  TEST_CASE("maltsev_check", "[constructions]") {
    REQUIRE(!maltsev_check(R3()));
    REQUIRE(!maltsev_check(C3()));
    auto const z2 = maltsev_check(Z2());
    REQUIRE(z2);
    REQUIRE(z2->multipotency_class == 1);
    REQUIRE(z2->factors == 1);
    auto const t = maltsev_check(trivial());
    REQUIRE(t);
    REQUIRE(t->multipotency_class == 0);
    SECTION("a 2-multipotent table") {
      bool found = false;
      for (std::size_t n = 1; n <= 5 && !found; ++n) {
        for (auto const& q : enumerate_tables({n, TableClass::semimedial, true})) {
          auto const r = maltsev_check(q);
          if (r && r->multipotency_class == 2) {
            found = true;
            for (std::size_t x = 0; x < n; ++x) {
              for (std::size_t y = 0; y < n; ++y) {
                REQUIRE(r->at(n, x, y, y) == x);
                REQUIRE(r->at(n, y, y, x) == x);
              }
            }
          }
        }
      }
      REQUIRE(found);
    }
  }

  TEST_CASE("spelling", "[constructions]") {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (auto const& q : enumerate_tables({n, TableClass::rack, true})) {
        REQUIRE(satisfies_spelling(q, {"xyX"}, true));
        REQUIRE(satisfies_spelling(q, {"Xyx"}, false));
        REQUIRE(spelling_search(q));
      }
    }
    auto const z2 = spelling_search(Z2());
    REQUIRE(z2);
    REQUIRE(satisfies_spelling(Z2(), z2->plus, true));
    REQUIRE(satisfies_spelling(Z2(), z2->minus, false));
    REQUIRE(satisfies_spelling(Z2(), {"xy"}, true));
    REQUIRE(satisfies_spelling(Z2(), {"Xy"}, false));
    auto const c3 = spelling_search(C3());
    REQUIRE(c3);
    REQUIRE(c3->plus.letters.size() == 1);
    REQUIRE(satisfies_spelling(C3(), {"y"}, true));
    REQUIRE(satisfies_spelling(C3(), {"x"}, true));
    REQUIRE(TwoLetterWord{"xYx"}.to_string() == "xy^-1x");
    REQUIRE(TwoLetterWord{""}.to_string() == "1");
    REQUIRE_THROWS_AS(spelling_search(R3(), 0), Error);
  }

}  // namespace lqg
