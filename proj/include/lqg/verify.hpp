#pragma once

// Exhaustive property suites over small left quasigroups. Every check runs
// on one representative per isomorphism class (all checked properties are
// invariant under relabelling).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

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

namespace lqg {

  struct CriterionResult {
    int                      id = 0;
    std::string              name;
    std::size_t              instances = 0;
    std::size_t              checks    = 0;
    std::vector<std::string> failures;
    std::string              note;

    bool pass() const noexcept {
      return failures.empty();
    }

    void fail(std::string msg) {
      if (failures.size() < 20) {
        failures.push_back(std::move(msg));
      } else if (failures.size() == 20) {
        failures.push_back("...");
      }
    }

    void expect(bool cond, std::string const& msg) {
      ++checks;
      if (!cond) {
        fail(msg);
      }
    }
  };

  //! Isomorphism-class representatives cached per (order, class).
  class Corpus {
   public:
    std::vector<LeftQuasigroup> const& reps(std::size_t n, TableClass c) {
      auto key = std::make_pair(n, c);
      auto it  = _reps.find(key);
      if (it == _reps.end()) {
        it = _reps.emplace(key, enumerate_tables({n, c, true})).first;
      }
      return it->second;
    }

    //! Representatives of every order in [1, max_n].
    std::vector<LeftQuasigroup> upto(std::size_t max_n, TableClass c) {
      std::vector<LeftQuasigroup> out;
      for (std::size_t n = 1; n <= max_n; ++n) {
        auto const& r = reps(n, c);
        out.insert(out.end(), r.begin(), r.end());
      }
      return out;
    }

   private:
    std::map<std::pair<std::size_t, TableClass>, std::vector<LeftQuasigroup>> _reps;
  };

  namespace detail {
    //! Runs body on q, turning any library error into a failure entry.
    template <typename F>
    void guarded(CriterionResult& r, LeftQuasigroup const& q, F&& body) {
      ++r.instances;
      try {
        body();
      } catch (Error const& e) {
        r.fail(q.to_string() + ": " + e.what());
      }
    }

    inline std::size_t bound(std::size_t def, std::optional<std::size_t> max_n) {
      return max_n ? std::min(def, *max_n) : def;
    }

    inline std::string len(std::optional<std::size_t> x) {
      return x ? std::to_string(*x) : "none";
    }
  }  // namespace detail

  using MaxN = std::optional<std::size_t>;

  // 1. direct compatibility iff blocks-are-blocks and Dis_alpha <= Dis^alpha.
  inline CriterionResult check_congruence_criterion(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{1, "congruence criterion", 0, 0, {}, {}};
    std::size_t const top = detail::bound(4, max_n);
    for (std::size_t n = 1; n <= top; ++n) {
      auto const parts = all_partitions(n);
      for (auto const& q : corpus.reps(n, TableClass::all)) {
        detail::guarded(r, q, [&] {
          auto const g = lmlt_and_dis(q);
          for (auto const& alpha : parts) {
            r.expect(is_compatible(q, alpha) == is_congruence_by_groups(q, g, alpha),
                     q.to_string() + " " + alpha.to_string(true));
          }
        });
      }
    }
    r.note = "all partitions of every table of order <= " + std::to_string(top);
    return r;
  }

  namespace detail {
    inline void galois_part(CriterionResult&                r,
                            LeftQuasigroup const&           q,
                            std::vector<std::string> const& props) {
      guarded(r, q, [&] {
        auto rep = galois_verify(q);
        r.checks += rep.checks;
        for (auto const& f : rep.failures) {
          for (auto const& p : props) {
            if (f.rfind(p + ":", 0) == 0) {
              r.fail(f);
            }
          }
        }
      });
    }
  }  // namespace detail

  // 2. N <= Dis^alpha iff O_N <= alpha for every admissible N, plus the
  // LMlt^alpha form and monotonicity. Dis^alpha lies inside Dis(Q), so the
  // unrestricted equivalence fails whenever some admissible N is not
  // contained in Dis(Q); those counterexamples are reported, and the
  // restricted and LMlt^alpha forms are checked separately.
  inline CriterionResult check_galois_orbits(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult   r{2, "Galois connection (orbits)", 0, 0, {}, {}};
    std::size_t const top      = detail::bound(4, max_n);
    std::size_t       outside  = 0;
    std::size_t       affected = 0;
    for (auto const& q : corpus.upto(top, TableClass::all)) {
      detail::guarded(r, q, [&] {
        GaloisData const d   = galois_data(q);
        bool             hit = false;
        for (std::size_t i = 0; i < d.con.congruences.size(); ++i) {
          auto const& alpha = d.con.congruences[i];
          for (std::size_t k = 0; k < d.norm.size(); ++k) {
            bool const ok = d.norm[k].is_subgroup_of(d.relative[i].dis_upper)
                            == d.orbits[k].leq(alpha);
            if (!ok && !d.norm[k].is_subgroup_of(d.groups.dis)) {
              ++outside;
              hit = true;
            }
            r.expect(ok,
                     "galois-orbits-all: " + q.to_string() + " " + alpha.to_string(true)
                         + " |N|=" + std::to_string(d.norm[k].order()));
          }
        }
        affected += hit;
        auto rep = galois_verify(q, d);
        r.checks += rep.checks;
        for (auto const& f : rep.failures) {
          for (std::string p : {"galois-orbits", "galois-orbits-lmlt", "faithful-quotient",
                                "monotone-dis", "monotone-orbits"}) {
            if (f.rfind(p + ":", 0) == 0) {
              r.fail(f);
            }
          }
        }
      });
    }
    r.note = "unrestricted form fails for " + std::to_string(outside) + " (alpha, N) pairs with"
             " N not inside Dis(Q), on " + std::to_string(affected) + " of "
             + std::to_string(r.instances) + " classes; the form restricted to N <= Dis(Q) and"
             " the LMlt^alpha form are checked as well";
    return r;
  }

  // 3. c_N congruence and Dis_alpha <= N iff alpha <= c_N on semimedial Q.
  inline CriterionResult check_galois_semimedial(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{3, "Galois connection (semimedial)", 0, 0, {}, {}};
    std::size_t const top = detail::bound(5, max_n);
    for (auto const& q : corpus.upto(top, TableClass::semimedial)) {
      detail::galois_part(r, q, {"galois-semimedial", "c_N-congruence"});
    }
    r.note = "every semimedial class of order <= " + std::to_string(top);
    return r;
  }

  // 4. Cayley property of semimedial Q.
  inline CriterionResult check_cayley_property(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{4, "Cayley property", 0, 0, {}, {}};
    std::size_t const top         = detail::bound(5, max_n);
    std::size_t       non_central = 0;
    for (auto const& q : corpus.upto(top, TableClass::semimedial)) {
      detail::guarded(r, q, [&] {
        Partition const lambda = cayley_kernel_relation(q);
        auto const      g      = lmlt_and_dis(q);
        bool const      cong   = is_congruence(q, g, lambda);
        r.expect(cong, q.to_string() + " lambda not a congruence");
        if (cong) {
          bool const central = lmlt_upper(q, g, lambda).is_subgroup_of(center(g.lmlt));
          non_central += !central;
          r.expect(central, q.to_string() + " LMlt^lambda not central");
        }
      });
    }
    r.note = "lambda is a congruence on every class; LMlt^lambda is non-central on "
             + std::to_string(non_central) + " of " + std::to_string(r.instances);
    return r;
  }

  // 5. commutator_lt = commutator_generic; abelian/central agree.
  inline CriterionResult check_commutator_agreement(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{5, "commutator oracle agreement", 0, 0, {}, {}};
    std::size_t const top = detail::bound(4, max_n);
    std::size_t       pairs = 0;
    for (auto const& q : corpus.upto(top, TableClass::semimedial)) {
      detail::guarded(r, q, [&] {
        Commutators c(q);
        for (auto const& a : c.lattice().congruences) {
          for (auto const& b : c.lattice().congruences) {
            ++pairs;
            r.expect(c.lt(a, b) == c.generic(a, b),
                     q.to_string() + " [" + a.to_string(true) + "," + b.to_string(true) + "]");
          }
          auto cls = c.classify(a);
          r.expect(cls.group_abelian == cls.is_abelian && cls.group_central == cls.is_central,
                   q.to_string() + " classification " + a.to_string(true));
        }
      });
    }
    r.note = std::to_string(pairs) + " congruence pairs";
    return r;
  }

  // 6. The 4-element table where c_{Z(Dis)} meet sigma_Dis is not a congruence.
  inline CriterionResult check_counterexample(Corpus&, MaxN max_n = {}) {
    CriterionResult r{6, "non-congruence counterexample", 0, 0, {}, {}};
    LeftQuasigroup const q = fixtures::P4();
    if (max_n && *max_n < q.order()) {
      r.note = "skipped: the table has order 4";
      return r;
    }
    detail::guarded(r, q, [&] {
      auto const      g     = lmlt_and_dis(q);
      Partition const alpha = c_relation_unchecked(q, center(g.dis))
                                  .meet(stabilizer_partition(g.dis));
      r.expect(alpha.related(0, 1), "1 and 2 are not related");
      r.expect(q.mul(0, 2) == 2 && q.mul(1, 2) == 3, "1*3, 2*3 differ from 3, 4");
      r.expect(!alpha.related(q.mul(0, 2), q.mul(1, 2)), "1*3 and 2*3 are related");
      r.expect(!is_congruence(q, g, alpha), "relation is a congruence");
      Partition const zeta = center_congruence(q);
      r.expect(zeta.leq(alpha) && zeta != alpha, "zeta is not strictly below the relation");
      r.note = "relation " + alpha.to_string(true) + ", center " + zeta.to_string(true);
    });
    return r;
  }

  // 7. Length transfer between Q and Dis(Q) on semimedial Q.
  inline CriterionResult check_length_transfer(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{7, "solvability/nilpotence transfer", 0, 0, {}, {}};
    std::size_t const top = detail::bound(4, max_n);
    for (auto const& q : corpus.upto(top, TableClass::semimedial)) {
      detail::guarded(r, q, [&] {
        SeriesReport const s   = series_and_class(q);
        GroupSeries const  gs  = group_series(lmlt_and_dis(q).dis);
        std::string const  tag = q.to_string() + " Q(nil " + detail::len(s.nilpotent_length)
                                + ", solv " + detail::len(s.solvable_length) + ") Dis(nil "
                                + detail::len(gs.nilpotent_length) + ", solv "
                                + detail::len(gs.solvable_length) + ")";
        if (gs.nilpotent_length) {
          r.expect(s.nilpotent_length && *s.nilpotent_length <= *gs.nilpotent_length + 1, tag);
        }
        if (gs.solvable_length) {
          r.expect(s.solvable_length && *s.solvable_length <= *gs.solvable_length + 1, tag);
        }
        if (s.nilpotent_length && *s.nilpotent_length >= 1) {
          r.expect(gs.nilpotent_length && *gs.nilpotent_length <= 2 * *s.nilpotent_length - 1,
                   tag);
        }
        if (s.solvable_length && *s.solvable_length >= 1) {
          r.expect(gs.solvable_length && *gs.solvable_length <= 2 * *s.solvable_length - 1, tag);
        }
      });
    }
    return r;
  }

  // 8. Medial characterizations.
  inline CriterionResult check_medial(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{8, "medial properties", 0, 0, {}, {}};
    std::size_t const top   = detail::bound(4, max_n);
    std::size_t       count = 0;
    for (auto const& q : corpus.upto(top, TableClass::all)) {
      detail::guarded(r, q, [&] {
        bool const medial = is_medial(q);
        bool const semi   = is_semimedial(q);
        r.expect(medial == (semi && lmlt_and_dis(q).dis.is_abelian()),
                 q.to_string() + " medial iff semimedial with abelian Dis");
        if (!medial) {
          return;
        }
        ++count;
        auto const s = series_and_class(q);
        r.expect(s.nilpotent_length && *s.nilpotent_length <= 2,
                 q.to_string() + " nilpotent length " + detail::len(s.nilpotent_length));
        if (identities::faithful(q)) {
          r.expect(identities::latin(q), q.to_string() + " faithful but not latin");
        }
      });
    }
    r.note = std::to_string(count) + " medial classes";
    return r;
  }

  // 9. The 2-divisible semimedial / quandle-with-automorphism correspondence.
  inline CriterionResult check_functor(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{9, "quandle correspondence", 0, 0, {}, {}};
    std::size_t const top = detail::bound(4, max_n);
    for (auto const& q : corpus.upto(top, TableClass::two_divisible_semimedial)) {
      detail::guarded(r, q, [&] {
        QuandleWithAutomorphism const p = to_quandle(q);
        LeftQuasigroup const          back = from_quandle(p);
        r.expect(back == q, q.to_string() + " round trip through the quandle");
        QuandleWithAutomorphism const again = to_quandle(from_quandle(p));
        r.expect(again.quandle == p.quandle && again.f == p.f,
                 q.to_string() + " round trip through the left quasigroup");
        auto const gq = lmlt_and_dis(q), gp = lmlt_and_dis(p.quandle);
        r.expect(gq.dis == gp.dis, q.to_string() + " Dis not preserved");
        auto const sq = series_and_class(q), sp = series_and_class(p.quandle);
        r.expect(sq.nilpotent_length == sp.nilpotent_length,
                 q.to_string() + " nilpotent lengths " + detail::len(sq.nilpotent_length)
                     + " vs " + detail::len(sp.nilpotent_length));
        bool const central = PermGroup::generate(q.order(), {p.f}).commutes_with(gp.lmlt);
        r.expect(is_rack(q) == central, q.to_string() + " rack iff s centralizes LMlt");
        // Morphisms: h commutes with f and is a quandle endomorphism iff h is
        // an endomorphism of the built table (checked over all bijections).
        std::vector<int> img(q.order());
        std::iota(img.begin(), img.end(), 0);
        do {
          Perm const h    = Perm::from_images(img);
          bool const left = h * p.f == p.f * h && is_automorphism(p.quandle, h);
          r.expect(left == is_automorphism(q, h), q.to_string() + " morphism " + h.to_string(true));
        } while (std::next_permutation(img.begin(), img.end()));
      });
    }
    return r;
  }

  // 10. 2-divisible semimedial quasigroups are solvable.
  inline CriterionResult check_solvable_quasigroups(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{10, "solvable semimedial quasigroups", 0, 0, {}, {}};
    std::size_t const top   = detail::bound(5, max_n);
    std::size_t       count = 0;
    for (auto const& q : corpus.upto(top, TableClass::two_divisible_semimedial)) {
      if (!identities::latin(q)) {
        continue;
      }
      ++count;
      detail::guarded(r, q, [&] {
        r.expect(series_and_class(q).is_solvable, q.to_string() + " not solvable");
      });
    }
    r.note = std::to_string(count) + " latin classes";
    return r;
  }

  // 11. Connected medial racks: construction vs brute force.
  inline CriterionResult check_classification(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{11, "connected medial rack classification", 0, 0, {}, {}};
    std::size_t const exhaustive = detail::bound(4, max_n);
    std::size_t const top        = detail::bound(kMaxClassifyOrder, max_n);
    std::string       counts;
    for (std::size_t n = 1; n <= top; ++n) {
      try {
        auto const built = classify_connected_medial_racks(n);
        counts += (n > 1 ? "," : "") + std::to_string(built.size());
        for (auto const& q : built) {
          ++r.instances;
          r.expect(is_rack(q) && is_medial(q) && connectivity(q, true).is_connected,
                   q.to_string() + " not a connected medial rack");
        }
        if (n <= exhaustive) {
          std::set<LeftQuasigroup> brute, constructed;
          for (auto const& q : corpus.reps(n, TableClass::rack)) {
            if (is_medial(q) && connectivity(q, true).is_connected) {
              brute.insert(q);
            }
          }
          for (auto const& q : built) {
            constructed.insert(canonical_form(q));
          }
          r.expect(brute == constructed,
                   "order " + std::to_string(n) + ": " + std::to_string(constructed.size())
                       + " constructed vs " + std::to_string(brute.size()) + " enumerated");
        }
      } catch (Error const& e) {
        r.fail("order " + std::to_string(n) + ": " + e.what());
      }
    }
    r.note = "classes per order 1.." + std::to_string(top) + ": " + counts;
    return r;
  }

  // 12. Multipotent semimedial left quasigroups.
  inline CriterionResult check_multipotent(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{12, "multipotent results", 0, 0, {}, {}};
    std::size_t const top     = detail::bound(4, max_n);
    std::size_t       count   = 0;
    std::size_t       literal = 0;
    for (auto const& q : corpus.upto(top, TableClass::semimedial)) {
      if (!squaring_profile(q).multipotency_class) {
        continue;
      }
      ++count;
      detail::guarded(r, q, [&] {
        r.expect(identities::latin(q), q.to_string() + " right multiplication not injective");
        r.expect(identities::faithful(q), q.to_string() + " not faithful");
        r.expect(lmlt_and_dis(q).dis.is_transitive(), q.to_string() + " Dis not transitive");
        auto const m = maltsev_check(q);
        r.expect(m.has_value(), q.to_string() + " Mal'tsev term missing");
        literal += m && m->literal_formula_holds;
      });
    }
    r.note = std::to_string(count) + " multipotent classes; the product with one factor fewer "
             "is a Mal'tsev term on " + std::to_string(literal);
    return r;
  }

  // 13. Spelling property.
  inline CriterionResult check_spelling(Corpus& corpus, MaxN max_n = {}) {
    CriterionResult r{13, "spelling property", 0, 0, {}, {}};
    std::size_t const top   = detail::bound(4, max_n);
    TwoLetterWord const conj{"xyX"}, conj_inv{"Xyx"};
    std::size_t found = 0, searched = 0;
    for (auto const& q : corpus.upto(top, TableClass::rack)) {
      detail::guarded(r, q, [&] {
        auto const w = spelling_search(q, 3);
        r.expect(w.has_value(), q.to_string() + " no witness within length 3");
        r.expect(satisfies_spelling(q, conj, true) && satisfies_spelling(q, conj_inv, false),
                 q.to_string() + " x y x^-1 does not spell");
      });
    }
    // Any witness found elsewhere carries the Sg(a) and c_N assertions.
    std::set<LeftQuasigroup> scope;
    std::size_t const small = detail::bound(3, max_n);
    for (auto const& q : corpus.upto(small, TableClass::all)) {
      scope.insert(q);
    }
    for (auto const& q : corpus.upto(top, TableClass::semimedial)) {
      scope.insert(q);
    }
    for (auto const& q : scope) {
      ++searched;
      detail::guarded(r, q, [&] { found += spelling_search(q).has_value(); });
    }
    r.note = "witnesses for " + std::to_string(found) + " of " + std::to_string(searched)
             + " further classes (orders <= " + std::to_string(small) + " and semimedial <= "
             + std::to_string(top) + ")";
    return r;
  }

  // 14. Enumeration counts and strategy agreement.
  inline CriterionResult check_enumeration(Corpus&, MaxN max_n = {}) {
    CriterionResult r{14, "enumeration sanity", 0, 0, {}, {}};
    std::size_t const top = detail::bound(3, max_n);
    for (std::size_t n = 1; n <= top; ++n) {
      std::size_t expect = 1, fact = 1;
      for (std::size_t k = 2; k <= n; ++k) {
        fact *= k;
      }
      for (std::size_t k = 0; k < n; ++k) {
        expect *= fact;
      }
      std::size_t const a = for_each_table({n, TableClass::all, false}, [](auto const&) { return true; });
      std::size_t const b = for_each_table_by_cells({n, TableClass::all, false},
                                                    [](auto const&) { return true; });
      r.expect(a == expect && b == expect,
               "order " + std::to_string(n) + ": " + std::to_string(a) + "/" + std::to_string(b)
                   + " tables, expected " + std::to_string(expect));
    }
    std::string counts;
    for (auto cls : {TableClass::quandle, TableClass::rack}) {
      for (std::size_t n = 1; n <= detail::bound(5, max_n); ++n) {
        std::vector<LeftQuasigroup> rows, cells;
        for_each_table({n, cls, false}, [&](LeftQuasigroup const& q) {
          rows.push_back(q);
          return true;
        });
        for_each_table_by_cells({n, cls, false}, [&](LeftQuasigroup const& q) {
          cells.push_back(q);
          return true;
        });
        auto const by_canonical = dedupe_up_to_iso(rows);
        auto const by_pairwise  = dedupe_pairwise(cells);
        ++r.instances;
        r.expect(by_canonical == by_pairwise && rows.size() == cells.size(),
                 std::string(to_string(cls)) + " order " + std::to_string(n) + ": "
                     + std::to_string(by_canonical.size()) + " vs "
                     + std::to_string(by_pairwise.size()) + " classes");
        counts += std::string(counts.empty() ? "" : " ") + std::string(to_string(cls)) + "("
                  + std::to_string(n) + ")=" + std::to_string(by_canonical.size());
      }
    }
    r.note = counts;
    return r;
  }

  using CriterionFn = CriterionResult (*)(Corpus&, MaxN);

  inline std::vector<CriterionFn> const& all_criteria() {
    static std::vector<CriterionFn> const fns{check_congruence_criterion,
                                              check_galois_orbits,
                                              check_galois_semimedial,
                                              check_cayley_property,
                                              check_commutator_agreement,
                                              check_counterexample,
                                              check_length_transfer,
                                              check_medial,
                                              check_functor,
                                              check_solvable_quasigroups,
                                              check_classification,
                                              check_multipotent,
                                              check_spelling,
                                              check_enumeration};
    return fns;
  }

  //! Criterion ids per suite name; throws InvalidArgument for unknown names.
  inline std::vector<int> suite_criteria(std::string const& suite) {
    static std::map<std::string, std::vector<int>> const suites{
        {"galois", {1, 2, 3}},
        {"commutator", {5, 6, 7}},
        {"semimedial", {4, 10, 12}},
        {"medial", {8}},
        {"functor", {9}},
        {"classification", {11, 14}},
        {"spelling", {13}},
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14}}};
    auto it = suites.find(suite);
    detail::check(it != suites.end(), ErrorKind::InvalidArgument, "unknown suite " + suite);
    return it->second;
  }

  inline std::vector<CriterionResult> run_suite(std::string const& suite, MaxN max_n = {}) {
    Corpus                       corpus;
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) {
      out.push_back(all_criteria()[static_cast<std::size_t>(id - 1)](corpus, max_n));
    }
    return out;
  }

}  // namespace lqg
