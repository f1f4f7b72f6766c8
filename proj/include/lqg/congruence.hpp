#pragma once

// Congruences, relative displacement groups, orbit and c_N relations,
// admissible normal subgroups and the Galois connections between them.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "left_quasigroup.hpp"
#include "partition.hpp"
#include "perm.hpp"

namespace lqg {

  // ---------------------------------------------------------------------
  // Groups attached to an equivalence
  // ---------------------------------------------------------------------

  //! Dis_alpha: normal closure in LMlt(Q) of {L_a L_b^{-1} : a alpha b}.
  inline PermGroup dis_lower(LeftQuasigroup const&       q,
                             MultiplicationGroups const& g,
                             Partition const&            alpha) {
    std::vector<Perm> seed;
    for (auto const& block : alpha.blocks()) {
      Perm const inv = q.left_inverse(static_cast<std::size_t>(block[0]));
      for (std::size_t i = 1; i < block.size(); ++i) {
        Perm p = q.left(static_cast<std::size_t>(block[i])) * inv;
        if (!p.is_identity()) {
          seed.push_back(p);
        }
      }
    }
    return normal_closure(g.lmlt, seed);
  }

  //! Dis^alpha = {h in Dis(Q) : h(a) alpha a for every a}.
  inline PermGroup dis_upper(MultiplicationGroups const& g, Partition const& alpha) {
    return block_kernel(g.dis, alpha);
  }

  //! True iff alpha's blocks are blocks of imprimitivity of LMlt(Q).
  inline bool blocks_are_blocks(LeftQuasigroup const& q, Partition const& alpha) {
    for (std::size_t a = 0; a < q.order(); ++a) {
      for (std::size_t x = 0; x < q.order(); ++x) {
        for (std::size_t y = x + 1; y < q.order(); ++y) {
          if (alpha.related(x, y) && !alpha.related(q.mul(a, x), q.mul(a, y))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  //! Group-theoretic congruence criterion: blocks of alpha are blocks of
  //! LMlt(Q) and Dis_alpha <= Dis^alpha.
  inline bool is_congruence_by_groups(LeftQuasigroup const&       q,
                                      MultiplicationGroups const& g,
                                      Partition const&            alpha) {
    if (!blocks_are_blocks(q, alpha)) {
      return false;
    }
    PermGroup const d = dis_lower(q, g, alpha);
    for (auto const& h : d.elements()) {
      for (std::size_t a = 0; a < q.order(); ++a) {
        if (!alpha.related(h(a), a)) {
          return false;
        }
      }
    }
    return true;
  }

  //! Direct compatibility, asserted equal to the group-theoretic criterion.
  inline bool is_congruence(LeftQuasigroup const&       q,
                            MultiplicationGroups const& g,
                            Partition const&            alpha) {
    detail::check(alpha.size() == q.order(),
                  ErrorKind::SizeMismatch,
                  "partition size differs from order");
    bool const direct = is_compatible(q, alpha);
    detail::check(direct == is_congruence_by_groups(q, g, alpha),
                  ErrorKind::InternalAssertion,
                  "congruence criteria disagree on " + alpha.to_string(true)
                      + " for " + q.to_string());
    return direct;
  }

  inline bool is_congruence(LeftQuasigroup const& q, Partition const& alpha) {
    return is_congruence(q, lmlt_and_dis(q), alpha);
  }

  // ---------------------------------------------------------------------
  // Generated congruences and the lattice
  // ---------------------------------------------------------------------

  //! Smallest congruence containing the pairs (and the base partition).
  inline Partition generated_congruence(LeftQuasigroup const&                   q,
                                        std::vector<std::pair<int, int>> const& pairs,
                                        Partition const* base = nullptr) {
    std::size_t const n = q.order();
    detail::UnionFind uf(n);
    for (auto [a, b] : pairs) {
      uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    if (base != nullptr) {
      for (auto [a, b] : base->pairs()) {
        uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t const r = uf.find(x);
        if (r == x) {
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
          changed |= uf.unite(q.mul(c, x), q.mul(c, r));
          changed |= uf.unite(q.ldiv(c, x), q.ldiv(c, r));
          changed |= uf.unite(q.mul(x, c), q.mul(r, c));
          changed |= uf.unite(q.ldiv(x, c), q.ldiv(r, c));
        }
      }
    }
    return Partition::from_uf(uf);
  }

  inline constexpr std::size_t kMaxLatticeOrder = 8;

  struct CongruenceLattice {
    std::vector<Partition> congruences;  // finest first, then lexicographic
    bool                   closed = false;

    std::size_t size() const noexcept {
      return congruences.size();
    }

    bool contains(Partition const& p) const {
      return std::find(congruences.begin(), congruences.end(), p)
             != congruences.end();
    }
  };

  inline CongruenceLattice congruence_lattice(LeftQuasigroup const& q) {
    std::size_t const n = q.order();
    detail::check(n <= kMaxLatticeOrder,
                  ErrorKind::OrderTooLarge,
                  "congruence lattice limited to order "
                      + std::to_string(kMaxLatticeOrder));
    std::set<Partition> found{Partition::discrete(n)};
    std::vector<Partition> list{Partition::discrete(n)};
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        auto p = generated_congruence(
            q, {{static_cast<int>(a), static_cast<int>(b)}});
        if (found.insert(p).second) {
          list.push_back(p);
        }
      }
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        auto p = generated_congruence(q, {}, &list[i]);
        p      = generated_congruence(q, list[j].pairs(), &p);
        if (found.insert(p).second) {
          list.push_back(p);
        }
      }
    }
    CongruenceLattice lat;
    lat.congruences.assign(found.begin(), found.end());
    std::stable_sort(lat.congruences.begin(),
                     lat.congruences.end(),
                     [](Partition const& x, Partition const& y) {
                       if (x.number_of_blocks() != y.number_of_blocks()) {
                         return x.number_of_blocks() > y.number_of_blocks();
                       }
                       return x < y;
                     });
    lat.closed = true;
    for (auto const& x : lat.congruences) {
      detail::check(is_compatible(q, x),
                    ErrorKind::InternalAssertion,
                    "generated congruence is not compatible");
      for (auto const& y : lat.congruences) {
        lat.closed = lat.closed && found.count(x.meet(y)) && found.count(x.join(y));
      }
    }
    detail::check(lat.closed,
                  ErrorKind::InternalAssertion,
                  "congruence lattice is not meet/join closed");
    return lat;
  }

  //! Q / alpha, with block k as element k.
  inline LeftQuasigroup quotient(LeftQuasigroup const& q, Partition const& alpha) {
    detail::check(is_compatible(q, alpha),
                  ErrorKind::NotACongruence,
                  alpha.to_string(true));
    LeftQuasigroup r = detail::quotient_unchecked(q, alpha);
    for (std::size_t a = 0; a < q.order(); ++a) {
      for (std::size_t b = 0; b < q.order(); ++b) {
        auto pa = static_cast<std::size_t>(alpha.block_of(a));
        auto pb = static_cast<std::size_t>(alpha.block_of(b));
        detail::check(static_cast<std::size_t>(alpha.block_of(q.mul(a, b)))
                              == r.mul(pa, pb)
                          && static_cast<std::size_t>(alpha.block_of(q.ldiv(a, b)))
                                 == r.ldiv(pa, pb),
                      ErrorKind::InternalAssertion,
                      "natural map is not a homomorphism");
      }
    }
    return r;
  }

  //! The block-relabelled image of alpha under Q -> Q/delta, for alpha >= delta
  //! or arbitrary alpha (the image is the transitive closure of (alpha join
  //! delta) / delta).
  inline Partition image_partition(Partition const& alpha, Partition const& delta) {
    detail::UnionFind uf(delta.number_of_blocks());
    for (std::size_t a = 0; a < alpha.size(); ++a) {
      for (std::size_t b = a + 1; b < alpha.size(); ++b) {
        if (alpha.related(a, b)) {
          uf.unite(static_cast<std::size_t>(delta.block_of(a)),
                   static_cast<std::size_t>(delta.block_of(b)));
        }
      }
    }
    return Partition::from_uf(uf);
  }

  //! Lifts a partition of Q/delta back to Q.
  inline Partition lift_partition(Partition const& beta, Partition const& delta) {
    std::vector<int> labels(delta.size());
    for (std::size_t a = 0; a < delta.size(); ++a) {
      labels[a] = beta.block_of(static_cast<std::size_t>(delta.block_of(a)));
    }
    return Partition::from_labels(labels);
  }

  // ---------------------------------------------------------------------
  // Relative groups
  // ---------------------------------------------------------------------

  struct RelativeGroups {
    PermGroup                dis_lower;   // Dis_alpha
    PermGroup                dis_upper;   // Dis^alpha
    std::optional<PermGroup> lmlt_upper;  // LMlt^alpha, set when alpha is a congruence
  };

  inline RelativeGroups relative_groups(LeftQuasigroup const&       q,
                                        MultiplicationGroups const& g,
                                        Partition const&            alpha) {
    RelativeGroups r{dis_lower(q, g, alpha), dis_upper(g, alpha), std::nullopt};
    if (!is_compatible(q, alpha)) {
      return r;
    }
    r.lmlt_upper = block_kernel(g.lmlt, alpha);
    detail::check(r.dis_lower.is_subgroup_of(r.dis_upper)
                      && r.dis_upper.is_subgroup_of(g.dis),
                  ErrorKind::InternalAssertion,
                  "Dis_alpha <= Dis^alpha <= Dis(Q) fails");
    std::size_t in_dis = 0;
    for (auto const& h : r.lmlt_upper->elements()) {
      in_dis += g.dis.contains(h);
    }
    detail::check(in_dis == r.dis_upper.order(),
                  ErrorKind::InternalAssertion,
                  "LMlt^alpha meet Dis(Q) != Dis^alpha");
    if (is_semimedial(q)) {
      std::vector<Perm> gens;
      for (auto const& block : alpha.blocks()) {
        for (int a : block) {
          for (int b : block) {
            if (a != b) {
              gens.push_back(q.left_inverse(static_cast<std::size_t>(a))
                             * q.left(static_cast<std::size_t>(b)));
            }
          }
        }
      }
      PermGroup plain = PermGroup::generate(q.order(), gens);
      detail::check(plain == r.dis_lower,
                    ErrorKind::InternalAssertion,
                    "Dis_alpha != <L_a^{-1} L_b : a alpha b>");
    }
    return r;
  }

  inline RelativeGroups relative_groups(LeftQuasigroup const& q, Partition const& alpha) {
    return relative_groups(q, lmlt_and_dis(q), alpha);
  }

  //! LMlt^alpha; alpha must be a congruence.
  inline PermGroup lmlt_upper(LeftQuasigroup const&       q,
                              MultiplicationGroups const& g,
                              Partition const&            alpha) {
    detail::check(is_compatible(q, alpha),
                  ErrorKind::NotACongruence,
                  alpha.to_string(true));
    return block_kernel(g.lmlt, alpha);
  }

  // ---------------------------------------------------------------------
  // O_N and c_N
  // ---------------------------------------------------------------------

  //! c_N = {(a, b) : L_a L_b^{-1} in N}.
  inline Partition c_relation_unchecked(LeftQuasigroup const& q, PermGroup const& n) {
    std::vector<int> labels(q.order());
    for (std::size_t a = 0; a < q.order(); ++a) {
      labels[a] = static_cast<int>(a);
      for (std::size_t b = 0; b < a; ++b) {
        if (labels[b] == static_cast<int>(b)
            && n.contains(q.left(a) * q.left_inverse(b))) {
          labels[a] = static_cast<int>(b);
          break;
        }
      }
    }
    return Partition::from_labels(labels);
  }

  inline bool is_normalized_by(PermGroup const& n, PermGroup const& g) {
    for (auto const& x : g.generators()) {
      Perm const xi = x.inverse();
      for (auto const& y : n.generators()) {
        if (!n.contains(x * y * xi)) {
          return false;
        }
      }
    }
    return true;
  }

  //! N in Norm(Q): N normal in LMlt(Q) and O_N <= c_N.
  inline bool is_admissible(LeftQuasigroup const&       q,
                            MultiplicationGroups const& g,
                            PermGroup const&            n) {
    return n.is_subgroup_of(g.lmlt) && is_normalized_by(n, g.lmlt)
           && orbit_partition(n).leq(c_relation_unchecked(q, n));
  }

  //! c_N; on semimedial Q with N admissible, asserted to be a congruence.
  inline Partition c_relation(LeftQuasigroup const&       q,
                              MultiplicationGroups const& g,
                              PermGroup const&            n) {
    Partition c = c_relation_unchecked(q, n);
    if (is_semimedial(q) && is_admissible(q, g, n)) {
      detail::check(is_compatible(q, c),
                    ErrorKind::InternalAssertion,
                    "c_N is not a congruence for admissible N");
    }
    return c;
  }

  inline Partition c_relation(LeftQuasigroup const& q, PermGroup const& n) {
    return c_relation(q, lmlt_and_dis(q), n);
  }

  namespace detail {
    inline bool relations_equal(std::vector<std::vector<bool>> const& a,
                                std::vector<std::vector<bool>> const& b) {
      return a == b;
    }
  }  // namespace detail

  //! O_N for N normalized by LMlt(Q) with Dis_{O_N} <= N; asserted to be a
  //! congruence that permutes with every partition in `permuting`.
  inline Partition orbit_congruence(LeftQuasigroup const&         q,
                                    MultiplicationGroups const&   g,
                                    PermGroup const&              n,
                                    std::vector<Partition> const& permuting = {}) {
    detail::check(is_normalized_by(n, g.lmlt),
                  ErrorKind::NotAdmissible,
                  "N is not normalized by LMlt(Q)");
    Partition o = orbit_partition(n);
    detail::check(dis_lower(q, g, o).is_subgroup_of(n),
                  ErrorKind::NotAdmissible,
                  "Dis_{O_N} is not contained in N");
    detail::check(is_compatible(q, o),
                  ErrorKind::InternalAssertion,
                  "O_N is not a congruence");
    for (auto const& alpha : permuting) {
      detail::check(detail::relations_equal(alpha.compose(o), o.compose(alpha)),
                    ErrorKind::InternalAssertion,
                    "alpha and O_N do not permute");
    }
    return o;
  }

  // ---------------------------------------------------------------------
  // Norm(Q)
  // ---------------------------------------------------------------------

  //! N^s <= N, evaluated through word_s_map on a word for each generator.
  inline bool s_closed(LeftQuasigroup const& q,
                       WordedGroup const&    words,
                       PermGroup const&      n) {
    for (auto const& x : n.generators()) {
      if (!n.contains(word_s_map(q, words.words.at(x)))) {
        return false;
      }
    }
    return true;
  }

  //! Norm(Q), sorted by order.
  inline std::vector<PermGroup> norm_admissible(LeftQuasigroup const&       q,
                                                MultiplicationGroups const& g) {
    auto const             normals = normal_subgroups(g.lmlt);
    std::vector<PermGroup> out;
    for (auto const& n : normals) {
      bool const adm = orbit_partition(n).leq(c_relation_unchecked(q, n));
      detail::check(adm == dis_lower(q, g, orbit_partition(n)).is_subgroup_of(n),
                    ErrorKind::InternalAssertion,
                    "O_N <= c_N disagrees with Dis_{O_N} <= N");
      if (adm) {
        out.push_back(n);
      }
    }
    auto const contains = [&](PermGroup const& x) {
      return std::any_of(out.begin(), out.end(), [&](auto const& y) { return x == y; });
    };
    for (auto const& a : out) {
      for (auto const& b : out) {
        PermGroup j = a;
        for (auto const& y : b.generators()) {
          j = j.with(y);
        }
        std::vector<Perm> common;
        for (auto const& x : a.elements()) {
          if (b.contains(x)) {
            common.push_back(x);
          }
        }
        detail::check(contains(j) && contains(PermGroup::generate(q.order(), common)),
                      ErrorKind::InternalAssertion,
                      "Norm(Q) is not a sublattice");
      }
    }
    if (is_semimedial(q)) {
      WordedGroup const words = lmlt_with_words(q);
      for (auto const& n : normals) {
        detail::check(contains(n) == s_closed(q, words, n),
                      ErrorKind::InternalAssertion,
                      "Norm(Q) != {N normal : N^s <= N}");
      }
    }
    if (is_rack(q)) {
      detail::check(out.size() == normals.size(),
                    ErrorKind::InternalAssertion,
                    "rack with a non-admissible normal subgroup");
    }
    return out;
  }

  inline std::vector<PermGroup> norm_admissible(LeftQuasigroup const& q) {
    return norm_admissible(q, lmlt_and_dis(q));
  }

  // ---------------------------------------------------------------------
  // Galois connections
  // ---------------------------------------------------------------------

  struct GaloisReport {
    std::size_t              congruences = 0;
    std::size_t              admissible  = 0;
    std::size_t              checks      = 0;
    std::vector<std::string> failures;  // "<property>: <witness>"

    bool ok() const noexcept {
      return failures.empty();
    }
  };

  //! Everything needed to run the Galois checks on one instance.
  struct GaloisData {
    MultiplicationGroups        groups;
    CongruenceLattice           con;
    std::vector<PermGroup>      norm;
    std::vector<RelativeGroups> relative;  // parallel to con.congruences
    std::vector<Partition>      orbits;    // O_N, parallel to norm
    std::vector<Partition>      cs;        // c_N, parallel to norm
  };

  inline GaloisData galois_data(LeftQuasigroup const& q) {
    GaloisData d{lmlt_and_dis(q), congruence_lattice(q), {}, {}, {}, {}};
    d.norm = norm_admissible(q, d.groups);
    for (auto const& alpha : d.con.congruences) {
      d.relative.push_back(relative_groups(q, d.groups, alpha));
    }
    for (auto const& n : d.norm) {
      d.orbits.push_back(orbit_partition(n));
      d.cs.push_back(c_relation_unchecked(q, n));
    }
    return d;
  }

  //! (a) N <= Dis^alpha iff O_N <= alpha (N <= Dis(Q)), and N <= LMlt^alpha
  //! iff O_N <= alpha; (b) for semimedial Q, c_N is a
  //! congruence and Dis_alpha <= N iff alpha <= c_N; (c) Q/alpha faithful iff
  //! alpha = c_{Dis^alpha}; (d) monotonicity of the four maps.
  inline GaloisReport galois_verify(LeftQuasigroup const& q, GaloisData const& d) {
    GaloisReport r;
    r.congruences    = d.con.size();
    r.admissible     = d.norm.size();
    bool const semi  = is_semimedial(q);
    auto const& cons = d.con.congruences;
    auto        fail = [&](std::string const& prop, std::string const& witness) {
      r.failures.push_back(prop + ": " + q.to_string() + " " + witness);
    };
    for (std::size_t i = 0; i < cons.size(); ++i) {
      auto const& alpha = cons[i];
      auto const& rel   = d.relative[i];
      for (std::size_t k = 0; k < d.norm.size(); ++k) {
        auto const& n = d.norm[k];
        // The kernel side lives in Dis(Q), so the orbit connection is
        // stated for admissible N <= Dis(Q); every admissible N satisfies
        // the same equivalence with LMlt^alpha in place of Dis^alpha.
        if (n.is_subgroup_of(d.groups.dis)) {
          ++r.checks;
          if (n.is_subgroup_of(rel.dis_upper) != d.orbits[k].leq(alpha)) {
            fail("galois-orbits",
                 alpha.to_string(true) + " |N|=" + std::to_string(n.order()));
          }
        }
        ++r.checks;
        if (n.is_subgroup_of(*rel.lmlt_upper) != d.orbits[k].leq(alpha)) {
          fail("galois-orbits-lmlt",
               alpha.to_string(true) + " |N|=" + std::to_string(n.order()));
        }
        if (semi) {
          ++r.checks;
          if (rel.dis_lower.is_subgroup_of(n) != alpha.leq(d.cs[k])) {
            fail("galois-semimedial",
                 alpha.to_string(true) + " |N|=" + std::to_string(n.order()));
          }
        }
      }
      ++r.checks;
      bool const faithful = cayley_kernel_relation(quotient(q, alpha)).is_discrete();
      if (faithful != (alpha == c_relation_unchecked(q, rel.dis_upper))) {
        fail("faithful-quotient", alpha.to_string(true));
      }
      for (std::size_t j = 0; j < cons.size(); ++j) {
        if (alpha.leq(cons[j])) {
          ++r.checks;
          if (!rel.dis_lower.is_subgroup_of(d.relative[j].dis_lower)
              || !rel.dis_upper.is_subgroup_of(d.relative[j].dis_upper)) {
            fail("monotone-dis", alpha.to_string(true) + " <= " + cons[j].to_string(true));
          }
        }
      }
    }
    for (std::size_t k = 0; k < d.norm.size(); ++k) {
      if (semi) {
        ++r.checks;
        if (!is_compatible(q, d.cs[k])) {
          fail("c_N-congruence", "|N|=" + std::to_string(d.norm[k].order()));
        }
      }
      for (std::size_t l = 0; l < d.norm.size(); ++l) {
        if (d.norm[k].is_subgroup_of(d.norm[l])) {
          ++r.checks;
          if (!d.orbits[k].leq(d.orbits[l]) || !d.cs[k].leq(d.cs[l])) {
            fail("monotone-orbits", "|N|=" + std::to_string(d.norm[k].order()));
          }
        }
      }
    }
    return r;
  }

  inline GaloisReport galois_verify(LeftQuasigroup const& q) {
    return galois_verify(q, galois_data(q));
  }

}  // namespace lqg
