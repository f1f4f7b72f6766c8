#pragma once

// Identity classification, left multiplication and displacement groups, the
// squaring map, subalgebras and the iterated Cayley-kernel chain.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"
#include "left_quasigroup.hpp"
#include "partition.hpp"
#include "perm.hpp"

namespace lqg {

  //! L_element^exponent, exponent in {+1, -1}.
  struct Letter {
    int  element;
    int  exponent = 1;
    bool operator==(Letter const&) const = default;
  };

  //! A group word read as a composition left to right:
  //! [l1, l2, ..., lk] evaluates to L_{l1} o L_{l2} o ... o L_{lk}.
  using Word = std::vector<Letter>;

  inline Perm evaluate_word(LeftQuasigroup const& q, Word const& w) {
    Perm h(q.order());
    for (auto const& l : w) {
      h = h * (l.exponent > 0 ? q.left(l.element) : q.left_inverse(l.element));
    }
    return h;
  }

  // ---------------------------------------------------------------------
  // Identities
  // ---------------------------------------------------------------------

  namespace identities {
    template <typename F>
    bool for_all3(std::size_t n, F&& f) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            if (!f(x, y, z)) {
              return false;
            }
          }
        }
      }
      return true;
    }

    //! (x*x)*(y*z) = (x*y)*(x*z)
    inline bool semimedial_mul(LeftQuasigroup const& q) {
      return for_all3(q.order(), [&](auto x, auto y, auto z) {
        return q.mul(q.square(x), q.mul(y, z))
               == q.mul(q.mul(x, y), q.mul(x, z));
      });
    }

    //! (x\y)*(x\z) = (x*x)\(y*z)
    inline bool semimedial_div(LeftQuasigroup const& q) {
      return for_all3(q.order(), [&](auto x, auto y, auto z) {
        return q.mul(q.ldiv(x, y), q.ldiv(x, z))
               == q.ldiv(q.square(x), q.mul(y, z));
      });
    }

    //! x*(y*z) = (x*y)*(x*z)
    inline bool left_distributive(LeftQuasigroup const& q) {
      return for_all3(q.order(), [&](auto x, auto y, auto z) {
        return q.mul(x, q.mul(y, z)) == q.mul(q.mul(x, y), q.mul(x, z));
      });
    }

    //! (x*y)*(z*u) = (x*z)*(y*u)
    inline bool medial(LeftQuasigroup const& q) {
      std::size_t const n = q.order();
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            for (std::size_t u = 0; u < n; ++u) {
              if (q.mul(q.mul(x, y), q.mul(z, u))
                  != q.mul(q.mul(x, z), q.mul(y, u))) {
                return false;
              }
            }
          }
        }
      }
      return true;
    }

    inline bool associative(LeftQuasigroup const& q) {
      return for_all3(q.order(), [&](auto x, auto y, auto z) {
        return q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z));
      });
    }

    inline bool idempotent(LeftQuasigroup const& q) {
      for (std::size_t x = 0; x < q.order(); ++x) {
        if (q.square(x) != x) {
          return false;
        }
      }
      return true;
    }

    //! Every right multiplication is a bijection.
    inline bool latin(LeftQuasigroup const& q) {
      std::size_t const n = q.order();
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<bool> seen(n, false);
        for (std::size_t a = 0; a < n; ++a) {
          if (seen[q.mul(a, b)]) {
            return false;
          }
          seen[q.mul(a, b)] = true;
        }
      }
      return true;
    }

    inline bool right_injective(LeftQuasigroup const& q) {
      return latin(q);
    }

    //! All left translations coincide.
    inline bool permutation(LeftQuasigroup const& q) {
      for (std::size_t a = 1; a < q.order(); ++a) {
        for (std::size_t b = 0; b < q.order(); ++b) {
          if (q.mul(a, b) != q.mul(0, b)) {
            return false;
          }
        }
      }
      return true;
    }

    inline bool faithful(LeftQuasigroup const& q) {
      std::set<std::vector<int>> rows;
      for (auto const& r : q.rows()) {
        if (!rows.insert(r).second) {
          return false;
        }
      }
      return true;
    }
  }  // namespace identities

  inline bool is_semimedial(LeftQuasigroup const& q) {
    return identities::semimedial_mul(q);
  }

  inline bool is_rack(LeftQuasigroup const& q) {
    return identities::left_distributive(q);
  }

  inline bool is_quandle(LeftQuasigroup const& q) {
    return identities::idempotent(q) && is_rack(q);
  }

  inline bool is_medial(LeftQuasigroup const& q) {
    return identities::medial(q);
  }

  // ---------------------------------------------------------------------
  // Relations
  // ---------------------------------------------------------------------

  //! Direct compatibility test for an equivalence relation: the relation is
  //! preserved by every L_c^{±1} in both the left and right argument.
  inline bool is_compatible(LeftQuasigroup const& q, Partition const& alpha) {
    std::size_t const n = q.order();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!alpha.related(a, b)) {
          continue;
        }
        for (std::size_t c = 0; c < n; ++c) {
          if (!alpha.related(q.mul(c, a), q.mul(c, b))
              || !alpha.related(q.ldiv(c, a), q.ldiv(c, b))
              || !alpha.related(q.mul(a, c), q.mul(b, c))
              || !alpha.related(q.ldiv(a, c), q.ldiv(b, c))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  //! lambda_Q: a ~ b iff L_a = L_b.
  inline Partition cayley_kernel_relation(LeftQuasigroup const& q) {
    std::size_t const n = q.order();
    std::vector<int>  labels(n);
    for (std::size_t a = 0; a < n; ++a) {
      labels[a] = static_cast<int>(a);
      for (std::size_t b = 0; b < a; ++b) {
        bool same = true;
        for (std::size_t c = 0; c < n && same; ++c) {
          same = q.mul(a, c) == q.mul(b, c);
        }
        if (same) {
          labels[a] = labels[b];
          break;
        }
      }
    }
    return Partition::from_labels(labels);
  }

  //! {h in g : h(a) alpha a for every a}.
  inline PermGroup block_kernel(PermGroup const& g, Partition const& alpha) {
    std::vector<Perm> keep;
    for (auto const& h : g.elements()) {
      bool ok = true;
      for (std::size_t a = 0; a < g.degree() && ok; ++a) {
        ok = alpha.related(h(a), a);
      }
      if (ok) {
        keep.push_back(h);
      }
    }
    return PermGroup::generate(g.degree(), keep);
  }

  // ---------------------------------------------------------------------
  // LMlt(Q), Dis(Q)
  // ---------------------------------------------------------------------

  struct MultiplicationGroups {
    PermGroup lmlt;
    PermGroup dis;
  };

  inline PermGroup lmlt(LeftQuasigroup const& q, std::size_t cap = default_cap()) {
    return PermGroup::generate(q.order(), q.left_translations(), cap);
  }

  //! LMlt(Q) = <L_a> and Dis(Q) as the normal closure of {L_a L_b^{-1}};
  //! asserts LMlt(Q) = Dis(Q) <L_a> for every a.
  inline MultiplicationGroups lmlt_and_dis(LeftQuasigroup const& q,
                                           std::size_t cap = default_cap()) {
    PermGroup         g    = lmlt(q, cap);
    Perm const        inv0 = q.left_inverse(0);
    std::vector<Perm> seed;
    for (std::size_t a = 1; a < q.order(); ++a) {
      seed.push_back(q.left(a) * inv0);
    }
    PermGroup d = normal_closure(g, seed, cap);
    detail::check(g.order() % d.order() == 0,
                  ErrorKind::InternalAssertion,
                  "|Dis(Q)| does not divide |LMlt(Q)|");
    std::size_t const index = g.order() / d.order();
    for (std::size_t a = 0; a < q.order(); ++a) {
      Perm const  la = q.left(a);
      Perm        p  = la;
      std::size_t k  = 1;
      while (!d.contains(p)) {
        p = p * la;
        ++k;
      }
      detail::check(k == index,
                    ErrorKind::InternalAssertion,
                    "LMlt(Q) != Dis(Q)<L_a> at a = " + std::to_string(a));
    }
    return {std::move(g), std::move(d)};
  }

  //! LMlt(Q) with one positive word in the L_a recorded per element.
  struct WordedGroup {
    PermGroup                                    group;
    std::unordered_map<Perm, Word, PermHash> words;
  };

  inline WordedGroup lmlt_with_words(LeftQuasigroup const& q,
                                     std::size_t cap = default_cap()) {
    WordedGroup       out{lmlt(q, cap), {}};
    std::vector<Perm> frontier{Perm(q.order())};
    out.words.emplace(Perm(q.order()), Word{});
    auto const gens = q.left_translations();
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      Perm const g = frontier[i];
      Word const w = out.words.at(g);
      for (std::size_t a = 0; a < gens.size(); ++a) {
        Perm h = g * gens[a];
        if (!out.words.count(h)) {
          Word v = w;
          v.push_back({static_cast<int>(a), 1});
          out.words.emplace(h, std::move(v));
          frontier.push_back(h);
        }
      }
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // Squaring map
  // ---------------------------------------------------------------------

  struct SquaringProfile {
    std::vector<int>              map;          // a -> a*a
    Partition                     kernel;       // ker s
    std::vector<int>              idempotents;  // E(Q)
    std::vector<std::vector<int>> chain;        // s^0(Q), s^1(Q), ... until stable
    bool                          bijective = false;
    std::optional<std::size_t>    multipotency_class;
  };

  inline SquaringProfile squaring_profile(LeftQuasigroup const& q) {
    std::size_t const n = q.order();
    SquaringProfile   s;
    s.map.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      s.map[a] = static_cast<int>(q.square(a));
      if (q.square(a) == a) {
        s.idempotents.push_back(static_cast<int>(a));
      }
    }
    s.kernel = Partition::from_labels(s.map);
    std::vector<int> current(n);
    for (std::size_t a = 0; a < n; ++a) {
      current[a] = static_cast<int>(a);
    }
    s.chain.push_back(current);
    while (true) {
      std::set<int> next;
      for (int a : current) {
        next.insert(s.map[static_cast<std::size_t>(a)]);
      }
      std::vector<int> nv(next.begin(), next.end());
      if (nv == current) {
        break;
      }
      s.chain.push_back(nv);
      current = std::move(nv);
    }
    s.bijective = s.chain.size() == 1;
    for (std::size_t k = 0; k < s.chain.size(); ++k) {
      if (s.chain[k].size() == 1) {
        s.multipotency_class = k;
        break;
      }
    }
    if (is_semimedial(q)) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          detail::check(q.square(q.mul(a, b)) == q.mul(q.square(a), q.square(b)),
                        ErrorKind::InternalAssertion,
                        "squaring map is not an endomorphism");
        }
      }
      detail::check(is_compatible(q, s.kernel),
                    ErrorKind::InternalAssertion,
                    "ker s is not a congruence");
    }
    return s;
  }

  // ---------------------------------------------------------------------
  // Subalgebras and connectivity
  // ---------------------------------------------------------------------

  //! Smallest subset containing s closed under * and \.
  inline std::vector<int> subalgebra_generate(LeftQuasigroup const& q,
                                              std::vector<int> const& s) {
    std::size_t const n = q.order();
    std::vector<bool> in(n, false);
    std::vector<int>  elems;
    for (int a : s) {
      if (!in[static_cast<std::size_t>(a)]) {
        in[static_cast<std::size_t>(a)] = true;
        elems.push_back(a);
      }
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        auto const a = static_cast<std::size_t>(elems[i]);
        auto const b = static_cast<std::size_t>(elems[j]);
        for (std::size_t v :
             {q.mul(a, b), q.mul(b, a), q.ldiv(a, b), q.ldiv(b, a)}) {
          if (!in[v]) {
            in[v] = true;
            elems.push_back(static_cast<int>(v));
          }
        }
      }
    }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  namespace detail {
    //! Connectedness of the subalgebra s (sorted), i.e. transitivity of the
    //! group generated by the restricted translations.
    inline bool subalgebra_connected(LeftQuasigroup const& q,
                                     std::vector<int> const& s) {
      if (s.size() <= 1) {
        return true;
      }
      std::vector<bool> seen(q.order(), false);
      std::vector<int>  stack{s[0]};
      seen[static_cast<std::size_t>(s[0])] = true;
      std::size_t count                    = 1;
      while (!stack.empty()) {
        auto x = static_cast<std::size_t>(stack.back());
        stack.pop_back();
        for (int a : s) {
          auto y = q.mul(static_cast<std::size_t>(a), x);
          if (!seen[y]) {
            seen[y] = true;
            ++count;
            stack.push_back(static_cast<int>(y));
          }
        }
      }
      return count == s.size();
    }
  }  // namespace detail

  inline constexpr std::size_t kMaxSubalgebraOrder = 8;

  //! Every non-empty subalgebra, as sorted element lists (n <= 8).
  inline std::vector<std::vector<int>> subalgebras(LeftQuasigroup const& q) {
    detail::check(q.order() <= kMaxSubalgebraOrder,
                  ErrorKind::OrderTooLarge,
                  "subalgebra lattice limited to order "
                      + std::to_string(kMaxSubalgebraOrder));
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> list;
    for (std::size_t a = 0; a < q.order(); ++a) {
      auto s = subalgebra_generate(q, {static_cast<int>(a)});
      if (found.insert(s).second) {
        list.push_back(s);
      }
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        std::vector<int> u = list[i];
        u.insert(u.end(), list[j].begin(), list[j].end());
        auto s = subalgebra_generate(q, u);
        if (found.insert(s).second) {
          list.push_back(s);
        }
      }
    }
    return {found.begin(), found.end()};
  }

  struct Connectivity {
    bool                is_connected = false;
    std::optional<bool> is_superconnected;  // unset beyond order 8 when lenient
    Partition           orbits;             // orbits of LMlt(Q)
  };

  //! Throws OrderTooLarge beyond order 8 unless lenient, in which case the
  //! superconnectedness answer is left unset.
  inline Connectivity connectivity(LeftQuasigroup const& q, bool lenient = false) {
    Connectivity c;
    detail::UnionFind uf(q.order());
    for (std::size_t a = 0; a < q.order(); ++a) {
      for (std::size_t b = 0; b < q.order(); ++b) {
        uf.unite(b, q.mul(a, b));
      }
    }
    c.orbits       = Partition::from_uf(uf);
    c.is_connected = c.orbits.is_full();
    if (q.order() > kMaxSubalgebraOrder) {
      detail::check(lenient,
                    ErrorKind::OrderTooLarge,
                    "superconnectedness check limited to order "
                        + std::to_string(kMaxSubalgebraOrder));
      return c;
    }
    bool all = true;
    for (auto const& s : subalgebras(q)) {
      if (!detail::subalgebra_connected(q, s)) {
        all = false;
        break;
      }
    }
    c.is_superconnected = all;
    return c;
  }

  // ---------------------------------------------------------------------
  // Quotients by a compatible equivalence (needed by the Cayley chain)
  // ---------------------------------------------------------------------

  namespace detail {
    inline LeftQuasigroup quotient_unchecked(LeftQuasigroup const& q,
                                             Partition const&      alpha) {
      std::size_t const                          m = alpha.number_of_blocks();
      std::vector<int>                           rep(m, -1);
      for (std::size_t a = 0; a < q.order(); ++a) {
        if (rep[static_cast<std::size_t>(alpha.block_of(a))] == -1) {
          rep[static_cast<std::size_t>(alpha.block_of(a))] = static_cast<int>(a);
        }
      }
      std::vector<LeftQuasigroup::element_type> flat(m * m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
          auto v = q.mul(static_cast<std::size_t>(rep[i]),
                         static_cast<std::size_t>(rep[j]));
          flat[i * m + j] = static_cast<LeftQuasigroup::element_type>(alpha.block_of(v));
        }
      }
      return LeftQuasigroup::from_flat(m, std::move(flat));
    }
  }  // namespace detail

  // ---------------------------------------------------------------------
  // Cayley kernel and reductivity
  // ---------------------------------------------------------------------

  //! lambda_Q. For semimedial Q asserts lambda_Q is a congruence. (The
  //! kernel LMlt^{lambda_Q} need not be central there; see
  //! lmlt_kernel_is_central.)
  inline Partition cayley_kernel(LeftQuasigroup const& q) {
    Partition lambda = cayley_kernel_relation(q);
    if (q.order() <= kMaxDegree && is_semimedial(q)) {
      detail::check(is_compatible(q, lambda),
                    ErrorKind::InternalAssertion,
                    "semimedial Q without the Cayley property");
    }
    return lambda;
  }

  //! True iff the kernel LMlt^{lambda_Q} of the action on Q/lambda_Q
  //! commutes with every element of LMlt(Q).
  inline bool lmlt_kernel_is_central(LeftQuasigroup const& q) {
    PermGroup const g = lmlt(q);
    return block_kernel(g, cayley_kernel_relation(q)).commutes_with(g);
  }

  namespace detail {
    //! Every left-associated product (...((y*x1)*x2)...)*xm is independent
    //! of y. Tracks the reachable image sets of right multiplications.
    inline bool satisfies_reductive(LeftQuasigroup const& q, std::size_t m) {
      std::size_t const          n = q.order();
      std::set<std::vector<int>> level;
      std::vector<int>           all(n);
      for (std::size_t a = 0; a < n; ++a) {
        all[a] = static_cast<int>(a);
      }
      level.insert(all);
      for (std::size_t k = 0; k < m; ++k) {
        std::set<std::vector<int>> next;
        for (auto const& s : level) {
          for (std::size_t x = 0; x < n; ++x) {
            std::set<int> img;
            for (int y : s) {
              img.insert(static_cast<int>(q.mul(static_cast<std::size_t>(y), x)));
            }
            next.emplace(img.begin(), img.end());
          }
        }
        level = std::move(next);
      }
      return std::all_of(level.begin(), level.end(), [](auto const& s) {
        return s.size() == 1;
      });
    }
  }  // namespace detail

  //! Smallest m with |L_m(Q)| = 1 for the chain L_{k+1} = L_k / lambda;
  //! nullopt when the chain stabilizes above a point. Throws
  //! CayleyPropertyFails(level) if some lambda is not a congruence.
  inline std::optional<std::size_t> reductivity_level(LeftQuasigroup const& q) {
    LeftQuasigroup cur   = q;
    std::size_t    level = 0;
    while (cur.order() > 1) {
      Partition lambda = cayley_kernel_relation(cur);
      if (lambda.is_discrete()) {
        return std::nullopt;
      }
      if (!is_compatible(cur, lambda)) {
        detail::raise(ErrorKind::CayleyPropertyFails, std::to_string(level));
      }
      cur = detail::quotient_unchecked(cur, lambda);
      ++level;
    }
    detail::check(detail::satisfies_reductive(q, level)
                      && (level == 0 || !detail::satisfies_reductive(q, level - 1)),
                  ErrorKind::InternalAssertion,
                  "Cayley chain length disagrees with the reductive identity");
    return level;
  }

  // ---------------------------------------------------------------------
  // Words and the s-map on words
  // ---------------------------------------------------------------------

  //! The word with every L_{a_i} replaced by L_{s(a_i)}. Asserts
  //! L_{h(a)} = h^s L_a h^{-1} for every a, where h is the evaluated word.
  inline Perm word_s_map(LeftQuasigroup const& q, Word const& w) {
    detail::check(is_semimedial(q), ErrorKind::NotSemimedial, "word_s_map");
    Word ws = w;
    for (auto& l : ws) {
      l.element = static_cast<int>(q.square(static_cast<std::size_t>(l.element)));
    }
    Perm const h  = evaluate_word(q, w);
    Perm const hs = evaluate_word(q, ws);
    for (std::size_t a = 0; a < q.order(); ++a) {
      detail::check(q.left(h(a)) == hs * q.left(a) * h.inverse(),
                    ErrorKind::InternalAssertion,
                    "L_{h(a)} != h^s L_a h^{-1}");
    }
    return hs;
  }

  // ---------------------------------------------------------------------
  // Direct product
  // ---------------------------------------------------------------------

  //! (a1, a2) is encoded as a1 * |Q2| + a2.
  inline LeftQuasigroup direct_product(LeftQuasigroup const& q1,
                                       LeftQuasigroup const& q2) {
    std::size_t const n1 = q1.order(), n2 = q2.order(), n = n1 * n2;
    detail::check(n * n <= 10000,
                  ErrorKind::OrderTooLarge,
                  "direct product beyond 10000 cells");
    std::vector<LeftQuasigroup::element_type> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        flat[a * n + b] = static_cast<LeftQuasigroup::element_type>(
            q1.mul(a / n2, b / n2) * n2 + q2.mul(a % n2, b % n2));
      }
    }
    return LeftQuasigroup::from_flat(n, std::move(flat));
  }

  // ---------------------------------------------------------------------
  // Identity profile
  // ---------------------------------------------------------------------

  struct IdentityProfile {
    bool is_semimedial   = false;
    bool is_medial       = false;
    bool is_rack         = false;
    bool is_quandle      = false;
    bool is_idempotent   = false;
    bool is_associative  = false;
    bool is_latin        = false;
    bool is_permutation  = false;
    bool is_projection   = false;
    bool is_faithful     = false;
    bool is_connected    = false;
    bool is_2_divisible  = false;
    bool cayley_chain    = true;  // every lambda along the chain is a congruence
    std::optional<bool>        is_superconnected;  // unset beyond order 8
    std::optional<std::size_t> multipotency_class;
    std::optional<std::size_t> reductivity_level;

    bool operator==(IdentityProfile const&) const = default;
  };

  inline IdentityProfile identity_profile(LeftQuasigroup const& q) {
    IdentityProfile p;
    p.is_semimedial = identities::semimedial_mul(q);
    detail::check(p.is_semimedial == identities::semimedial_div(q),
                  ErrorKind::InternalAssertion,
                  "the two forms of the semimedial law disagree on " + q.to_string());
    p.is_medial      = identities::medial(q);
    p.is_rack        = identities::left_distributive(q);
    p.is_idempotent  = identities::idempotent(q);
    p.is_quandle     = p.is_rack && p.is_idempotent;
    p.is_associative = identities::associative(q);
    p.is_latin       = identities::latin(q);
    p.is_permutation = identities::permutation(q);
    p.is_projection  = p.is_permutation && p.is_idempotent;
    p.is_faithful    = identities::faithful(q);
    auto c           = connectivity(q, true);
    p.is_connected      = c.is_connected;
    p.is_superconnected = c.is_superconnected;
    auto s              = squaring_profile(q);
    p.is_2_divisible     = s.bijective;
    p.multipotency_class = s.multipotency_class;
    try {
      p.reductivity_level = reductivity_level(q);
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::CayleyPropertyFails) {
        throw;
      }
      p.cayley_chain = false;
    }
    return p;
  }

}  // namespace lqg
