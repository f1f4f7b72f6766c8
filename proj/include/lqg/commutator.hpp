#pragma once

// Term-condition commutators of congruences computed from the matrix
// subalgebra of Q^4, the displacement-group characterization for
// semimedial inputs, centers and the lower central / derived / upper
// central series.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congruence.hpp"
#include "core.hpp"
#include "error.hpp"
#include "left_quasigroup.hpp"
#include "partition.hpp"
#include "perm.hpp"

namespace lqg {

  inline constexpr std::size_t kMaxCommutatorOrder = 6;

  //! The subalgebra of Q^4 generated by (a, a, b, b) for a alpha b and
  //! (u, v, u, v) for u beta v. Rows of a matrix are (x11, x12), (x21, x22).
  class TCMatrixSet {
   public:
    struct Matrix {
      std::size_t x11, x12, x21, x22;
    };

    TCMatrixSet(LeftQuasigroup const& q, Partition const& alpha, Partition const& beta)
        : _n(q.order()) {
      detail::check(_n <= kMaxCommutatorOrder,
                    ErrorKind::OrderTooLarge,
                    "term-condition matrices limited to order "
                        + std::to_string(kMaxCommutatorOrder));
      std::size_t const n = _n;
      std::vector<char> in(n * n * n * n, 0);
      auto add = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
        std::uint32_t code = static_cast<std::uint32_t>(((a * n + b) * n + c) * n + d);
        if (!in[code]) {
          in[code] = 1;
          _codes.push_back(code);
        }
      };
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (alpha.related(a, b)) {
            add(a, a, b, b);
          }
          if (beta.related(a, b)) {
            add(a, b, a, b);
          }
        }
      }
      for (std::size_t i = 0; i < _codes.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          Matrix const x = decode(_codes[i]), y = decode(_codes[j]);
          add(q.mul(x.x11, y.x11), q.mul(x.x12, y.x12), q.mul(x.x21, y.x21), q.mul(x.x22, y.x22));
          add(q.mul(y.x11, x.x11), q.mul(y.x12, x.x12), q.mul(y.x21, x.x21), q.mul(y.x22, x.x22));
          add(q.ldiv(x.x11, y.x11), q.ldiv(x.x12, y.x12), q.ldiv(x.x21, y.x21), q.ldiv(x.x22, y.x22));
          add(q.ldiv(y.x11, x.x11), q.ldiv(y.x12, x.x12), q.ldiv(y.x21, x.x21), q.ldiv(y.x22, x.x22));
        }
      }
    }

    std::size_t size() const noexcept {
      return _codes.size();
    }

    Matrix operator[](std::size_t i) const {
      return decode(_codes[i]);
    }

    //! C(alpha, beta; delta): x11 delta x12 implies x21 delta x22.
    bool centralizes_over(Partition const& delta) const {
      for (auto code : _codes) {
        Matrix m = decode(code);
        if (delta.related(m.x11, m.x12) && !delta.related(m.x21, m.x22)) {
          return false;
        }
      }
      return true;
    }

    //! Pairs (x21, x22) forced into delta by the term condition.
    std::vector<std::pair<int, int>> forced_pairs(Partition const& delta) const {
      std::vector<std::pair<int, int>> out;
      for (auto code : _codes) {
        Matrix m = decode(code);
        if (delta.related(m.x11, m.x12) && !delta.related(m.x21, m.x22)) {
          out.emplace_back(static_cast<int>(m.x21), static_cast<int>(m.x22));
        }
      }
      return out;
    }

   private:
    Matrix decode(std::uint32_t c) const {
      Matrix m;
      m.x22 = c % _n;
      c /= static_cast<std::uint32_t>(_n);
      m.x21 = c % _n;
      c /= static_cast<std::uint32_t>(_n);
      m.x12 = c % _n;
      m.x11 = c / _n;
      return m;
    }

    std::size_t                _n;
    std::vector<std::uint32_t> _codes;
  };

  inline bool centralizes(LeftQuasigroup const& q,
                          Partition const&      alpha,
                          Partition const&      beta,
                          Partition const&      delta) {
    return TCMatrixSet(q, alpha, beta).centralizes_over(delta);
  }

  //! Least delta with C(alpha, beta; delta), by fixpoint growth from 0_Q.
  inline Partition commutator_generic(LeftQuasigroup const& q,
                                      TCMatrixSet const&    m) {
    Partition delta = Partition::discrete(q.order());
    while (true) {
      auto forced = m.forced_pairs(delta);
      if (forced.empty()) {
        return delta;
      }
      delta = generated_congruence(q, forced, &delta);
    }
  }

  inline Partition commutator_generic(LeftQuasigroup const& q,
                                      Partition const&      alpha,
                                      Partition const&      beta) {
    return commutator_generic(q, TCMatrixSet(q, alpha, beta));
  }

  //! The displayed group condition for delta on Q/delta:
  //! [Dis_{alpha'}, Dis_{beta'}] = 1 and Dis_{beta'} is alpha'-semiregular,
  //! where alpha', beta' are the images of alpha, beta.
  inline bool lt_condition(LeftQuasigroup const&       quot,
                           MultiplicationGroups const& groups,
                           Partition const&            alpha_image,
                           Partition const&            beta_image) {
    PermGroup const da = dis_lower(quot, groups, alpha_image);
    PermGroup const db = dis_lower(quot, groups, beta_image);
    return da.commutes_with(db) && is_semiregular(db, alpha_image);
  }

  //! Abelian / central, by the term-condition commutator and (for
  //! semimedial Q) by the displacement-group criterion.
  struct CongruenceClass {
    bool                is_abelian = false;
    bool                is_central = false;
    std::optional<bool> group_abelian;
    std::optional<bool> group_central;
  };

  struct SeriesReport {
    std::vector<Partition>     gamma_lower;    // 1, [1,1], [[1,1],1], ...
    std::vector<Partition>     gamma_derived;  // 1, [1,1], [g1,g1], ...
    std::vector<Partition>     zeta;           // 0, zeta_1, zeta_2, ...
    bool                       is_solvable  = false;
    bool                       is_nilpotent = false;
    std::optional<std::size_t> solvable_length;
    std::optional<std::size_t> nilpotent_length;
  };

  //! Caches the congruence lattice, matrix sets and quotient structure of
  //! one left quasigroup for repeated commutator queries.
  class Commutators {
   public:
    explicit Commutators(LeftQuasigroup q)
        : _q(std::move(q)),
          _groups(lmlt_and_dis(_q)),
          _con(congruence_lattice(_q)),
          _semimedial(is_semimedial(_q)) {
      detail::check(_q.order() <= kMaxCommutatorOrder,
                    ErrorKind::OrderTooLarge,
                    "commutators limited to order "
                        + std::to_string(kMaxCommutatorOrder));
    }

    LeftQuasigroup const& algebra() const noexcept {
      return _q;
    }

    MultiplicationGroups const& groups() const noexcept {
      return _groups;
    }

    CongruenceLattice const& lattice() const noexcept {
      return _con;
    }

    Partition zero() const {
      return Partition::discrete(_q.order());
    }

    Partition one() const {
      return Partition::full(_q.order());
    }

    TCMatrixSet const& matrices(Partition const& alpha, Partition const& beta) {
      auto key = std::make_pair(alpha, beta);
      auto it  = _matrices.find(key);
      if (it == _matrices.end()) {
        it = _matrices.emplace(key, TCMatrixSet(_q, alpha, beta)).first;
      }
      return it->second;
    }

    bool centralizes(Partition const& alpha, Partition const& beta, Partition const& delta) {
      return matrices(alpha, beta).centralizes_over(delta);
    }

    //! Generic [alpha, beta]; asserted below every delta in Con(Q) with
    //! C(alpha, beta; delta).
    Partition generic(Partition const& alpha, Partition const& beta) {
      check_congruence(alpha);
      check_congruence(beta);
      auto key = std::make_pair(alpha, beta);
      if (auto it = _generic.find(key); it != _generic.end()) {
        return it->second;
      }
      auto const& m = matrices(alpha, beta);
      Partition   d = commutator_generic(_q, m);
      detail::check(m.centralizes_over(d),
                    ErrorKind::InternalAssertion,
                    "commutator fixpoint does not centralize");
      for (auto const& other : _con.congruences) {
        if (m.centralizes_over(other)) {
          detail::check(d.leq(other),
                        ErrorKind::InternalAssertion,
                        "commutator fixpoint is not least");
        }
      }
      _generic.emplace(key, d);
      return d;
    }

    //! Meet of every delta in Con(Q) satisfying the group condition on
    //! Q/delta; asserted to satisfy the condition itself.
    Partition lt(Partition const& alpha, Partition const& beta) {
      check_congruence(alpha);
      check_congruence(beta);
      Partition meet    = one();
      bool      found   = false;
      for (std::size_t i = 0; i < _con.size(); ++i) {
        if (qualifies(i, alpha, beta)) {
          meet  = found ? meet.meet(_con.congruences[i]) : _con.congruences[i];
          found = true;
        }
      }
      detail::check(found, ErrorKind::NoQualifyingDelta, alpha.to_string(true));
      auto idx = index_of(meet);
      detail::check(idx.has_value() && qualifies(*idx, alpha, beta),
                    ErrorKind::InternalAssertion,
                    "meet of qualifying congruences does not qualify");
      return meet;
    }

    CongruenceClass classify(Partition const& alpha) {
      CongruenceClass c;
      c.is_abelian = generic(alpha, alpha).is_discrete();
      c.is_central = generic(alpha, one()).is_discrete();
      if (_semimedial) {
        PermGroup const d = dis_lower(_q, _groups, alpha);
        c.group_abelian   = d.is_abelian() && is_semiregular(d, alpha);
        c.group_central
            = d.commutes_with(_groups.dis) && is_semiregular(_groups.dis, alpha);
        if (*c.group_abelian != c.is_abelian || *c.group_central != c.is_central) {
          detail::raise(ErrorKind::OracleDisagreement,
                        _q.to_string() + " alpha=" + alpha.to_string(true));
        }
      }
      return c;
    }

    //! zeta_Q: join of every delta with C(delta, 1; 0).
    Partition center() {
      Partition z = zero();
      for (auto const& d : _con.congruences) {
        if (centralizes(d, one(), zero())) {
          z = z.join(d);
        }
      }
      if (!centralizes(z, one(), zero())) {
        detail::raise(ErrorKind::CenterAssertionFailed,
                      _q.to_string() + " join " + z.to_string(true));
      }
      if (_semimedial && identity_profile_2_divisible()) {
        Partition expect = c_relation_unchecked(_q, lqg::center(_groups.dis))
                               .meet(stabilizer_partition(_groups.dis));
        detail::check(expect == z,
                      ErrorKind::CenterAssertionFailed,
                      _q.to_string() + " zeta differs from c_Z(Dis) meet sigma_Dis");
        detail::check(squaring_profile(quotient(_q, z)).bijective,
                      ErrorKind::CenterAssertionFailed,
                      _q.to_string() + " Q/zeta is not 2-divisible");
      }
      return z;
    }

    //! Series by the generic commutator; on semimedial inputs every step
    //! is recomputed with the group condition and asserted equal.
    SeriesReport series() {
      SeriesReport s;
      s.gamma_lower.push_back(one());
      while (true) {
        Partition next = step(s.gamma_lower.back(), one());
        if (next == s.gamma_lower.back()) {
          break;
        }
        s.gamma_lower.push_back(next);
      }
      s.gamma_derived.push_back(one());
      while (true) {
        Partition next = step(s.gamma_derived.back(), s.gamma_derived.back());
        if (next == s.gamma_derived.back()) {
          break;
        }
        s.gamma_derived.push_back(next);
      }
      s.zeta.push_back(zero());
      while (true) {
        Partition const& last = s.zeta.back();
        Partition        next;
        if (last.is_discrete()) {
          next = center();
        } else {
          Commutators sub(quotient(_q, last));
          next = lift_partition(sub.center(), last);
        }
        if (next == last) {
          break;
        }
        s.zeta.push_back(next);
      }
      s.is_nilpotent = s.gamma_lower.back().is_discrete();
      s.is_solvable  = s.gamma_derived.back().is_discrete();
      bool const zeta_top = s.zeta.back().is_full();
      detail::check(zeta_top == s.is_nilpotent,
                    ErrorKind::InternalAssertion,
                    "upper and lower central series disagree on " + _q.to_string());
      if (s.is_nilpotent) {
        s.nilpotent_length = s.gamma_lower.size() - 1;
        detail::check(s.zeta.size() == s.gamma_lower.size(),
                      ErrorKind::InternalAssertion,
                      "upper and lower central series lengths differ on "
                          + _q.to_string());
      }
      if (s.is_solvable) {
        s.solvable_length = s.gamma_derived.size() - 1;
      }
      if (s.is_nilpotent) {
        detail::check(s.is_solvable && *s.solvable_length <= *s.nilpotent_length,
                      ErrorKind::InternalAssertion,
                      "nilpotent but not solvable within the same length");
      }
      return s;
    }

   private:
    struct QuotientData {
      Partition            delta;
      LeftQuasigroup       q;
      MultiplicationGroups groups;
    };

    bool identity_profile_2_divisible() const {
      return squaring_profile(_q).bijective;
    }

    Partition step(Partition const& a, Partition const& b) {
      Partition g = generic(a, b);
      if (_semimedial) {
        detail::check(lt(a, b) == g,
                      ErrorKind::OracleDisagreement,
                      _q.to_string() + " [" + a.to_string(true) + ","
                          + b.to_string(true) + "]");
      }
      return g;
    }

    void check_congruence(Partition const& p) const {
      detail::check(_con.contains(p), ErrorKind::NotACongruence, p.to_string(true));
    }

    std::optional<std::size_t> index_of(Partition const& p) const {
      for (std::size_t i = 0; i < _con.size(); ++i) {
        if (_con.congruences[i] == p) {
          return i;
        }
      }
      return std::nullopt;
    }

    QuotientData const& quotient_data(std::size_t i) {
      if (_quotients.empty()) {
        _quotients.resize(_con.size());
      }
      if (!_quotients[i]) {
        Partition const& d = _con.congruences[i];
        LeftQuasigroup   r = quotient(_q, d);
        auto             g = lmlt_and_dis(r);
        _quotients[i]      = std::make_unique<QuotientData>(
            QuotientData{d, std::move(r), std::move(g)});
      }
      return *_quotients[i];
    }

    bool qualifies(std::size_t i, Partition const& alpha, Partition const& beta) {
      auto const& qd = quotient_data(i);
      return lt_condition(qd.q,
                          qd.groups,
                          image_partition(alpha, qd.delta),
                          image_partition(beta, qd.delta));
    }

    LeftQuasigroup                                         _q;
    MultiplicationGroups                                   _groups;
    CongruenceLattice                                      _con;
    bool                                                   _semimedial;
    std::map<std::pair<Partition, Partition>, TCMatrixSet> _matrices;
    std::map<std::pair<Partition, Partition>, Partition>   _generic;
    std::vector<std::unique_ptr<QuotientData>>             _quotients;
  };

  inline Partition commutator_lt(LeftQuasigroup const& q,
                                 Partition const&      alpha,
                                 Partition const&      beta) {
    return Commutators(q).lt(alpha, beta);
  }

  inline CongruenceClass classify_congruence(LeftQuasigroup const& q,
                                             Partition const&      alpha) {
    return Commutators(q).classify(alpha);
  }

  inline Partition center_congruence(LeftQuasigroup const& q) {
    return Commutators(q).center();
  }

  inline SeriesReport series_and_class(LeftQuasigroup const& q) {
    return Commutators(q).series();
  }

}  // namespace lqg
