#pragma once

// Affine left quasigroups, cocycle extensions, the correspondence between
// 2-divisible semimedial left quasigroups and quandles with an automorphism,
// connected medial racks, Mal'tsev terms and the spelling property.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "congruence.hpp"
#include "core.hpp"
#include "error.hpp"
#include "iso.hpp"
#include "left_quasigroup.hpp"
#include "partition.hpp"
#include "perm.hpp"

namespace lqg {

  // ---------------------------------------------------------------------
  // Finite abelian groups as products of cyclic factors
  // ---------------------------------------------------------------------

  //! Z_{d_1} x ... x Z_{d_k}; elements are mixed-radix indices with the
  //! last factor varying fastest.
  class AbelianGroup {
   public:
    AbelianGroup() = default;

    explicit AbelianGroup(std::vector<int> factors) : _factors(std::move(factors)) {
      _order = 1;
      for (int d : _factors) {
        detail::check(d >= 1, ErrorKind::InvalidArgument, "cyclic factor must be >= 1");
        _order *= static_cast<std::size_t>(d);
      }
    }

    std::vector<int> const& factors() const noexcept {
      return _factors;
    }

    std::size_t order() const noexcept {
      return _order;
    }

    std::vector<int> coords(std::size_t x) const {
      std::vector<int> c(_factors.size());
      for (std::size_t i = _factors.size(); i-- > 0;) {
        c[i] = static_cast<int>(x % static_cast<std::size_t>(_factors[i]));
        x /= static_cast<std::size_t>(_factors[i]);
      }
      return c;
    }

    std::size_t index(std::vector<int> const& c) const {
      std::size_t x = 0;
      for (std::size_t i = 0; i < _factors.size(); ++i) {
        int d = _factors[i];
        x     = x * static_cast<std::size_t>(d) + static_cast<std::size_t>(((c[i] % d) + d) % d);
      }
      return x;
    }

    std::size_t add(std::size_t x, std::size_t y) const {
      auto a = coords(x), b = coords(y);
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
      }
      return index(a);
    }

    std::size_t neg(std::size_t x) const {
      auto a = coords(x);
      for (auto& v : a) {
        v = -v;
      }
      return index(a);
    }

    std::size_t sub(std::size_t x, std::size_t y) const {
      return add(x, neg(y));
    }

    //! The i-th standard generator.
    std::size_t generator(std::size_t i) const {
      std::vector<int> c(_factors.size(), 0);
      c[i] = 1;
      return index(c);
    }

    std::size_t multiple(std::size_t x, long long k) const {
      auto a = coords(x);
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<int>((static_cast<long long>(a[i]) * k) % _factors[i]);
      }
      return index(a);
    }

    std::string to_string() const {
      if (_factors.empty()) {
        return "1";
      }
      std::string s;
      for (std::size_t i = 0; i < _factors.size(); ++i) {
        s += (i ? "xZ" : "Z") + std::to_string(_factors[i]);
      }
      return s;
    }

   private:
    std::vector<int> _factors;
    std::size_t      _order = 1;
  };

  //! Every abelian group of order d, as invariant factors d_1 | d_2 | ...
  inline std::vector<AbelianGroup> abelian_groups_of_order(std::size_t d) {
    std::vector<AbelianGroup> out;
    std::vector<int>          cur;
    // Each factor is a multiple of the previous one; dead ends emit nothing.
    std::function<void(int, int)> rec = [&](int rest, int prev) {
      if (rest == 1) {
        out.emplace_back(cur);
        return;
      }
      for (int f = 2; f <= rest; ++f) {
        if (f % prev == 0 && rest % f == 0) {
          cur.push_back(f);
          rec(rest / f, f);
          cur.pop_back();
        }
      }
    };
    rec(static_cast<int>(d), 1);
    return out;
  }

  //! Every endomorphism (as an element map), found by choosing images of the
  //! standard generators with the right order.
  inline std::vector<std::vector<int>> endomorphisms(AbelianGroup const& a) {
    std::size_t const             k = a.factors().size();
    std::vector<std::vector<int>> out;
    std::vector<std::size_t>      img(k, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == k) {
        std::vector<int> f(a.order());
        for (std::size_t x = 0; x < a.order(); ++x) {
          auto        c = a.coords(x);
          std::size_t v = 0;
          for (std::size_t j = 0; j < k; ++j) {
            v = a.add(v, a.multiple(img[j], c[j]));
          }
          f[x] = static_cast<int>(v);
        }
        out.push_back(std::move(f));
        return;
      }
      for (std::size_t y = 0; y < a.order(); ++y) {
        if (a.multiple(y, a.factors()[i]) == 0) {
          img[i] = y;
          rec(i + 1);
        }
      }
    };
    rec(0);
    return out;
  }

  inline bool is_bijective(std::vector<int> const& f) {
    std::vector<bool> seen(f.size(), false);
    for (int v : f) {
      if (seen[static_cast<std::size_t>(v)]) {
        return false;
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
  }

  inline constexpr std::size_t kMaxAutomorphismGroupOrder = 16;

  inline std::vector<std::vector<int>> automorphisms(AbelianGroup const& a) {
    detail::check(a.order() <= kMaxAutomorphismGroupOrder,
                  ErrorKind::OrderTooLarge,
                  "automorphism enumeration limited to |A| <= "
                      + std::to_string(kMaxAutomorphismGroupOrder));
    std::vector<std::vector<int>> out;
    for (auto& f : endomorphisms(a)) {
      if (is_bijective(f)) {
        out.push_back(std::move(f));
      }
    }
    return out;
  }

  inline bool is_additive(AbelianGroup const& a, std::vector<int> const& f) {
    if (f.size() != a.order()) {
      return false;
    }
    for (std::size_t x = 0; x < a.order(); ++x) {
      for (std::size_t y = 0; y < a.order(); ++y) {
        if (static_cast<std::size_t>(f[a.add(x, y)])
            != a.add(static_cast<std::size_t>(f[x]), static_cast<std::size_t>(f[y]))) {
          return false;
        }
      }
    }
    return true;
  }

  // ---------------------------------------------------------------------
  // Affine left quasigroups
  // ---------------------------------------------------------------------

  struct AffineData {
    AbelianGroup     group;
    std::vector<int> f;  // endomorphism
    std::vector<int> g;  // automorphism
    std::size_t      c = 0;
  };

  inline std::vector<int> identity_map(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }

  //! x -> k x.
  inline std::vector<int> scalar_map(AbelianGroup const& a, long long k) {
    std::vector<int> v(a.order());
    for (std::size_t x = 0; x < a.order(); ++x) {
      v[x] = static_cast<int>(a.multiple(x, k));
    }
    return v;
  }

  //! Aff(A, f, g, c): a * b = f(a) + g(b) + c; medial if and only if fg = gf.
  inline LeftQuasigroup affine(AffineData const& d) {
    auto const& a = d.group;
    detail::check(is_additive(a, d.f), ErrorKind::NotEndomorphism, "f");
    detail::check(is_additive(a, d.g) && is_bijective(d.g),
                  ErrorKind::NotAutomorphism,
                  "g");
    detail::check(d.c < a.order(), ErrorKind::InvalidArgument, "constant out of range");
    std::size_t const                         n = a.order();
    std::vector<LeftQuasigroup::element_type> flat(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        flat[x * n + y] = static_cast<LeftQuasigroup::element_type>(
            a.add(a.add(static_cast<std::size_t>(d.f[x]), static_cast<std::size_t>(d.g[y])), d.c));
      }
    }
    LeftQuasigroup q = LeftQuasigroup::from_flat(n, std::move(flat));
    bool           commute = true;
    for (std::size_t x = 0; x < n && commute; ++x) {
      commute = d.f[static_cast<std::size_t>(d.g[x])] == d.g[static_cast<std::size_t>(d.f[x])];
    }
    // medial exactly when f and g commute
    detail::check(is_medial(q) == commute,
                  ErrorKind::InternalAssertion,
                  "affine table: mediality does not match fg = gf");
    return q;
  }

  //! (Z_n, +k): a * b = b + k.
  inline LeftQuasigroup cyclic_permutation(std::size_t n, std::size_t k = 1) {
    AbelianGroup a(n == 1 ? std::vector<int>{} : std::vector<int>{static_cast<int>(n)});
    return affine({a, std::vector<int>(a.order(), 0), identity_map(a.order()), k % n});
  }

  // ---------------------------------------------------------------------
  // Cocycles and extensions
  // ---------------------------------------------------------------------

  //! theta_{a,b} in Sym(fiber), stored row-major over the base.
  struct Cocycle {
    std::size_t       base  = 0;
    std::size_t       fiber = 0;
    std::vector<Perm> theta;

    Perm const& at(std::size_t a, std::size_t b) const {
      return theta[a * base + b];
    }

    static Cocycle constant(std::size_t base, Perm const& p) {
      return {base, p.degree(), std::vector<Perm>(base * base, p)};
    }
  };

  //! (a, s) * (b, t) = (a * b, theta_{a,b}(t)); (a, s) is a * fiber + s.
  inline LeftQuasigroup extension(LeftQuasigroup const& q, Cocycle const& theta) {
    detail::check(theta.base == q.order() && theta.theta.size() == q.order() * q.order(),
                  ErrorKind::SizeMismatch,
                  "cocycle base does not match");
    std::size_t const m = theta.fiber, n = q.order() * m;
    detail::check(n * n <= 10000, ErrorKind::OrderTooLarge, "extension beyond 10000 cells");
    std::vector<LeftQuasigroup::element_type> flat(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t a = x / m, b = y / m, t = y % m;
        flat[x * n + y] = static_cast<LeftQuasigroup::element_type>(
            q.mul(a, b) * m + theta.at(a, b)(t));
      }
    }
    LeftQuasigroup e = LeftQuasigroup::from_flat(n, std::move(flat));
    Partition      lambda = cayley_kernel_relation(e);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        detail::check(e.mul(x, y) / m == q.mul(x / m, y / m)
                          && e.ldiv(x, y) / m == q.ldiv(x / m, y / m),
                      ErrorKind::InternalAssertion,
                      "projection of an extension is not a homomorphism");
        if (x / m == y / m) {
          detail::check(lambda.related(x, y),
                        ErrorKind::InternalAssertion,
                        "projection kernel not below the Cayley kernel");
        }
      }
    }
    return e;
  }

  //! The medial cocycle condition:
  //! theta_{a*b, c*d} theta_{c,d} = theta_{a*c, b*d} theta_{b,d}.
  inline bool satisfies_mc(LeftQuasigroup const& q, Cocycle const& t) {
    std::size_t const n = q.order();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          for (std::size_t d = 0; d < n; ++d) {
            if (t.at(q.mul(a, b), q.mul(c, d)) * t.at(c, d)
                != t.at(q.mul(a, c), q.mul(b, d)) * t.at(b, d)) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  //! Cocycles over q with the given fiber satisfying the medial cocycle condition, by backtracking
  //! over the cells, pruning on every fully assigned instance; at most limit.
  inline std::vector<Cocycle> mc_cocycles(LeftQuasigroup const& q,
                                          std::size_t           fiber,
                                          std::size_t           limit) {
    std::size_t const n = q.order();
    detail::check(n <= 3 && fiber <= 3,
                  ErrorKind::OrderTooLarge,
                  "medial cocycle search limited to base and fiber <= 3");
    std::vector<Perm> sym = symmetric_group(fiber).elements();
    std::sort(sym.begin(), sym.end());
    Cocycle              cur{n, fiber, std::vector<Perm>(n * n, Perm(fiber))};
    std::vector<bool>    set(n * n, false);
    std::vector<Cocycle> out;
    auto consistent = [&]() {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t d = 0; d < n; ++d) {
              std::size_t i1 = q.mul(a, b) * n + q.mul(c, d), i2 = c * n + d;
              std::size_t i3 = q.mul(a, c) * n + q.mul(b, d), i4 = b * n + d;
              if (set[i1] && set[i2] && set[i3] && set[i4]
                  && cur.theta[i1] * cur.theta[i2] != cur.theta[i3] * cur.theta[i4]) {
                return false;
              }
            }
          }
        }
      }
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (out.size() >= limit) {
        return;
      }
      if (i == n * n) {
        out.push_back(cur);
        return;
      }
      for (auto const& p : sym) {
        cur.theta[i] = p;
        set[i]       = true;
        if (consistent()) {
          rec(i + 1);
        }
        set[i] = false;
        if (out.size() >= limit) {
          return;
        }
      }
    };
    rec(0);
    for (auto const& t : out) {
      detail::check(satisfies_mc(q, t) && (!is_medial(q) || is_medial(extension(q, t))),
                    ErrorKind::InternalAssertion,
                    "medial cocycle over a medial base gave a non-medial extension");
    }
    return out;
  }

  //! eps_{a,b} = gamma_{a*b} theta_{a,b} gamma_b^{-1}; asserts that
  //! (a, s) -> (a, gamma_a(s)) is an isomorphism of the extensions.
  inline Cocycle cohomologous(LeftQuasigroup const&    q,
                              Cocycle const&           theta,
                              std::vector<Perm> const& gamma) {
    detail::check(gamma.size() == q.order(), ErrorKind::SizeMismatch, "gamma");
    Cocycle eps = theta;
    for (std::size_t a = 0; a < q.order(); ++a) {
      for (std::size_t b = 0; b < q.order(); ++b) {
        eps.theta[a * q.order() + b]
            = gamma[q.mul(a, b)] * theta.at(a, b) * gamma[b].inverse();
      }
    }
    LeftQuasigroup const e1 = extension(q, theta), e2 = extension(q, eps);
    std::size_t const    m = theta.fiber;
    std::vector<int>     phi(e1.order());
    for (std::size_t x = 0; x < e1.order(); ++x) {
      phi[x] = static_cast<int>((x / m) * m + gamma[x / m](x % m));
    }
    detail::check(relabel(e1, phi) == e2,
                  ErrorKind::InternalAssertion,
                  "cohomologous cocycles give non-isomorphic extensions");
    return eps;
  }

  //! a / u: the unique x with x * u = a; throws NotAQuasigroup otherwise.
  inline std::size_t right_divide(LeftQuasigroup const& q, std::size_t a, std::size_t u) {
    std::optional<std::size_t> found;
    for (std::size_t x = 0; x < q.order(); ++x) {
      if (q.mul(x, u) == a) {
        detail::check(!found, ErrorKind::NotAQuasigroup, "right division is not unique");
        found = x;
      }
    }
    detail::check(found.has_value(), ErrorKind::NotAQuasigroup, "right division undefined");
    return *found;
  }

  //! The u-normalized cocycle with gamma_a = theta_{a/u, u}^{-1}; asserts
  //! eps_{a,u} is constant in a.
  inline Cocycle normalize(LeftQuasigroup const& q, Cocycle const& theta, std::size_t u) {
    detail::check(identities::latin(q), ErrorKind::NotAQuasigroup, "base is not latin");
    std::vector<Perm> gamma;
    for (std::size_t a = 0; a < q.order(); ++a) {
      gamma.push_back(theta.at(right_divide(q, a, u), u).inverse());
    }
    Cocycle eps = cohomologous(q, theta, gamma);
    for (std::size_t a = 0; a < q.order(); ++a) {
      detail::check(eps.at(a, u) == eps.at(0, u),
                    ErrorKind::InternalAssertion,
                    "normalized cocycle not constant on column u");
    }
    return eps;
  }

  // ---------------------------------------------------------------------
  // 2-divisible semimedial left quasigroups and quandles
  // ---------------------------------------------------------------------

  struct QuandleWithAutomorphism {
    LeftQuasigroup quandle;
    Perm           f;
  };

  inline bool is_automorphism(LeftQuasigroup const& q, Perm const& f) {
    if (f.degree() != q.order()) {
      return false;
    }
    for (std::size_t a = 0; a < q.order(); ++a) {
      for (std::size_t b = 0; b < q.order(); ++b) {
        if (f(q.mul(a, b)) != q.mul(f(a), f(b))) {
          return false;
        }
      }
    }
    return true;
  }

  //! x * y = f(x . y); asserted 2-divisible semimedial with squaring map f
  //! and with the same displacement group.
  inline LeftQuasigroup from_quandle(QuandleWithAutomorphism const& p) {
    auto const& q = p.quandle;
    detail::check(is_quandle(q), ErrorKind::InvalidArgument, "not a quandle");
    detail::check(is_automorphism(q, p.f), ErrorKind::NotAutomorphism, p.f.to_string(true));
    std::size_t const                         n = q.order();
    std::vector<LeftQuasigroup::element_type> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        flat[a * n + b] = static_cast<LeftQuasigroup::element_type>(p.f(q.mul(a, b)));
      }
    }
    LeftQuasigroup r = LeftQuasigroup::from_flat(n, std::move(flat));
    detail::check(is_semimedial(r), ErrorKind::InternalAssertion, "image is not semimedial");
    for (std::size_t a = 0; a < n; ++a) {
      detail::check(r.square(a) == p.f(a),
                    ErrorKind::InternalAssertion,
                    "squaring map of the image differs from f");
    }
    detail::check(lmlt_and_dis(r).dis == lmlt_and_dis(q).dis,
                  ErrorKind::InternalAssertion,
                  "displacement group not preserved");
    return r;
  }

  //! x . y = s^{-1}(x * y) with f = s.
  inline QuandleWithAutomorphism to_quandle(LeftQuasigroup const& q) {
    auto const s = squaring_profile(q);
    detail::check(s.bijective && is_semimedial(q),
                  ErrorKind::Not2DivisibleSemimedial,
                  q.to_string());
    Perm const                                f    = Perm::from_images(s.map);
    Perm const                                finv = f.inverse();
    std::size_t const                         n    = q.order();
    std::vector<LeftQuasigroup::element_type> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        flat[a * n + b] = static_cast<LeftQuasigroup::element_type>(finv(q.mul(a, b)));
      }
    }
    QuandleWithAutomorphism p{LeftQuasigroup::from_flat(n, std::move(flat)), f};
    detail::check(is_quandle(p.quandle) && is_automorphism(p.quandle, f),
                  ErrorKind::InternalAssertion,
                  "associated quandle is not a quandle with automorphism s");
    return p;
  }

  // ---------------------------------------------------------------------
  // Connected medial racks
  // ---------------------------------------------------------------------

  inline constexpr std::size_t kMaxClassifyOrder = 12;

  struct MedialRackConstruction {
    AbelianGroup     group;
    std::vector<int> f;       // automorphism with 1 - f bijective
    std::size_t      cyclic;  // order of the (Z_k, +1) factor
    LeftQuasigroup   rack;
  };

  //! Every Aff(A, 1-f, f, 0) x (Z_{n/|A|}, +1), one per isomorphism class,
  //! in construction order.
  inline std::vector<MedialRackConstruction> connected_medial_rack_constructions(std::size_t n) {
    detail::check(n >= 1 && n <= kMaxClassifyOrder,
                  ErrorKind::OrderTooLarge,
                  "classification limited to n <= " + std::to_string(kMaxClassifyOrder));
    std::vector<MedialRackConstruction> out;
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) {
        continue;
      }
      for (auto const& a : abelian_groups_of_order(d)) {
        for (auto const& f : automorphisms(a)) {
          std::vector<int> one_minus_f(a.order());
          for (std::size_t x = 0; x < a.order(); ++x) {
            one_minus_f[x] = static_cast<int>(a.sub(x, static_cast<std::size_t>(f[x])));
          }
          if (!is_bijective(one_minus_f)) {
            continue;
          }
          LeftQuasigroup r = direct_product(affine({a, one_minus_f, f, 0}),
                                            cyclic_permutation(n / d));
          detail::check(is_rack(r) && is_medial(r) && connectivity(r, true).is_connected,
                        ErrorKind::InternalAssertion,
                        "constructed rack is not a connected medial rack");
          bool const seen = std::any_of(out.begin(), out.end(), [&](auto const& m) {
            return is_isomorphic(m.rack, r);
          });
          if (!seen) {
            out.push_back({a, f, n / d, std::move(r)});
          }
        }
      }
    }
    return out;
  }

  inline std::vector<LeftQuasigroup> classify_connected_medial_racks(std::size_t n) {
    std::vector<LeftQuasigroup> out;
    for (auto& c : connected_medial_rack_constructions(n)) {
      out.push_back(std::move(c.rack));
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // Mal'tsev term for multipotent left quasigroups
  // ---------------------------------------------------------------------

  struct MaltsevResult {
    std::size_t      multipotency_class = 0;
    std::size_t      factors            = 0;  // length of the product P_y
    std::vector<int> table;                   // m(x, y, z) at (x * n + y) * n + z
    bool             literal_formula_holds = false;  // with one factor fewer

    std::size_t at(std::size_t n, std::size_t x, std::size_t y, std::size_t z) const {
      return static_cast<std::size_t>(table[(x * n + y) * n + z]);
    }
  };

  namespace detail {
    //! P_y = L_{s^{k-1}(y)} ... L_{s(y)} L_y.
    inline Perm squaring_product(LeftQuasigroup const& q, std::size_t y, std::size_t k) {
      Perm        p(q.order());
      std::size_t cur = y;
      for (std::size_t i = 0; i < k; ++i) {
        p   = q.left(cur) * p;
        cur = q.square(cur);
      }
      return p;
    }

    inline std::vector<int> maltsev_table(LeftQuasigroup const& q, std::size_t k) {
      std::size_t const n = q.order();
      std::vector<Perm> p;
      for (std::size_t y = 0; y < n; ++y) {
        p.push_back(squaring_product(q, y, k));
      }
      std::vector<int> t(n * n * n);
      for (std::size_t x = 0; x < n; ++x) {
        Perm const pxi = p[x].inverse();
        for (std::size_t y = 0; y < n; ++y) {
          for (std::size_t z = 0; z < n; ++z) {
            t[(x * n + y) * n + z] = static_cast<int>(pxi(p[y](z)));
          }
        }
      }
      return t;
    }

    inline std::optional<std::string> maltsev_witness(std::size_t             n,
                                                      std::vector<int> const& t) {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          if (static_cast<std::size_t>(t[(x * n + y) * n + y]) != x) {
            return "m(" + std::to_string(x + 1) + "," + std::to_string(y + 1) + ","
                   + std::to_string(y + 1) + ")";
          }
          if (static_cast<std::size_t>(t[(y * n + y) * n + x]) != x) {
            return "m(" + std::to_string(y + 1) + "," + std::to_string(y + 1) + ","
                   + std::to_string(x + 1) + ")";
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace detail

  //! For k-multipotent Q: m(x, y, z) = P_x^{-1} P_y(z) where P_y is the
  //! product of k translations L_{s^i(y)}; then m(x, y, y) = x = m(y, y, x).
  //! The one-factor-shorter product that would make m trivial for k = 1 is
  //! also evaluated and reported. nullopt if Q is not multipotent.
  inline std::optional<MaltsevResult> maltsev_check(LeftQuasigroup const& q) {
    auto const s = squaring_profile(q);
    if (!s.multipotency_class) {
      return std::nullopt;
    }
    MaltsevResult r;
    r.multipotency_class = *s.multipotency_class;
    r.factors            = std::max<std::size_t>(r.multipotency_class, 1);
    r.table              = detail::maltsev_table(q, r.factors);
    if (auto w = detail::maltsev_witness(q.order(), r.table)) {
      detail::raise(ErrorKind::MaltsevIdentityFails, q.to_string() + " at " + *w);
    }
    r.literal_formula_holds
        = !detail::maltsev_witness(q.order(), detail::maltsev_table(q, r.factors - 1));
    return r;
  }

  // ---------------------------------------------------------------------
  // Spelling property
  // ---------------------------------------------------------------------

  //! A word over x, X = x^{-1}, y, Y = y^{-1}, read as a composition left
  //! to right.
  struct TwoLetterWord {
    std::string letters;

    Perm evaluate(Perm const& lx, Perm const& ly) const {
      Perm h(lx.degree());
      for (char c : letters) {
        switch (c) {
          case 'x': h = h * lx; break;
          case 'X': h = h * lx.inverse(); break;
          case 'y': h = h * ly; break;
          case 'Y': h = h * ly.inverse(); break;
          default: detail::raise(ErrorKind::InvalidArgument, "bad letter");
        }
      }
      return h;
    }

    //! "x y X" style with inverses written as x^-1.
    std::string to_string() const {
      if (letters.empty()) {
        return "1";
      }
      std::string s;
      for (char c : letters) {
        s += c == 'X' ? "x^-1" : c == 'Y' ? "y^-1" : std::string(1, c);
      }
      return s;
    }

    bool operator==(TwoLetterWord const&) const = default;
  };

  struct SpellingWitness {
    TwoLetterWord plus;   // L_{x*y}
    TwoLetterWord minus;  // L_{x\y}
  };

  inline bool satisfies_spelling(LeftQuasigroup const& q,
                                 TwoLetterWord const&  w,
                                 bool                  plus) {
    for (std::size_t x = 0; x < q.order(); ++x) {
      for (std::size_t y = 0; y < q.order(); ++y) {
        Perm target = q.left(plus ? q.mul(x, y) : q.ldiv(x, y));
        if (w.evaluate(q.left(x), q.left(y)) != target) {
          return false;
        }
      }
    }
    return true;
  }

  inline constexpr std::size_t kDefaultSpellingLength = 8;

  //! Breadth-first search over reduced words of length <= max_len; the
  //! first (shortest, then x < X < y < Y) word for each side is returned.
  //! Words inducing the same tuple of permutations over all (x, y) are
  //! explored once. When a witness is found, Sg(a) = {L_a^k(a)} and c_N is
  //! a congruence for every normal N of LMlt(Q) are asserted.
  inline std::optional<SpellingWitness> spelling_search(
      LeftQuasigroup const& q,
      std::size_t           max_len = kDefaultSpellingLength) {
    detail::check(max_len >= 1, ErrorKind::InvalidArgument, "max_len must be >= 1");
    std::size_t const n = q.order(), pairs = n * n;
    PermGroup const   g = lmlt(q);
    std::unordered_map<Perm, int, PermHash> index;
    for (std::size_t i = 0; i < g.order(); ++i) {
      index.emplace(g.elements()[i], static_cast<int>(i));
    }
    auto const idx = [&](Perm const& p) { return index.at(p); };
    // step[letter][i * n + a]: index of element_i * L_a^{±1}
    std::vector<std::vector<int>> step(2, std::vector<int>(g.order() * n));
    for (std::size_t i = 0; i < g.order(); ++i) {
      for (std::size_t a = 0; a < n; ++a) {
        step[0][i * n + a] = idx(g.elements()[i] * q.left(a));
        step[1][i * n + a] = idx(g.elements()[i] * q.left_inverse(a));
      }
    }
    std::vector<int> tplus(pairs), tminus(pairs);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        tplus[x * n + y]  = idx(q.left(q.mul(x, y)));
        tminus[x * n + y] = idx(q.left(q.ldiv(x, y)));
      }
    }
    struct Node {
      std::string      word;
      std::vector<int> state;
    };
    std::vector<int> start(pairs, idx(Perm(n)));
    std::set<std::vector<int>> seen{start};
    std::vector<Node>          layer{{"", start}};
    std::optional<TwoLetterWord> plus, minus;
    auto consider = [&](Node const& node) {
      if (!plus && node.state == tplus) {
        plus = TwoLetterWord{node.word};
      }
      if (!minus && node.state == tminus) {
        minus = TwoLetterWord{node.word};
      }
    };
    consider(layer.front());
    static constexpr char kLetters[] = {'x', 'X', 'y', 'Y'};
    for (std::size_t len = 1; len <= max_len && !(plus && minus); ++len) {
      std::vector<Node> next;
      for (auto const& node : layer) {
        for (char c : kLetters) {
          if (!node.word.empty()) {
            char last = node.word.back();
            if ((last ^ c) == ('x' ^ 'X')) {
              continue;  // x X, X x, y Y, Y y cancel
            }
          }
          std::vector<int> st(pairs);
          int const        inv = (c == 'X' || c == 'Y') ? 1 : 0;
          bool const       onx = c == 'x' || c == 'X';
          for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
              std::size_t const k = x * n + y;
              st[k] = step[inv][static_cast<std::size_t>(node.state[k]) * n + (onx ? x : y)];
            }
          }
          if (seen.insert(st).second) {
            next.push_back({node.word + c, std::move(st)});
            consider(next.back());
          }
        }
      }
      layer = std::move(next);
      if (layer.empty()) {
        break;
      }
    }
    if (!plus || !minus) {
      return std::nullopt;
    }
    SpellingWitness w{*plus, *minus};
    detail::check(satisfies_spelling(q, w.plus, true) && satisfies_spelling(q, w.minus, false),
                  ErrorKind::InternalAssertion,
                  "spelling witness does not verify");
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<int> orbit;
      Perm const       la = q.left(a);
      std::size_t      x  = a;
      do {
        orbit.push_back(static_cast<int>(x));
        x = la(x);
      } while (x != a);
      std::sort(orbit.begin(), orbit.end());
      detail::check(subalgebra_generate(q, {static_cast<int>(a)}) == orbit,
                    ErrorKind::InternalAssertion,
                    "Sg(a) differs from the L_a-orbit of a");
    }
    for (auto const& nrm : normal_subgroups(g)) {
      detail::check(is_compatible(q, c_relation_unchecked(q, nrm)),
                    ErrorKind::InternalAssertion,
                    "c_N is not a congruence for a normal subgroup");
    }
    return w;
  }

}  // namespace lqg
