#pragma once

// Isomorphisms, automorphism groups and canonical forms of Cayley tables.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "left_quasigroup.hpp"
#include "perm.hpp"

namespace lqg {

  //! Backtracking isomorphism tests are capped at this order (the medial
  //! rack classifier needs orders up to 12).
  inline constexpr std::size_t kMaxIsoOrder = 12;

  namespace detail {

    //! Per-element isomorphism invariants.
    inline std::vector<std::vector<int>> element_invariants(LeftQuasigroup const& q) {
      std::size_t const             n = q.order();
      std::vector<std::vector<int>> inv(n);
      for (std::size_t a = 0; a < n; ++a) {
        auto& v = inv[a];
        v.push_back(q.square(a) == a);
        auto ct = q.left(a).cycle_type();
        v.push_back(static_cast<int>(ct.size()));
        v.insert(v.end(), ct.begin(), ct.end());
        int right_fix = 0, roots = 0, col = 0;
        for (std::size_t x = 0; x < n; ++x) {
          right_fix += q.mul(x, a) == a;
          roots += q.square(x) == a;
          col += q.mul(x, a) == q.mul(0, a);
        }
        std::vector<bool> seen(n, false);
        int               distinct_col = 0;
        for (std::size_t x = 0; x < n; ++x) {
          if (!seen[q.mul(x, a)]) {
            seen[q.mul(x, a)] = true;
            ++distinct_col;
          }
        }
        v.push_back(right_fix);
        v.push_back(roots);
        v.push_back(distinct_col);
        // length of the s-orbit tail and cycle through a
        std::size_t x = a, steps = 0;
        std::vector<int> visit(n, -1);
        while (visit[x] == -1) {
          visit[x] = static_cast<int>(steps++);
          x        = q.square(x);
        }
        v.push_back(static_cast<int>(steps));
        v.push_back(visit[x]);
        (void) col;
      }
      return inv;
    }

    class IsoSearch {
     public:
      IsoSearch(LeftQuasigroup const& a, LeftQuasigroup const& b)
          : _a(a),
            _b(b),
            _n(a.order()),
            _phi(_n, -1),
            _inv(_n, -1),
            _ia(element_invariants(a)),
            _ib(element_invariants(b)) {}

      //! Calls f(phi) for every isomorphism; f returns false to stop.
      template <typename F>
      void run(F&& f) {
        std::vector<std::vector<int>> sa = _ia, sb = _ib;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) {
          return;
        }
        _stop = false;
        search(f);
      }

     private:
      template <typename F>
      void search(F& f) {
        std::size_t a = 0;
        while (a < _n && _phi[a] != -1) {
          ++a;
        }
        if (a == _n) {
          if (!f(_phi)) {
            _stop = true;
          }
          return;
        }
        for (std::size_t b = 0; b < _n && !_stop; ++b) {
          if (_inv[b] != -1 || _ia[a] != _ib[b]) {
            continue;
          }
          std::size_t mark = _trail.size();
          if (assign(a, b)) {
            search(f);
          }
          undo(mark);
        }
      }

      bool set(std::size_t x, std::size_t y) {
        if (_phi[x] != -1) {
          return static_cast<std::size_t>(_phi[x]) == y;
        }
        if (_inv[y] != -1 || _ia[x] != _ib[y]) {
          return false;
        }
        _phi[x] = static_cast<int>(y);
        _inv[y] = static_cast<int>(x);
        _trail.push_back(x);
        _queue.push_back(x);
        return true;
      }

      bool assign(std::size_t a, std::size_t b) {
        _queue.clear();
        if (!set(a, b)) {
          return false;
        }
        while (!_queue.empty()) {
          std::size_t x = _queue.back();
          _queue.pop_back();
          auto const px = static_cast<std::size_t>(_phi[x]);
          if (!set(_a.square(x), _b.square(px))) {
            return false;
          }
          for (std::size_t k = 0; k < _trail.size(); ++k) {
            std::size_t y  = _trail[k];
            auto const  py = static_cast<std::size_t>(_phi[y]);
            if (!set(_a.mul(x, y), _b.mul(px, py))
                || !set(_a.mul(y, x), _b.mul(py, px))
                || !set(_a.ldiv(x, y), _b.ldiv(px, py))
                || !set(_a.ldiv(y, x), _b.ldiv(py, px))) {
              return false;
            }
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          std::size_t x = _trail.back();
          _trail.pop_back();
          _inv[static_cast<std::size_t>(_phi[x])] = -1;
          _phi[x]                                  = -1;
        }
      }

      LeftQuasigroup const&         _a;
      LeftQuasigroup const&         _b;
      std::size_t                   _n;
      std::vector<int>              _phi, _inv;
      std::vector<std::vector<int>> _ia, _ib;
      std::vector<std::size_t>      _trail, _queue;
      bool                          _stop = false;
    };

    inline void check_iso_order(std::size_t n) {
      check(n <= kMaxIsoOrder,
            ErrorKind::OrderTooLarge,
            "isomorphism test limited to order " + std::to_string(kMaxIsoOrder));
    }
  }  // namespace detail

  //! A bijection phi with phi(a * b) = phi(a) * phi(b), or nullopt.
  inline std::optional<std::vector<int>> find_isomorphism(LeftQuasigroup const& a,
                                                          LeftQuasigroup const& b) {
    if (a.order() != b.order()) {
      return std::nullopt;
    }
    detail::check_iso_order(a.order());
    std::optional<std::vector<int>> out;
    detail::IsoSearch(a, b).run([&](std::vector<int> const& phi) {
      out = phi;
      return false;
    });
    return out;
  }

  inline bool is_isomorphic(LeftQuasigroup const& a, LeftQuasigroup const& b) {
    return find_isomorphism(a, b).has_value();
  }

  inline std::vector<Perm> automorphisms(LeftQuasigroup const& q) {
    detail::check_iso_order(q.order());
    std::vector<Perm> out;
    detail::IsoSearch(q, q).run([&](std::vector<int> const& phi) {
      out.push_back(Perm::from_images(phi));
      return true;
    });
    return out;
  }

  inline PermGroup automorphism_group(LeftQuasigroup const& q) {
    auto      all = automorphisms(q);
    PermGroup g   = PermGroup::generate(q.order(), all);
    detail::check(g.order() == all.size(),
                  ErrorKind::InternalAssertion,
                  "automorphisms do not form a group");
    return g;
  }

  struct IsoResult {
    std::optional<std::vector<int>> isomorphism;
    std::optional<PermGroup>        automorphisms;  // set when q1 == q2
  };

  inline IsoResult iso_and_aut(LeftQuasigroup const& q1, LeftQuasigroup const& q2) {
    IsoResult r;
    r.isomorphism = find_isomorphism(q1, q2);
    if (q1 == q2) {
      r.automorphisms = automorphism_group(q1);
    }
    return r;
  }

  //! The table relabelled by phi: (phi . Q)(phi a, phi b) = phi(a * b).
  inline LeftQuasigroup relabel(LeftQuasigroup const& q, std::vector<int> const& phi) {
    std::size_t const                         n = q.order();
    std::vector<LeftQuasigroup::element_type> flat(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        flat[static_cast<std::size_t>(phi[a]) * n + static_cast<std::size_t>(phi[b])]
            = static_cast<LeftQuasigroup::element_type>(phi[q.mul(a, b)]);
      }
    }
    return LeftQuasigroup::from_flat(n, std::move(flat));
  }

  inline constexpr std::size_t kMaxCanonicalOrder = 8;

  //! Lexicographically least relabelling of q over all n! bijections.
  inline LeftQuasigroup canonical_form(LeftQuasigroup const& q) {
    std::size_t const n = q.order();
    detail::check(n <= kMaxCanonicalOrder,
                  ErrorKind::OrderTooLarge,
                  "canonical form limited to order "
                      + std::to_string(kMaxCanonicalOrder));
    std::vector<LeftQuasigroup::element_type> best = q.table(), cur(n * n);
    std::vector<int>                          psi(n);  // psi = phi^{-1}
    std::vector<int>                          phi(n);
    std::iota(psi.begin(), psi.end(), 0);
    do {
      for (std::size_t i = 0; i < n; ++i) {
        phi[static_cast<std::size_t>(psi[i])] = static_cast<int>(i);
      }
      // Compare cell by cell, aborting as soon as cur exceeds best.
      bool smaller = false, abort = false;
      for (std::size_t i = 0; i < n && !abort; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          auto v = static_cast<LeftQuasigroup::element_type>(
              phi[q.mul(static_cast<std::size_t>(psi[i]), static_cast<std::size_t>(psi[j]))]);
          cur[i * n + j] = v;
          if (!smaller) {
            if (v > best[i * n + j]) {
              abort = true;
              break;
            }
            if (v < best[i * n + j]) {
              smaller = true;
            }
          }
        }
      }
      if (smaller && !abort) {
        best = cur;
      }
    } while (std::next_permutation(psi.begin(), psi.end()));
    return LeftQuasigroup::from_flat(n, std::move(best));
  }

}  // namespace lqg
