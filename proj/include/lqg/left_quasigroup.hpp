#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "perm.hpp"

namespace lqg {

  inline constexpr std::size_t kMaxOrder = 255;

  //! A finite left quasigroup given by its Cayley table. Elements are
  //! 0..n-1; mul(a, b) = a * b and ldiv(a, b) = a \ b.
  class LeftQuasigroup {
   public:
    using element_type = std::uint8_t;

    LeftQuasigroup() = default;

    //! Validates that every row is a permutation; throws NotLeftQuasigroup
    //! with the offending (0-based) row index.
    static LeftQuasigroup from_table(std::vector<std::vector<int>> const& rows) {
      std::size_t const n = rows.size();
      detail::check(n >= 1, ErrorKind::InvalidArgument, "empty table");
      detail::check(n <= kMaxOrder,
                    ErrorKind::OrderTooLarge,
                    "order " + std::to_string(n) + " exceeds "
                        + std::to_string(kMaxOrder));
      std::vector<element_type> flat(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        detail::check(rows[a].size() == n,
                      ErrorKind::InvalidArgument,
                      "row " + std::to_string(a) + " has "
                          + std::to_string(rows[a].size()) + " entries");
        for (std::size_t b = 0; b < n; ++b) {
          int v = rows[a][b];
          detail::check(v >= 0 && static_cast<std::size_t>(v) < n,
                        ErrorKind::InvalidArgument,
                        "entry out of range in row " + std::to_string(a));
          flat[a * n + b] = static_cast<element_type>(v);
        }
      }
      return from_flat(n, std::move(flat));
    }

    //! Row-major table of length n*n.
    static LeftQuasigroup from_flat(std::size_t n, std::vector<element_type> flat) {
      detail::check(flat.size() == n * n,
                    ErrorKind::SizeMismatch,
                    "flat table size does not match order");
      LeftQuasigroup q;
      q._n    = n;
      q._mul  = std::move(flat);
      q._ldiv.assign(n * n, 0);
      for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> seen(n, false);
        for (std::size_t b = 0; b < n; ++b) {
          auto v = q._mul[a * n + b];
          if (v >= n || seen[v]) {
            detail::raise(ErrorKind::NotLeftQuasigroup,
                          "row " + std::to_string(a));
          }
          seen[v]               = true;
          q._ldiv[a * n + v] = static_cast<element_type>(b);
        }
      }
      return q;
    }

    std::size_t order() const noexcept {
      return _n;
    }

    std::size_t mul(std::size_t a, std::size_t b) const noexcept {
      return _mul[a * _n + b];
    }

    std::size_t ldiv(std::size_t a, std::size_t b) const noexcept {
      return _ldiv[a * _n + b];
    }

    std::size_t square(std::size_t a) const noexcept {
      return mul(a, a);
    }

    //! L_a : b -> a * b.
    Perm left(std::size_t a) const {
      return Perm::from_images(
          std::span<element_type const>(_mul.data() + a * _n, _n));
    }

    Perm left_inverse(std::size_t a) const {
      return Perm::from_images(
          std::span<element_type const>(_ldiv.data() + a * _n, _n));
    }

    std::vector<Perm> left_translations() const {
      std::vector<Perm> out;
      out.reserve(_n);
      for (std::size_t a = 0; a < _n; ++a) {
        out.push_back(left(a));
      }
      return out;
    }

    std::vector<element_type> const& table() const noexcept {
      return _mul;
    }

    std::vector<element_type> const& ldiv_table() const noexcept {
      return _ldiv;
    }

    std::vector<std::vector<int>> rows() const {
      std::vector<std::vector<int>> out(_n, std::vector<int>(_n));
      for (std::size_t a = 0; a < _n; ++a) {
        for (std::size_t b = 0; b < _n; ++b) {
          out[a][b] = static_cast<int>(mul(a, b));
        }
      }
      return out;
    }

    //! Rows joined by '|' with 1-based entries, e.g. "2 1 3 4|1 2 4 3|...".
    std::string to_string() const {
      std::string s;
      for (std::size_t a = 0; a < _n; ++a) {
        if (a) {
          s += '|';
        }
        for (std::size_t b = 0; b < _n; ++b) {
          if (b) {
            s += ' ';
          }
          s += std::to_string(mul(a, b) + 1);
        }
      }
      return s;
    }

    friend bool operator==(LeftQuasigroup const& a, LeftQuasigroup const& b) {
      return a._n == b._n && a._mul == b._mul;
    }

    friend auto operator<=>(LeftQuasigroup const& a, LeftQuasigroup const& b) {
      if (auto c = a._n <=> b._n; c != 0) {
        return c;
      }
      return a._mul <=> b._mul;
    }

   private:
    std::size_t               _n = 0;
    std::vector<element_type> _mul;
    std::vector<element_type> _ldiv;
  };

  inline LeftQuasigroup from_table(std::vector<std::vector<int>> const& rows) {
    return LeftQuasigroup::from_table(rows);
  }

  //! Shared small instances, 0-based.
  namespace fixtures {
    inline LeftQuasigroup P4() {
      return from_table({{1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 2, 3}, {2, 3, 1, 0}});
    }
    inline LeftQuasigroup R3() {
      return from_table({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}});
    }
    inline LeftQuasigroup C3() {
      return from_table({{1, 2, 0}, {1, 2, 0}, {1, 2, 0}});
    }
    inline LeftQuasigroup Z2() {
      return from_table({{0, 1}, {1, 0}});
    }
    inline LeftQuasigroup Proj2() {
      return from_table({{0, 1}, {0, 1}});
    }
    inline LeftQuasigroup trivial() {
      return from_table({{0}});
    }
  }  // namespace fixtures

}  // namespace lqg
