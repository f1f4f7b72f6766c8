#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace lqg {

  namespace detail {
    //! Plain union-find over {0..n-1}; used for every equivalence closure.
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0u);
      }

      std::size_t find(std::size_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      //! Returns true if the two classes were distinct.
      bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (a < b) {
          std::swap(a, b);
        }
        _parent[a] = b;
        return true;
      }

      std::size_t size() const noexcept {
        return _parent.size();
      }

     private:
      std::vector<std::size_t> _parent;
    };
  }  // namespace detail

  //! An equivalence relation on {0..n-1} stored as canonical block ids:
  //! blocks are numbered in order of their first element.
  class Partition {
   public:
    Partition() = default;

    static Partition discrete(std::size_t n) {
      std::vector<int> ids(n);
      std::iota(ids.begin(), ids.end(), 0);
      return Partition(std::move(ids));
    }

    static Partition full(std::size_t n) {
      return Partition(std::vector<int>(n, 0));
    }

    //! Any labelling works; labels are renumbered to canonical form.
    static Partition from_labels(std::span<int const> labels) {
      return Partition(std::vector<int>(labels.begin(), labels.end()));
    }

    static Partition from_uf(detail::UnionFind& uf) {
      std::vector<int> ids(uf.size());
      for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = static_cast<int>(uf.find(i));
      }
      return Partition(std::move(ids));
    }

    //! Smallest equivalence containing the given pairs.
    static Partition from_pairs(std::size_t                              n,
                                std::span<std::pair<int, int> const> pairs) {
      detail::UnionFind uf(n);
      for (auto [a, b] : pairs) {
        uf.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      }
      return from_uf(uf);
    }

    static Partition from_blocks(std::size_t                          n,
                                 std::vector<std::vector<int>> const& blocks) {
      detail::UnionFind uf(n);
      for (auto const& b : blocks) {
        for (std::size_t i = 1; i < b.size(); ++i) {
          uf.unite(static_cast<std::size_t>(b[0]),
                   static_cast<std::size_t>(b[i]));
        }
      }
      return from_uf(uf);
    }

    std::size_t size() const noexcept {
      return _ids.size();
    }

    std::size_t number_of_blocks() const noexcept {
      return _blocks;
    }

    int block_of(std::size_t i) const {
      return _ids[i];
    }

    std::vector<int> const& block_ids() const noexcept {
      return _ids;
    }

    bool related(std::size_t a, std::size_t b) const {
      return _ids[a] == _ids[b];
    }

    bool is_discrete() const noexcept {
      return _blocks == _ids.size();
    }

    bool is_full() const noexcept {
      return _blocks <= 1;
    }

    std::vector<std::vector<int>> blocks() const {
      std::vector<std::vector<int>> out(_blocks);
      for (std::size_t i = 0; i < _ids.size(); ++i) {
        out[_ids[i]].push_back(static_cast<int>(i));
      }
      return out;
    }

    //! All related pairs (a, b) with a != b.
    std::vector<std::pair<int, int>> pairs() const {
      std::vector<std::pair<int, int>> out;
      for (std::size_t a = 0; a < _ids.size(); ++a) {
        for (std::size_t b = 0; b < _ids.size(); ++b) {
          if (a != b && _ids[a] == _ids[b]) {
            out.emplace_back(static_cast<int>(a), static_cast<int>(b));
          }
        }
      }
      return out;
    }

    //! Refinement order: this <= other iff every block of this lies in a
    //! block of other.
    bool leq(Partition const& other) const {
      check_size(other);
      std::vector<int> image(_blocks, -1);
      for (std::size_t i = 0; i < _ids.size(); ++i) {
        int& slot = image[_ids[i]];
        if (slot == -1) {
          slot = other._ids[i];
        } else if (slot != other._ids[i]) {
          return false;
        }
      }
      return true;
    }

    Partition meet(Partition const& other) const {
      check_size(other);
      std::vector<int> ids(_ids.size());
      for (std::size_t i = 0; i < ids.size(); ++i) {
        ids[i] = _ids[i] * static_cast<int>(other._blocks + 1) + other._ids[i];
      }
      return Partition(std::move(ids));
    }

    Partition join(Partition const& other) const {
      check_size(other);
      detail::UnionFind uf(_ids.size());
      std::vector<int>  first(_blocks, -1), first_other(other._blocks, -1);
      for (std::size_t i = 0; i < _ids.size(); ++i) {
        if (first[_ids[i]] == -1) {
          first[_ids[i]] = static_cast<int>(i);
        } else {
          uf.unite(static_cast<std::size_t>(first[_ids[i]]), i);
        }
        if (first_other[other._ids[i]] == -1) {
          first_other[other._ids[i]] = static_cast<int>(i);
        } else {
          uf.unite(static_cast<std::size_t>(first_other[other._ids[i]]), i);
        }
      }
      return from_uf(uf);
    }

    //! Relational composition this ∘ other as a set of pairs: (a, c) with
    //! a this b other c for some b.
    std::vector<std::vector<bool>> compose(Partition const& other) const {
      check_size(other);
      std::size_t const              n = _ids.size();
      std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (!related(a, b)) {
            continue;
          }
          for (std::size_t c = 0; c < n; ++c) {
            if (other.related(b, c)) {
              rel[a][c] = true;
            }
          }
        }
      }
      return rel;
    }

    //! Blocks written as {{1,3},{2},{4}}; 1-based when requested.
    std::string to_string(bool one_based = false) const {
      std::string s = "{";
      auto        bs = blocks();
      for (std::size_t k = 0; k < bs.size(); ++k) {
        s += k ? ",{" : "{";
        for (std::size_t j = 0; j < bs[k].size(); ++j) {
          if (j) {
            s += ",";
          }
          s += std::to_string(bs[k][j] + (one_based ? 1 : 0));
        }
        s += "}";
      }
      return s + "}";
    }

    friend bool operator==(Partition const&, Partition const&) = default;

    friend auto operator<=>(Partition const& a, Partition const& b) {
      return a._ids <=> b._ids;
    }

   private:
    explicit Partition(std::vector<int> ids) : _ids(std::move(ids)) {
      canonicalize();
    }

    void canonicalize() {
      std::vector<std::pair<int, int>> relabel;
      int                              next = 0;
      for (auto& id : _ids) {
        auto it = std::find_if(relabel.begin(), relabel.end(), [id](auto p) {
          return p.first == id;
        });
        if (it == relabel.end()) {
          relabel.emplace_back(id, next);
          id = next++;
        } else {
          id = it->second;
        }
      }
      _blocks = static_cast<std::size_t>(next);
    }

    void check_size(Partition const& other) const {
      detail::check(other.size() == size(),
                    ErrorKind::SizeMismatch,
                    "partitions of different sets");
    }

    std::vector<int> _ids;
    std::size_t      _blocks = 0;
  };

  //! Every partition of {0..n-1} as restricted growth strings.
  inline std::vector<Partition> all_partitions(std::size_t n) {
    std::vector<Partition> out;
    std::vector<int>       rgs(n, 0);
    auto                   rec = [&](auto& self, std::size_t i, int maxv) -> void {
      if (i == n) {
        out.push_back(Partition::from_labels(rgs));
        return;
      }
      for (int v = 0; v <= maxv + 1; ++v) {
        rgs[i] = v;
        self(self, i + 1, std::max(maxv, v));
      }
    };
    if (n == 0) {
      out.push_back(Partition::discrete(0));
      return out;
    }
    rgs[0] = 0;
    rec(rec, 1, 0);
    return out;
  }

}  // namespace lqg
