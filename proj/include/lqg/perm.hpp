#pragma once

// Permutations of {0..n-1} and finite permutation groups held as complete
// element sets. Composition is functional: (p * q)(x) = p(q(x)).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "error.hpp"
#include "partition.hpp"

namespace lqg {

  inline constexpr std::size_t kMaxDegree = 32;

  //! Group materialization cap; LQG_CAP overrides the default of 200000.
  inline std::size_t default_cap() {
    if (char const* env = std::getenv("LQG_CAP")) {
      char*              end = nullptr;
      unsigned long long v   = std::strtoull(env, &end, 10);
      if (end != env && v > 0) {
        return static_cast<std::size_t>(v);
      }
    }
    return 200000;
  }

  class Perm {
   public:
    using point_type = std::uint8_t;

    Perm() = default;

    //! The identity of the given degree.
    explicit Perm(std::size_t degree) : _degree(narrow(degree)) {
      for (std::size_t i = 0; i < degree; ++i) {
        _img[i] = static_cast<point_type>(i);
      }
    }

    template <typename Int>
    static Perm from_images(std::span<Int const> images) {
      Perm p;
      p._degree = narrow(images.size());
      std::array<bool, kMaxDegree> seen{};
      for (std::size_t i = 0; i < images.size(); ++i) {
        auto v = static_cast<long long>(images[i]);
        detail::check(v >= 0 && static_cast<std::size_t>(v) < images.size()
                          && !seen[static_cast<std::size_t>(v)],
                      ErrorKind::InvalidArgument,
                      "image list is not a bijection");
        seen[static_cast<std::size_t>(v)] = true;
        p._img[i]                         = static_cast<point_type>(v);
      }
      return p;
    }

    static Perm from_images(std::vector<int> const& images) {
      return from_images(std::span<int const>(images));
    }

    //! Product of disjoint or overlapping cycles, applied right to left.
    static Perm from_cycles(std::size_t                          degree,
                            std::vector<std::vector<int>> const& cycles) {
      Perm result(degree);
      for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        Perm c(degree);
        for (std::size_t j = 0; j < it->size(); ++j) {
          c._img[static_cast<std::size_t>((*it)[j])]
              = static_cast<point_type>((*it)[(j + 1) % it->size()]);
        }
        result = c * result;
      }
      return result;
    }

    std::size_t degree() const noexcept {
      return _degree;
    }

    std::size_t operator()(std::size_t i) const noexcept {
      return _img[i];
    }

    std::size_t operator[](std::size_t i) const noexcept {
      return _img[i];
    }

    bool is_identity() const noexcept {
      for (std::size_t i = 0; i < _degree; ++i) {
        if (_img[i] != i) {
          return false;
        }
      }
      return true;
    }

    Perm inverse() const {
      Perm q;
      q._degree = _degree;
      for (std::size_t i = 0; i < _degree; ++i) {
        q._img[_img[i]] = static_cast<point_type>(i);
      }
      return q;
    }

    friend Perm operator*(Perm const& p, Perm const& q) {
      detail::check(p._degree == q._degree,
                    ErrorKind::DegreeMismatch,
                    "composing permutations of different degree");
      Perm r;
      r._degree = p._degree;
      for (std::size_t i = 0; i < p._degree; ++i) {
        r._img[i] = p._img[q._img[i]];
      }
      return r;
    }

    Perm pow(long long k) const {
      Perm base = k < 0 ? inverse() : *this;
      Perm r(_degree);
      for (long long e = k < 0 ? -k : k; e > 0; --e) {
        r = base * r;
      }
      return r;
    }

    std::vector<int> images() const {
      return std::vector<int>(_img.begin(), _img.begin() + _degree);
    }

    std::size_t fixed_points() const noexcept {
      std::size_t c = 0;
      for (std::size_t i = 0; i < _degree; ++i) {
        c += _img[i] == i;
      }
      return c;
    }

    //! Sorted multiset of cycle lengths.
    std::vector<int> cycle_type() const {
      std::vector<int>             out;
      std::array<bool, kMaxDegree> seen{};
      for (std::size_t i = 0; i < _degree; ++i) {
        if (seen[i]) {
          continue;
        }
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = _img[j]) {
          seen[j] = true;
          ++len;
        }
        out.push_back(len);
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    std::string to_string(bool one_based = false) const {
      std::string                  s;
      std::array<bool, kMaxDegree> seen{};
      for (std::size_t i = 0; i < _degree; ++i) {
        if (seen[i] || _img[i] == i) {
          continue;
        }
        s += "(";
        for (std::size_t j = i; !seen[j]; j = _img[j]) {
          seen[j] = true;
          if (j != i) {
            s += " ";
          }
          s += std::to_string(j + (one_based ? 1 : 0));
        }
        s += ")";
      }
      return s.empty() ? "()" : s;
    }

    std::size_t hash() const noexcept {
      std::uint64_t h = 1469598103934665603ull ^ _degree;
      for (std::size_t i = 0; i < _degree; ++i) {
        h = (h ^ _img[i]) * 1099511628211ull;
      }
      return static_cast<std::size_t>(h);
    }

    friend bool operator==(Perm const&, Perm const&) = default;
    friend auto operator<=>(Perm const&, Perm const&) = default;

   private:
    static std::uint8_t narrow(std::size_t degree) {
      detail::check(degree <= kMaxDegree,
                    ErrorKind::OrderTooLarge,
                    "permutation degree " + std::to_string(degree)
                        + " exceeds " + std::to_string(kMaxDegree));
      return static_cast<std::uint8_t>(degree);
    }

    std::uint8_t                         _degree = 0;
    std::array<point_type, kMaxDegree> _img{};
  };

  struct PermHash {
    std::size_t operator()(Perm const& p) const noexcept {
      return p.hash();
    }
  };

  //! A subgroup of Sym(degree) with its full element set. Immutable once
  //! built; the generator list is kept irredundant (each generator enlarged
  //! the group when it was added).
  class PermGroup {
   public:
    PermGroup() : PermGroup(0) {}

    explicit PermGroup(std::size_t degree) : _degree(degree) {
      Perm id(degree);
      _elements.push_back(id);
      _index.insert(id);
    }

    static PermGroup generate(std::size_t            degree,
                              std::span<Perm const> gens,
                              std::size_t            cap = default_cap()) {
      detail::check(cap > 0, ErrorKind::InvalidArgument, "cap must be positive");
      PermGroup g(degree);
      for (auto const& x : gens) {
        g.add_generator(x, cap);
      }
      return g;
    }

    static PermGroup generate(std::size_t              degree,
                              std::vector<Perm> const& gens,
                              std::size_t              cap = default_cap()) {
      return generate(degree, std::span<Perm const>(gens), cap);
    }

    //! Subgroup spanned by this group and x.
    PermGroup with(Perm const& x, std::size_t cap = default_cap()) const {
      PermGroup g = *this;
      g.add_generator(x, cap);
      return g;
    }

    std::size_t degree() const noexcept {
      return _degree;
    }

    std::size_t order() const noexcept {
      return _elements.size();
    }

    std::vector<Perm> const& elements() const noexcept {
      return _elements;
    }

    std::vector<Perm> const& generators() const noexcept {
      return _gens;
    }

    bool contains(Perm const& p) const {
      return _index.count(p) != 0;
    }

    bool is_trivial() const noexcept {
      return _elements.size() == 1;
    }

    bool is_subgroup_of(PermGroup const& other) const {
      if (order() > other.order() || other.order() % order() != 0) {
        return false;
      }
      return std::all_of(_gens.begin(), _gens.end(), [&](Perm const& x) {
        return other.contains(x);
      });
    }

    bool is_abelian() const {
      for (std::size_t i = 0; i < _gens.size(); ++i) {
        for (std::size_t j = i + 1; j < _gens.size(); ++j) {
          if (_gens[i] * _gens[j] != _gens[j] * _gens[i]) {
            return false;
          }
        }
      }
      return true;
    }

    //! True iff every element of this group commutes with every element of
    //! other.
    bool commutes_with(PermGroup const& other) const {
      for (auto const& x : _gens) {
        for (auto const& y : other._gens) {
          if (x * y != y * x) {
            return false;
          }
        }
      }
      return true;
    }

    bool is_transitive() const {
      if (_degree == 0) {
        return true;
      }
      std::vector<bool>        seen(_degree, false);
      std::vector<std::size_t> stack{0};
      seen[0]           = true;
      std::size_t count = 1;
      while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (auto const& g : _gens) {
          auto y = g(x);
          if (!seen[y]) {
            seen[y] = true;
            ++count;
            stack.push_back(y);
          }
        }
      }
      return count == _degree;
    }

    friend bool operator==(PermGroup const& a, PermGroup const& b) {
      return a._degree == b._degree && a.order() == b.order()
             && a.is_subgroup_of(b);
    }

   private:
    void add_generator(Perm const& x, std::size_t cap) {
      detail::check(x.degree() == _degree,
                    ErrorKind::DegreeMismatch,
                    "generator of degree " + std::to_string(x.degree())
                        + " in group of degree " + std::to_string(_degree));
      if (contains(x)) {
        return;
      }
      _gens.push_back(x);
      // Left-multiply the old (closed) set by x, then BFS the new elements
      // under all generators.
      std::vector<Perm> frontier;
      std::size_t const old = _elements.size();
      for (std::size_t i = 0; i < old; ++i) {
        push(x * _elements[i], frontier, cap);
      }
      while (!frontier.empty()) {
        Perm e = frontier.back();
        frontier.pop_back();
        for (auto const& g : _gens) {
          push(g * e, frontier, cap);
        }
      }
    }

    void push(Perm const& p, std::vector<Perm>& frontier, std::size_t cap) {
      if (_index.insert(p).second) {
        _elements.push_back(p);
        frontier.push_back(p);
        if (_elements.size() > cap) {
          detail::raise(ErrorKind::CapExceeded,
                        "group order exceeds cap " + std::to_string(cap));
        }
      }
    }

    std::size_t                              _degree;
    std::vector<Perm>                        _gens;
    std::vector<Perm>                        _elements;
    std::unordered_set<Perm, PermHash> _index;
  };

  inline PermGroup group_from_generators(std::size_t              degree,
                                         std::vector<Perm> const& gens,
                                         std::size_t cap = default_cap()) {
    return PermGroup::generate(degree, gens, cap);
  }

  //! Symmetric group on n points.
  inline PermGroup symmetric_group(std::size_t n) {
    if (n <= 1) {
      return PermGroup(n);
    }
    std::vector<int> cyc(n);
    for (std::size_t i = 0; i < n; ++i) {
      cyc[i] = static_cast<int>(i);
    }
    return PermGroup::generate(
        n, {Perm::from_cycles(n, {{0, 1}}), Perm::from_cycles(n, {cyc})});
  }

  inline Partition orbit_partition(PermGroup const& g) {
    detail::UnionFind uf(g.degree());
    for (auto const& x : g.generators()) {
      for (std::size_t i = 0; i < g.degree(); ++i) {
        uf.unite(i, x(i));
      }
    }
    return Partition::from_uf(uf);
  }

  namespace detail {
    //! Smallest subgroup containing seed and closed under conjugation by the
    //! given conjugators.
    inline PermGroup closure_under_conjugation(std::size_t              degree,
                                               std::vector<Perm> const& conj,
                                               std::span<Perm const>    seed,
                                               std::size_t              cap) {
      PermGroup n = PermGroup::generate(degree, seed, cap);
      bool      changed = true;
      while (changed) {
        changed = false;
        // Generators of n only grow, so restart scanning after each change.
        for (std::size_t i = 0; i < n.generators().size() && !changed; ++i) {
          for (auto const& g : conj) {
            Perm c = g * n.generators()[i] * g.inverse();
            if (!n.contains(c)) {
              n       = n.with(c, cap);
              changed = true;
              break;
            }
          }
        }
      }
      return n;
    }
  }  // namespace detail

  inline PermGroup normal_closure(PermGroup const&         ambient,
                                  std::vector<Perm> const& seed,
                                  std::size_t              cap = default_cap()) {
    return detail::closure_under_conjugation(
        ambient.degree(), ambient.generators(), seed, cap);
  }

  //! {g in G : gh = hg for all h in H}.
  inline PermGroup centralizer(PermGroup const& g, PermGroup const& h) {
    std::vector<Perm> keep;
    for (auto const& x : g.elements()) {
      bool ok = true;
      for (auto const& y : h.generators()) {
        if (x * y != y * x) {
          ok = false;
          break;
        }
      }
      if (ok) {
        keep.push_back(x);
      }
    }
    return PermGroup::generate(g.degree(), keep);
  }

  inline PermGroup center(PermGroup const& g) {
    return centralizer(g, g);
  }

  //! [H,K]: normal closure in <H,K> of the commutators of generators.
  inline PermGroup commutator_subgroup(PermGroup const& g,
                                       PermGroup const& h,
                                       PermGroup const& k,
                                       std::size_t      cap = default_cap()) {
    detail::check(h.degree() == g.degree() && k.degree() == g.degree(),
                  ErrorKind::DegreeMismatch,
                  "commutator subgroup of groups of different degree");
    std::vector<Perm> seed;
    for (auto const& x : h.generators()) {
      for (auto const& y : k.generators()) {
        Perm c = x.inverse() * y.inverse() * x * y;
        if (!c.is_identity()) {
          seed.push_back(c);
        }
      }
    }
    std::vector<Perm> conj = h.generators();
    conj.insert(conj.end(), k.generators().begin(), k.generators().end());
    return detail::closure_under_conjugation(g.degree(), conj, seed, cap);
  }

  struct GroupSeries {
    std::vector<PermGroup>     derived;        // G, [G,G], ... until stable
    std::vector<PermGroup>     lower_central;  // G, [G,G], [[G,G],G], ...
    bool                       is_solvable  = false;
    bool                       is_nilpotent = false;
    std::optional<std::size_t> solvable_length;   // first k with G^(k) = 1
    std::optional<std::size_t> nilpotent_length;  // first k with G_(k) = 1
  };

  inline GroupSeries group_series(PermGroup const& g) {
    GroupSeries s;
    s.derived.push_back(g);
    while (!s.derived.back().is_trivial()) {
      auto const& last = s.derived.back();
      PermGroup   next = commutator_subgroup(g, last, last);
      if (next.order() == last.order()) {
        break;
      }
      s.derived.push_back(std::move(next));
    }
    s.lower_central.push_back(g);
    while (!s.lower_central.back().is_trivial()) {
      auto const& last = s.lower_central.back();
      PermGroup   next = commutator_subgroup(g, last, g);
      if (next.order() == last.order()) {
        break;
      }
      s.lower_central.push_back(std::move(next));
    }
    s.is_solvable  = s.derived.back().is_trivial();
    s.is_nilpotent = s.lower_central.back().is_trivial();
    if (s.is_solvable) {
      s.solvable_length = s.derived.size() - 1;
    }
    if (s.is_nilpotent) {
      s.nilpotent_length = s.lower_central.size() - 1;
    }
    return s;
  }

  //! Every normal subgroup of g: join closure of the normal closures of
  //! conjugacy class representatives, plus the trivial group.
  inline std::vector<PermGroup> normal_subgroups(PermGroup const& g) {
    std::vector<PermGroup>             found{PermGroup(g.degree())};
    std::unordered_set<Perm, PermHash> classified;
    auto                               known = [&](PermGroup const& n) {
      return std::any_of(found.begin(), found.end(), [&](PermGroup const& m) {
        return m == n;
      });
    };
    for (auto const& x : g.elements()) {
      if (classified.count(x)) {
        continue;
      }
      // Conjugacy class of x under g.
      std::vector<Perm> cls{x};
      classified.insert(x);
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (auto const& y : g.generators()) {
          Perm c = y * cls[i] * y.inverse();
          if (classified.insert(c).second) {
            cls.push_back(c);
          }
        }
      }
      PermGroup n = normal_closure(g, {x});
      if (!known(n)) {
        found.push_back(std::move(n));
      }
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        PermGroup m = found[i];
        for (auto const& y : found[j].generators()) {
          m = m.with(y);
        }
        if (!known(m)) {
          found.push_back(std::move(m));
        }
      }
    }
    std::stable_sort(found.begin(),
                     found.end(),
                     [](PermGroup const& a, PermGroup const& b) {
                       return a.order() < b.order();
                     });
    return found;
  }

  //! True iff every h in g fixing a point a also fixes the alpha-block of a.
  inline bool is_semiregular(PermGroup const& g, Partition const& alpha) {
    detail::check(alpha.size() == g.degree(),
                  ErrorKind::SizeMismatch,
                  "partition and group act on different sets");
    for (auto const& h : g.elements()) {
      for (std::size_t a = 0; a < g.degree(); ++a) {
        if (h(a) != a) {
          continue;
        }
        for (std::size_t b = 0; b < g.degree(); ++b) {
          if (alpha.related(a, b) && h(b) != b) {
            return false;
          }
        }
      }
    }
    return true;
  }

  //! sigma_G: a ~ b iff the point stabilizers G_a and G_b coincide.
  inline Partition stabilizer_partition(PermGroup const& g) {
    std::size_t const              n = g.degree();
    std::vector<std::vector<bool>> stab(n, std::vector<bool>(g.order()));
    for (std::size_t k = 0; k < g.order(); ++k) {
      auto const& h = g.elements()[k];
      for (std::size_t a = 0; a < n; ++a) {
        stab[a][k] = h(a) == a;
      }
    }
    std::vector<int> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
      labels[a] = static_cast<int>(a);
      for (std::size_t b = 0; b < a; ++b) {
        if (stab[a] == stab[b]) {
          labels[a] = labels[b];
          break;
        }
      }
    }
    return Partition::from_labels(labels);
  }

}  // namespace lqg
