#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relblock/core.hpp"

namespace relblock {

/// Finite bounded poset interface: dense ids, reflexive order test, least
/// and greatest elements.  Rank access may exist syntactically yet fail at
/// runtime when the instance is not graded.
template <typename P>
concept PosetLike = requires(const P& p, Elem x, Elem y) {
  { p.size() } -> std::convertible_to<std::size_t>;
  { p.leq(x, y) } -> std::convertible_to<bool>;
  { p.bottom() } -> std::convertible_to<Elem>;
  { p.top() } -> std::convertible_to<Elem>;
  { p.is_graded() } -> std::convertible_to<bool>;
  { p.rank(x) } -> std::convertible_to<int>;
  { p.height() } -> std::convertible_to<int>;
};

/// Boolean lattice of subsets of an n-element set.  Elements are the masks
/// 0..2^n-1; the order relation is never materialized (subset test on
/// masks), so only O(1) state is held regardless of n.
class BooleanLattice {
 public:
  explicit BooleanLattice(int n) : n_(n) {
    if (n < 1 || n > 24) throw guard_error("boolean lattice size must be in [1,24]");
  }

  int ground_size() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  bool leq(Elem x, Elem y) const { return (x & ~y) == 0; }
  Elem bottom() const { return 0; }
  Elem top() const { return static_cast<Elem>(size() - 1); }
  bool is_graded() const { return true; }
  int rank(Elem x) const { return std::popcount(x); }
  int height() const { return n_; }

 private:
  int n_;
};

/// Explicit finite bounded poset built from a cover relation.
/// Down-sets are stored as one bitset per element; intended for the small
/// posets that arrive through cover lists, not for Boolean lattices.
class Poset {
 public:
  /// covers: pairs (lower, upper).  Validates boundedness, acyclicity
  /// (hence antisymmetry of the closure) and, when ranks are supplied,
  /// that every cover raises rank by exactly one from rank(bottom)=0.
  /// Without supplied ranks, gradedness is inferred from chain heights.
  static Poset from_covers(std::size_t count, std::span<const std::pair<Elem, Elem>> covers,
                           Elem bottom, Elem top,
                           std::optional<std::vector<int>> ranks = std::nullopt) {
    if (count < 2) throw std::invalid_argument("bounded poset needs at least two elements");
    if (bottom >= count || top >= count || bottom == top)
      throw std::invalid_argument("bad bottom/top element");
    Poset p;
    p.bottom_ = bottom;
    p.top_ = top;
    p.up_covers_.assign(count, {});
    std::vector<std::vector<Elem>> down_covers(count);
    for (auto [lo, hi] : covers) {
      if (lo >= count || hi >= count) throw std::invalid_argument("cover references unknown element");
      if (lo == hi) throw std::invalid_argument("cover relates an element to itself");
      p.up_covers_[lo].push_back(hi);
      down_covers[hi].push_back(lo);
    }

    // Topological order of the cover digraph; a leftover node means a cycle,
    // i.e. the reflexive-transitive closure would violate antisymmetry.
    std::vector<int> indeg(count, 0);
    for (std::size_t v = 0; v < count; ++v) indeg[v] = static_cast<int>(down_covers[v].size());
    std::vector<Elem> order;
    order.reserve(count);
    for (std::size_t v = 0; v < count; ++v)
      if (indeg[v] == 0) order.push_back(static_cast<Elem>(v));
    for (std::size_t i = 0; i < order.size(); ++i)
      for (Elem u : p.up_covers_[order[i]])
        if (--indeg[u] == 0) order.push_back(u);
    if (order.size() != count) throw std::invalid_argument("cover relation contains a cycle");

    p.down_.assign(count, ElemSet(count));
    for (Elem v : order) {
      p.down_[v].set(v);
      for (Elem u : down_covers[v]) p.down_[v] |= p.down_[u];
    }
    for (std::size_t v = 0; v < count; ++v) {
      if (!p.down_[v].test(bottom)) throw std::invalid_argument("bottom is not below every element");
      if (!p.down_[top].test(v)) throw std::invalid_argument("top is not above every element");
    }

    if (ranks) {
      if (ranks->size() != count) throw std::invalid_argument("rank map size mismatch");
      p.ranks_ = std::move(*ranks);
      if ((*p.ranks_)[bottom] != 0) throw std::invalid_argument("rank(bottom) must be 0");
      for (std::size_t lo = 0; lo < count; ++lo)
        for (Elem hi : p.up_covers_[lo])
          if ((*p.ranks_)[hi] != (*p.ranks_)[lo] + 1)
            throw std::invalid_argument("supplied ranks are not graded along covers");
    } else {
      // Longest-chain heights; keep them as ranks only if every cover is slim.
      std::vector<int> h(count, 0);
      bool graded = true;
      for (Elem v : order)
        for (Elem u : down_covers[v]) h[v] = std::max(h[v], h[u] + 1);
      for (std::size_t lo = 0; lo < count && graded; ++lo)
        for (Elem hi : p.up_covers_[lo])
          if (h[hi] != h[lo] + 1) {
            graded = false;
            break;
          }
      if (graded) p.ranks_ = std::move(h);
    }

    p.atoms_ = ElemSet(count);
    for (std::size_t v = 0; v < count; ++v)
      if (p.down_[v].count() == 2) p.atoms_.set(static_cast<Elem>(v));  // exactly {bottom, v}
    return p;
  }

  std::size_t size() const { return down_.size(); }
  bool leq(Elem x, Elem y) const { return down_[check(y)].test(check(x)); }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }
  bool is_graded() const { return ranks_.has_value(); }

  int rank(Elem x) const {
    if (!ranks_) throw capability_error("poset is not graded: no rank function");
    return (*ranks_)[check(x)];
  }
  int height() const {
    if (!ranks_) throw capability_error("poset is not graded: no rank function");
    return (*ranks_)[top_];
  }

  const ElemSet& down_set(Elem x) const { return down_[check(x)]; }
  const ElemSet& atom_set() const { return atoms_; }
  const std::vector<std::vector<Elem>>& up_covers() const { return up_covers_; }

 private:
  Poset() = default;
  Elem check(Elem x) const {
    if (x >= down_.size()) throw std::out_of_range("element id outside poset");
    return x;
  }

  std::vector<ElemSet> down_;
  std::vector<std::vector<Elem>> up_covers_;
  std::optional<std::vector<int>> ranks_;
  ElemSet atoms_;
  Elem bottom_ = 0, top_ = 0;
};

/// Order-dual view: x <= y here iff y <= x in the base poset.
template <PosetLike P>
class DualView {
 public:
  explicit DualView(const P& base) : base_(&base) {}
  std::size_t size() const { return base_->size(); }
  bool leq(Elem x, Elem y) const { return base_->leq(y, x); }
  Elem bottom() const { return base_->top(); }
  Elem top() const { return base_->bottom(); }
  bool is_graded() const { return base_->is_graded(); }
  int rank(Elem x) const { return base_->height() - base_->rank(x); }
  int height() const { return base_->height(); }

 private:
  const P* base_;
};

namespace detail {

inline void check_elem(std::size_t size, Elem e) {
  if (e >= size) throw std::out_of_range("element id outside poset");
}

}  // namespace detail

/// Elements covering the bottom.
template <PosetLike P>
ElemSet atoms(const P& p) {
  if constexpr (std::same_as<P, BooleanLattice>) {
    ElemSet a(p.size());
    for (int i = 0; i < p.ground_size(); ++i) a.set(Elem{1} << i);
    return a;
  } else if constexpr (std::same_as<P, Poset>) {
    return p.atom_set();
  } else {
    ElemSet a(p.size());
    for (Elem x = 0; x < p.size(); ++x) {
      if (x == p.bottom()) continue;
      bool atom = true;
      for (Elem y = 0; y < p.size() && atom; ++y)
        if (y != x && y != p.bottom() && p.leq(y, x)) atom = false;
      if (atom) a.set(x);
    }
    return a;
  }
}

/// Order ideal generated by a set: { x : x <= some generator }.
template <PosetLike P>
ElemSet ideal(const P& p, const std::vector<Elem>& gens) {
  ElemSet r(p.size());
  for (Elem g : gens) detail::check_elem(p.size(), g);
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem g : gens)
      if (p.leq(x, g)) {
        r.set(x);
        break;
      }
  return r;
}

/// Order filter generated by a set: { x : x >= some generator }.
template <PosetLike P>
ElemSet filter(const P& p, const std::vector<Elem>& gens) {
  ElemSet r(p.size());
  for (Elem g : gens) detail::check_elem(p.size(), g);
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem g : gens)
      if (p.leq(g, x)) {
        r.set(x);
        break;
      }
  return r;
}

template <PosetLike P>
ElemSet ideal(const P& p, const ElemSet& gens) {
  return ideal(p, to_vector(gens));
}

template <PosetLike P>
ElemSet filter(const P& p, const ElemSet& gens) {
  return filter(p, to_vector(gens));
}

/// Minimal elements of an arbitrary subset.
template <PosetLike P>
ElemSet minimals(const P& p, const ElemSet& s) {
  if (s.size() != p.size()) throw std::invalid_argument("set universe mismatch");
  ElemSet keep(p.size());
  std::vector<Elem> members = to_vector(s);
  for (Elem x : members) {
    bool minimal = true;
    for (Elem y : members) {
      if (y != x && p.leq(y, x)) {
        minimal = false;
        break;
      }
    }
    if (minimal) keep.set(x);
  }
  return keep;
}

/// Maximal elements of an arbitrary subset.
template <PosetLike P>
ElemSet maximals(const P& p, const ElemSet& s) {
  if (s.size() != p.size()) throw std::invalid_argument("set universe mismatch");
  ElemSet keep(p.size());
  std::vector<Elem> members = to_vector(s);
  for (Elem x : members) {
    bool maximal = true;
    for (Elem y : members) {
      if (y != x && p.leq(x, y)) {
        maximal = false;
        break;
      }
    }
    if (maximal) keep.set(x);
  }
  return keep;
}

/// Rank level { x : rank(x) = j }; needs a graded poset.
template <PosetLike P>
ElemSet layer(const P& p, int j) {
  if (!p.is_graded()) throw capability_error("layer needs a graded poset");
  if (j < 0 || j > p.height()) throw std::invalid_argument("layer index outside [0, height]");
  ElemSet r(p.size());
  for (Elem x = 0; x < p.size(); ++x)
    if (p.rank(x) == j) r.set(x);
  return r;
}

/// Moebius function of the interval [x,z]:
///   mu(x,x) = 1, mu(x,z) = -sum_{x <= y < z} mu(x,y), and 0 unless x <= z.
template <PosetLike P>
std::int64_t mobius(const P& p, Elem x, Elem z) {
  detail::check_elem(p.size(), x);
  detail::check_elem(p.size(), z);
  if (!p.leq(x, z)) return 0;
  std::vector<Elem> interval;
  for (Elem y = 0; y < p.size(); ++y)
    if (p.leq(x, y) && p.leq(y, z)) interval.push_back(y);
  // Linear extension of the interval: order by number of interval elements below.
  std::vector<std::size_t> below(interval.size(), 0);
  for (std::size_t i = 0; i < interval.size(); ++i)
    for (Elem y : interval)
      if (p.leq(y, interval[i])) ++below[i];
  std::vector<std::size_t> idx(interval.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });

  std::map<Elem, std::int64_t> mu;
  for (std::size_t i : idx) {
    Elem y = interval[i];
    if (y == x) {
      mu[y] = 1;
      continue;
    }
    std::int64_t acc = 0;
    for (auto& [w, value] : mu)
      if (p.leq(w, y) && w != y) acc += value;
    mu[y] = -acc;
  }
  return mu[z];
}

/// True iff s is convex: x,z in s and x <= y <= z imply y in s.
template <PosetLike P>
bool is_convex(const P& p, const ElemSet& s) {
  if (s.size() != p.size()) throw std::invalid_argument("set universe mismatch");
  if (s.none()) return true;
  ElemSet sandwiched = filter(p, s) & ideal(p, s);
  return sandwiched.is_subset_of(s);
}

}  // namespace relblock
