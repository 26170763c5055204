#pragma once

#include <bit>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relblock/antichain.hpp"
#include "relblock/poset.hpp"

namespace relblock {

enum class WeightKind { IdealSize, AtomCount, MaxRank, Custom };

/// Weight map on the ideal-ordered antichain lattice.  Valid maps send the
/// empty antichain to -1, {bottom} to 0, and are strictly positive and
/// monotone above {bottom}.  The three built-ins:
///   ideal_size : |ideal(A)| - 1
///   atom_count : number of atoms below A (-1 for the empty antichain)
///   max_rank   : largest member rank (-1 for the empty antichain)
template <PosetLike P>
struct WeightMap {
  WeightKind kind = WeightKind::MaxRank;
  std::function<Weight(const P&, const Antichain&)> custom;

  static WeightMap ideal_size() { return {WeightKind::IdealSize, nullptr}; }
  static WeightMap atom_count() { return {WeightKind::AtomCount, nullptr}; }
  static WeightMap max_rank() { return {WeightKind::MaxRank, nullptr}; }
  static WeightMap custom_map(std::function<Weight(const P&, const Antichain&)> fn) {
    return {WeightKind::Custom, std::move(fn)};
  }
};

/// Builds a weight map from the selector strings used across interfaces.
template <PosetLike P>
WeightMap<P> weight_from_name(std::string_view name) {
  if (name == "ideal") return WeightMap<P>::ideal_size();
  if (name == "atoms") return WeightMap<P>::atom_count();
  if (name == "rank") return WeightMap<P>::max_rank();
  throw std::invalid_argument("unknown weight selector '" + std::string(name) +
                              "' (expected ideal|atoms|rank)");
}

template <PosetLike P>
Weight antichain_weight(const P& p, const WeightMap<P>& w, const Antichain& a) {
  switch (w.kind) {
    case WeightKind::IdealSize:
      if (a.empty()) return -1;
      return static_cast<Weight>(ideal(p, a.members()).count()) - 1;
    case WeightKind::AtomCount:
      if (a.empty()) return -1;
      return static_cast<Weight>((ideal(p, a.members()) & atoms(p)).count());
    case WeightKind::MaxRank: {
      if (a.empty()) return -1;
      int best = 0;
      for (Elem e : a.members()) best = std::max(best, p.rank(e));
      return best;
    }
    case WeightKind::Custom:
      return w.custom(p, a);
  }
  throw std::logic_error("unreachable");
}

template <PosetLike P>
Weight element_weight(const P& p, const WeightMap<P>& w, Elem b) {
  detail::check_elem(p.size(), b);
  if constexpr (std::same_as<P, BooleanLattice>) {
    switch (w.kind) {
      case WeightKind::IdealSize: return (Weight{1} << std::popcount(b)) - 1;
      case WeightKind::AtomCount: return std::popcount(b);
      case WeightKind::MaxRank: return std::popcount(b);
      case WeightKind::Custom: break;
    }
  } else if constexpr (std::same_as<P, Poset>) {
    switch (w.kind) {
      case WeightKind::IdealSize: return static_cast<Weight>(p.down_set(b).count()) - 1;
      case WeightKind::AtomCount: return static_cast<Weight>((p.down_set(b) & p.atom_set()).count());
      case WeightKind::MaxRank: return p.rank(b);
      case WeightKind::Custom: break;
    }
  }
  return antichain_weight(p, w, Antichain::unchecked({b}));
}

/// omega(P) := weight of the one-element antichain {top}.
template <PosetLike P>
Weight poset_weight(const P& p, const WeightMap<P>& w) {
  return element_weight(p, w, p.top());
}

/// Weight of the ideal-lattice meet of singletons, omega({b} meet {a}).
/// All blocking scans funnel through here; in a Boolean lattice the meet of
/// singletons is the singleton of the bitwise AND, so the built-ins reduce
/// to popcount arithmetic.
template <PosetLike P>
Weight meet_weight(const P& p, const WeightMap<P>& w, Elem b, Elem a) {
  detail::check_elem(p.size(), b);
  detail::check_elem(p.size(), a);
  if constexpr (std::same_as<P, BooleanLattice>) {
    Elem m = b & a;
    switch (w.kind) {
      case WeightKind::IdealSize: return (Weight{1} << std::popcount(m)) - 1;
      case WeightKind::AtomCount: return std::popcount(m);
      case WeightKind::MaxRank: return std::popcount(m);
      case WeightKind::Custom:
        return w.custom(p, Antichain::unchecked({m}));
    }
  } else if constexpr (std::same_as<P, Poset>) {
    // The meet antichain generates down(b) & down(a); the built-ins only
    // need that ideal, not the antichain itself.
    switch (w.kind) {
      case WeightKind::IdealSize: {
        ElemSet common = p.down_set(b) & p.down_set(a);
        return static_cast<Weight>(common.count()) - 1;
      }
      case WeightKind::AtomCount: {
        ElemSet common = p.down_set(b) & p.down_set(a);
        return static_cast<Weight>((common & p.atom_set()).count());
      }
      case WeightKind::MaxRank: {
        ElemSet common = p.down_set(b) & p.down_set(a);
        int best = 0;
        for_each_member(common, [&](Elem e) { best = std::max(best, p.rank(e)); });
        return best;
      }
      case WeightKind::Custom: break;
    }
  }
  return antichain_weight(p, w, meet_ideal(p, Antichain::unchecked({b}), Antichain::unchecked({a})));
}

/// Checks the weight-map axioms: the two anchor values plus strict
/// positivity and monotonicity above {bottom}.  Exhaustive over the
/// antichain lattice for small posets, sampled otherwise.
template <PosetLike P>
bool validate_weight_map(const P& p, const WeightMap<P>& w, std::size_t sample = 4000) {
  if (antichain_weight(p, w, Antichain()) != -1) return false;
  if (antichain_weight(p, w, Antichain::unchecked({p.bottom()})) != 0) return false;

  auto check_pair = [&](const Antichain& lo, const Antichain& hi) {
    return antichain_weight(p, w, lo) <= antichain_weight(p, w, hi);
  };
  auto positive = [&](const Antichain& a) { return antichain_weight(p, w, a) > 0; };

  if (p.size() <= 16) {
    std::vector<Antichain> all = all_antichains(p);
    for (const Antichain& a : all)
      if (!a.is_trivial(p) && !positive(a)) return false;
    for (const Antichain& a : all) {
      if (a.is_trivial(p)) continue;
      for (const Antichain& b : all) {
        if (b.is_trivial(p)) continue;
        if (leq_ideal(p, a, b) && !check_pair(a, b)) return false;
      }
    }
    return true;
  }

  std::mt19937_64 rng(0x5eedu);
  for (std::size_t i = 0; i < sample; ++i) {
    Antichain hi = random_antichain(p, rng);
    if (!positive(hi)) return false;
    // Random comparable partner: maximals of a random subset of ideal(hi).
    ElemSet down = ideal(p, hi.members());
    ElemSet sub(p.size());
    std::uniform_int_distribution<int> coin(0, 1);
    for_each_member(down, [&](Elem e) {
      if (coin(rng)) sub.set(e);
    });
    Antichain lo = Antichain::of_maximals(p, sub);
    if (lo.is_trivial(p)) continue;
    if (!positive(lo) || !check_pair(lo, hi)) return false;
  }
  return true;
}

}  // namespace relblock
