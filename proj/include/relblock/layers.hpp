#pragma once

#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "relblock/enumeration.hpp"
#include "relblock/farey.hpp"

namespace relblock {

/// Largest member of the poset Farey sequence of a that is <= r.
template <PosetLike P>
Fraction threshold_fraction(const P& p, Elem a, const WeightMap<P>& w, const Fraction& r) {
  detail::check_threshold(r);
  return farey_poset(p, a, w).floor_member(r);
}

/// Position of threshold_fraction(r) inside the boolean subsequence,
/// evaluated without constructing the sequence: the corrected index sum with
/// floor(j*r) in place of floor(j*f) counts exactly the members <= r.
inline std::int64_t boolean_threshold_index(int n, int m, const Fraction& r) {
  detail::check_threshold(r);
  if (m < 1 || m >= n) throw std::domain_error("threshold index needs 0 < m < n");
  std::int64_t t = 0;
  for (int j = 1; j <= n; ++j)
    t += coprime_count(j, std::max<std::int64_t>(1, j + m - n), std::min<std::int64_t>(m, r.floor_scaled(j)));
  return t;
}

/// Weights of layers that can host blocking elements outside the common
/// ideal of the generators.  Per generator a, the candidate set is
///   { s * den(f) : f a member fraction with threshold(r) < f < 1/1,
///                  1 <= s <= min( omega(a)/num(f), omega(P)/den(f) ) }
///   union { omega(e) : e in ideal(a), e != bottom },
/// and the result intersects the per-generator sets.
struct LayerSet {
  std::set<Weight> values;
  bool contains(Weight k) const { return values.count(k) != 0; }
  friend bool operator==(const LayerSet&, const LayerSet&) = default;
};

template <PosetLike P>
LayerSet admissible_layers(const P& p, const Antichain& a, const WeightMap<P>& w, const Fraction& r) {
  detail::check_threshold(r);
  if (a.is_trivial(p)) throw std::domain_error("admissible_layers needs a nontrivial antichain");
  Weight total = poset_weight(p, w);
  std::optional<std::set<Weight>> acc;
  for (Elem g : a.members()) {
    FareySeq seq = farey_poset(p, g, w);
    Fraction threshold = seq.floor_member(r);
    Weight wg = element_weight(p, w, g);
    std::set<Weight> local;
    for (const Fraction& f : seq.fractions) {
      if (!(threshold < f) || f.is_one()) continue;
      Weight smax = std::min(wg / f.num(), total / f.den());
      for (Weight s = 1; s <= smax; ++s) local.insert(s * f.den());
    }
    ElemSet down = ideal(p, std::vector<Elem>{g});
    for_each_member(down, [&](Elem e) {
      if (e != p.bottom()) local.insert(element_weight(p, w, e));
    });
    if (!acc) {
      acc = std::move(local);
    } else {
      std::set<Weight> merged;
      for (Weight v : *acc)
        if (local.count(v)) merged.insert(v);
      acc = std::move(merged);
    }
  }
  return LayerSet{*acc};
}

namespace detail {

/// Pruning hypothesis on the weight map: weight of the singleton meet of
/// (a', a'') equals weight(a') exactly when a' <= a''.  Exhaustive while the
/// pair count stays within 2^20, sampled beyond that.
template <PosetLike P>
void check_pruning_hypothesis(const P& p, const WeightMap<P>& w) {
  auto check = [&](Elem x, Elem y) {
    bool eq = meet_weight(p, w, x, y) == element_weight(p, w, x);
    if (eq != p.leq(x, y))
      throw capability_error("weight map violates the layer-pruning hypothesis");
  };
  if (p.size() * p.size() <= (std::size_t{1} << 20)) {
    for (Elem x = 0; x < p.size(); ++x)
      for (Elem y = 0; y < p.size(); ++y) check(x, y);
  } else {
    std::mt19937_64 rng(0xfeedu);
    std::uniform_int_distribution<Elem> d(0, static_cast<Elem>(p.size() - 1));
    for (int i = 0; i < (1 << 20); ++i) check(d(rng), d(rng));
  }
}

template <PosetLike P>
ElemSet common_ideal_proper(const P& p, const Antichain& a) {
  ElemSet acc(p.size());
  acc.set();
  for (Elem g : a.members()) acc &= ideal(p, std::vector<Elem>{g});
  acc.reset(p.bottom());
  return acc;
}

}  // namespace detail

/// Checks that every layer weight outside admissible_layers only carries
/// blocking elements inside the common proper ideal of the generators, and
/// returns those verified-pruned weights.  A violation would falsify the
/// construction and raises logic_error.
template <PosetLike P>
std::set<Weight> verify_pruned_layers(const P& p, const Antichain& a, const WeightMap<P>& w,
                                      const Fraction& r) {
  detail::check_threshold(r);
  if (a.is_trivial(p)) throw std::domain_error("verify_pruned_layers needs a nontrivial antichain");
  detail::check_pruning_hypothesis(p, w);
  LayerSet d = admissible_layers(p, a, w, r);
  ElemSet core = detail::common_ideal_proper(p, a);
  std::set<Weight> pruned;
  for (Weight k = 1; k <= poset_weight(p, w); ++k) {
    if (d.contains(k)) continue;
    ElemSet lk = blocking_layer(p, w, r, a, k);
    if (!lk.is_subset_of(core))
      throw std::logic_error("blocking elements found in a pruned layer outside the common ideal");
    pruned.insert(k);
  }
  return pruned;
}

/// Blocking set under the max-rank weight assembled per layer:
///   (common proper ideal)  union over k in admissible_layers of
///   layer(k) & filter(absolute_blocker(nu(r,k)-1, A)).
template <PosetLike P>
ElemSet structure_ideal_form(const P& p, const Antichain& a, const Fraction& r) {
  detail::check_threshold(r);
  if (!p.is_graded()) throw capability_error("structure forms need a graded poset");
  if (a.is_trivial(p)) throw std::domain_error("structure forms need a nontrivial antichain");
  WeightMap<P> w = WeightMap<P>::max_rank();
  LayerSet d = admissible_layers(p, a, w, r);
  ElemSet out = detail::common_ideal_proper(p, a);
  for (Weight k : d.values) {
    Weight nu = least_integer_above(r, k);
    Antichain bound = absolute_blocker(p, w, nu - 1, a);
    out |= layer(p, static_cast<int>(k)) & filter(p, bound.members());
  }
  return out;
}

/// Blocking set under the max-rank weight assembled per member fraction:
///   (common proper ideal)  union  intersection over generators a of
///   union over member fractions f > threshold_a(r), s with s*den(f)
///   admissible and s <= min(rank(a)/num(f), height/den(f)), of
///   layer(s*den(f)) & ( filter(b_{s*num(f)-1}(a)) - filter(b_{s*num(f)}(a)) ).
template <PosetLike P>
ElemSet structure_farey_form(const P& p, const Antichain& a, const Fraction& r) {
  detail::check_threshold(r);
  if (!p.is_graded()) throw capability_error("structure forms need a graded poset");
  if (a.is_trivial(p)) throw std::domain_error("structure forms need a nontrivial antichain");
  WeightMap<P> w = WeightMap<P>::max_rank();
  LayerSet d = admissible_layers(p, a, w, r);
  Weight total = p.height();

  std::optional<ElemSet> acc;
  for (Elem g : a.members()) {
    FareySeq seq = farey_poset(p, g, w);
    Fraction threshold = seq.floor_member(r);
    Weight wg = p.rank(g);
    ElemSet part(p.size());
    for (const Fraction& f : seq.fractions) {
      if (!(threshold < f)) continue;
      Weight smax = std::min(wg / f.num(), total / f.den());
      for (Weight s = 1; s <= smax; ++s) {
        if (!d.contains(s * f.den())) continue;
        Antichain single = Antichain::unchecked({g});
        Antichain lower = absolute_blocker(p, w, s * f.num() - 1, single);
        Antichain upper = absolute_blocker(p, w, s * f.num(), single);
        ElemSet slice = layer(p, static_cast<int>(s * f.den()));
        slice &= filter(p, lower.members());
        slice -= filter(p, upper.members());
        part |= slice;
      }
    }
    if (!acc) acc = std::move(part);
    else *acc &= part;
  }
  ElemSet out = detail::common_ideal_proper(p, a);
  if (acc) out |= *acc;
  return out;
}

}  // namespace relblock
