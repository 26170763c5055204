#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "relblock/fraction.hpp"
#include "relblock/weights.hpp"

namespace relblock {

namespace detail {

inline void check_threshold(const Fraction& r) {
  if (!(r < Fraction(1, 1))) throw std::domain_error("blocking threshold must satisfy 0 <= r < 1");
}

// Members of A other than the bottom, validated against the poset.
template <PosetLike P>
std::vector<Elem> proper_part(const P& p, std::span<const Elem> a) {
  std::vector<Elem> out;
  for (Elem e : a) {
    check_elem(p.size(), e);
    if (e != p.bottom()) out.push_back(e);
  }
  return out;
}

}  // namespace detail

/// Relative blocking test.  For nonempty A distinct from {bottom}, b != bottom
/// blocks when  omega({b} meet {a}) / omega(b)  >  r  strictly, for every
/// a in A - {bottom} (exact cross-multiplied comparison).  Conventions:
/// empty A -> every element blocks; A = {bottom} -> nothing blocks.
template <PosetLike P>
bool is_relatively_blocking(const P& p, const WeightMap<P>& w, const Fraction& r,
                            std::span<const Elem> a_set, Elem b) {
  detail::check_threshold(r);
  detail::check_elem(p.size(), b);
  if (a_set.empty()) return true;
  std::vector<Elem> gens = detail::proper_part(p, a_set);
  if (gens.empty()) return false;  // A = {bottom}
  if (b == p.bottom()) return false;
  Weight wb = element_weight(p, w, b);
  for (Elem a : gens) {
    Weight wm = meet_weight(p, w, b, a);
    if (!(wm * r.den() > r.num() * wb)) return false;
  }
  return true;
}

template <PosetLike P>
bool is_relatively_blocking(const P& p, const WeightMap<P>& w, const Fraction& r,
                            const Antichain& a, Elem b) {
  return is_relatively_blocking(p, w, r, std::span<const Elem>(a.members()), b);
}

/// All relatively r-blocking elements of P with respect to A.
template <PosetLike P>
ElemSet blocking_subposet(const P& p, const WeightMap<P>& w, const Fraction& r,
                          std::span<const Elem> a_set) {
  detail::check_threshold(r);
  ElemSet out(p.size());
  if (a_set.empty()) {
    out.set();  // every element, bottom included
    return out;
  }
  std::vector<Elem> gens = detail::proper_part(p, a_set);
  if (gens.empty()) return out;
  for (Elem b = 0; b < p.size(); ++b) {
    if (b == p.bottom()) continue;
    Weight wb = element_weight(p, w, b);
    bool ok = true;
    for (Elem a : gens) {
      if (!(meet_weight(p, w, b, a) * r.den() > r.num() * wb)) {
        ok = false;
        break;
      }
    }
    if (ok) out.set(b);
  }
  return out;
}

template <PosetLike P>
ElemSet blocking_subposet(const P& p, const WeightMap<P>& w, const Fraction& r, const Antichain& a) {
  return blocking_subposet(p, w, r, std::span<const Elem>(a.members()));
}

/// Blocking elements of weight exactly k (a convex slice of the blocking set).
template <PosetLike P>
ElemSet blocking_layer(const P& p, const WeightMap<P>& w, const Fraction& r,
                       std::span<const Elem> a_set, Weight k) {
  if (k < 1 || k > poset_weight(p, w)) throw std::domain_error("slice weight outside [1, omega(P)]");
  ElemSet all = blocking_subposet(p, w, r, a_set);
  ElemSet out(p.size());
  for_each_member(all, [&](Elem b) {
    if (element_weight(p, w, b) == k) out.set(b);
  });
  return out;
}

template <PosetLike P>
ElemSet blocking_layer(const P& p, const WeightMap<P>& w, const Fraction& r, const Antichain& a,
                       Weight k) {
  return blocking_layer(p, w, r, std::span<const Elem>(a.members()), k);
}

/// Relative r-blocker: minimal elements of the blocking set.  The trivial
/// antichains exchange places: empty -> {bottom}, {bottom} -> empty.
template <PosetLike P>
Antichain relative_blocker(const P& p, const WeightMap<P>& w, const Fraction& r, const Antichain& a) {
  detail::check_threshold(r);
  if (a.empty()) return Antichain::unchecked({p.bottom()});
  if (a.is_bottom_singleton(p)) return Antichain();
  return Antichain::of_minimals(p, blocking_subposet(p, w, r, a));
}

/// Absolute j-blocker: minimal b with omega({b} meet {a}) > j for every
/// a in A.  Conventions: trivial A swaps to the other trivial antichain;
/// j = omega(P) yields the empty antichain.
template <PosetLike P>
Antichain absolute_blocker(const P& p, const WeightMap<P>& w, Weight j, const Antichain& a) {
  Weight total = poset_weight(p, w);
  if (j < 0 || j > total) throw std::domain_error("absolute level outside [0, omega(P)]");
  if (a.empty()) return Antichain::unchecked({p.bottom()});
  if (a.is_bottom_singleton(p)) return Antichain();
  if (j == total) return Antichain();
  ElemSet qualifying(p.size());
  for (Elem b = 0; b < p.size(); ++b) {
    bool ok = true;
    for (Elem g : a.members()) {
      if (!(meet_weight(p, w, b, g) > j)) {
        ok = false;
        break;
      }
    }
    if (ok) qualifying.set(b);
  }
  return Antichain::of_minimals(p, qualifying);
}

/// Blocker construction counted by atoms: minimal elements sharing more
/// than j atoms with every member of A.  j = 0 gives the classical blocker.
template <PosetLike P>
Antichain atom_blocker(const P& p, Weight j, const Antichain& a) {
  Weight atom_count = static_cast<Weight>(atoms(p).count());
  if (j < 0 || j >= atom_count) throw std::domain_error("atom level outside [0, atom count)");
  return absolute_blocker(p, WeightMap<P>::atom_count(), j, a);
}

/// { b : omega(b) = k and omega({b} meet {a}) >= h for every a in A }.
/// Convex in P; empty when the constraints clash.
template <PosetLike P>
ElemSet convex_slice(const P& p, const WeightMap<P>& w, const Antichain& a, Weight h, Weight k) {
  if (a.is_trivial(p)) throw std::domain_error("convex_slice needs a nontrivial antichain");
  if (h < 1 || h > k || k > poset_weight(p, w))
    throw std::domain_error("convex_slice needs 1 <= h <= k <= omega(P)");
  ElemSet out(p.size());
  for (Elem b = 0; b < p.size(); ++b) {
    if (element_weight(p, w, b) != k) continue;
    bool ok = true;
    for (Elem g : a.members()) {
      if (meet_weight(p, w, b, g) < h) {
        ok = false;
        break;
      }
    }
    if (ok) out.set(b);
  }
  return out;
}

/// { b : omega(b) = k and omega({b} meet {a}) = h } for one generator.
template <PosetLike P>
ElemSet convex_slice_exact(const P& p, const WeightMap<P>& w, Elem a, Weight h, Weight k) {
  detail::check_elem(p.size(), a);
  if (a == p.bottom()) throw std::domain_error("convex_slice_exact needs a != bottom");
  if (h < 1 || h > k || k > poset_weight(p, w))
    throw std::domain_error("convex_slice_exact needs 1 <= h <= k <= omega(P)");
  ElemSet out(p.size());
  for (Elem b = 0; b < p.size(); ++b) {
    if (element_weight(p, w, b) != k) continue;
    if (meet_weight(p, w, b, a) == h) out.set(b);
  }
  return out;
}

}  // namespace relblock
