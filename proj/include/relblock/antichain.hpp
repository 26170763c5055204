#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "relblock/poset.hpp"

namespace relblock {

/// Antichain of a poset: sorted, duplicate-free member list, pairwise
/// incomparable in the poset that operations receive alongside it.
/// The two trivial antichains are the empty one and {bottom}; they are
/// ordinary values here, not sentinels.
class Antichain {
 public:
  Antichain() = default;

  const std::vector<Elem>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  template <PosetLike P>
  bool is_bottom_singleton(const P& p) const {
    return members_.size() == 1 && members_[0] == p.bottom();
  }
  template <PosetLike P>
  bool is_trivial(const P& p) const {
    return empty() || is_bottom_singleton(p);
  }

  friend bool operator==(const Antichain&, const Antichain&) = default;
  friend bool operator<(const Antichain& a, const Antichain& b) { return a.members_ < b.members_; }

  /// Validating constructor: rejects comparable or out-of-range members.
  template <PosetLike P>
  static Antichain strict(const P& p, std::vector<Elem> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    for (Elem e : elems) detail::check_elem(p.size(), e);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j)
        if (i != j && p.leq(elems[i], elems[j]))
          throw std::invalid_argument("set is not an antichain: comparable members");
    Antichain a;
    a.members_ = std::move(elems);
    return a;
  }

  /// Reduces an arbitrary subset to its minimal elements.
  template <PosetLike P>
  static Antichain of_minimals(const P& p, const ElemSet& s) {
    return unchecked(to_vector(minimals(p, s)));
  }

  /// Reduces an arbitrary subset to its maximal elements.
  template <PosetLike P>
  static Antichain of_maximals(const P& p, const ElemSet& s) {
    return unchecked(to_vector(maximals(p, s)));
  }

  template <PosetLike P>
  ElemSet as_set(const P& p) const {
    return set_of(p.size(), members_);
  }

  // For internal producers whose output is an antichain by construction.
  static Antichain unchecked(std::vector<Elem> sorted_members) {
    Antichain a;
    a.members_ = std::move(sorted_members);
    return a;
  }

 private:
  std::vector<Elem> members_;
};

/// A' <= A'' in the lattice ordered by order-ideal containment.
/// ideal(A') is contained in ideal(A'') iff every member of A' lies below
/// some member of A'', so the ideals are never materialized.
template <PosetLike P>
bool leq_ideal(const P& p, const Antichain& a, const Antichain& b) {
  for (Elem x : a.members()) {
    bool covered = false;
    for (Elem y : b.members())
      if (p.leq(x, y)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

/// A' <= A'' in the lattice ordered by order-filter containment.
template <PosetLike P>
bool leq_filter(const P& p, const Antichain& a, const Antichain& b) {
  for (Elem x : a.members()) {
    bool covered = false;
    for (Elem y : b.members())
      if (p.leq(y, x)) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

template <PosetLike P>
Antichain meet_ideal(const P& p, const Antichain& a, const Antichain& b) {
  return Antichain::of_maximals(p, ideal(p, a.members()) & ideal(p, b.members()));
}

template <PosetLike P>
Antichain join_ideal(const P& p, const Antichain& a, const Antichain& b) {
  std::vector<Elem> both = a.members();
  both.insert(both.end(), b.members().begin(), b.members().end());
  return Antichain::of_maximals(p, set_of(p.size(), both));
}

template <PosetLike P>
Antichain meet_filter(const P& p, const Antichain& a, const Antichain& b) {
  return Antichain::of_minimals(p, filter(p, a.members()) & filter(p, b.members()));
}

template <PosetLike P>
Antichain join_filter(const P& p, const Antichain& a, const Antichain& b) {
  std::vector<Elem> both = a.members();
  both.insert(both.end(), b.members().begin(), b.members().end());
  return Antichain::of_minimals(p, set_of(p.size(), both));
}

/// Visits every antichain exactly once (the empty one first).  Intended for
/// small posets; the count grows like the Dedekind numbers.
template <PosetLike P, class Visit>
void for_each_antichain(const P& p, Visit&& visit) {
  std::vector<Elem> current;
  auto rec = [&](auto&& self, Elem start) -> void {
    visit(static_cast<const std::vector<Elem>&>(current));
    for (Elem e = start; e < p.size(); ++e) {
      bool compatible = true;
      for (Elem c : current)
        if (p.leq(c, e) || p.leq(e, c)) {
          compatible = false;
          break;
        }
      if (compatible) {
        current.push_back(e);
        self(self, e + 1);
        current.pop_back();
      }
    }
  };
  rec(rec, 0);
}

template <PosetLike P>
std::vector<Antichain> all_antichains(const P& p) {
  std::vector<Antichain> out;
  for_each_antichain(p, [&](const std::vector<Elem>& members) {
    out.push_back(Antichain::unchecked(members));
  });
  return out;
}

/// Random antichain: maximals of a random subset.  require_nontrivial
/// retries until the result is neither empty nor {bottom}.
template <PosetLike P, class Rng>
Antichain random_antichain(const P& p, Rng& rng, bool require_nontrivial = true) {
  std::uniform_int_distribution<std::size_t> size_dist(1, std::max<std::size_t>(3, p.size() / 4));
  std::uniform_int_distribution<Elem> elem_dist(0, static_cast<Elem>(p.size() - 1));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ElemSet s(p.size());
    std::size_t want = size_dist(rng);
    for (std::size_t i = 0; i < want; ++i) s.set(elem_dist(rng));
    Antichain a = Antichain::of_maximals(p, s);
    if (!require_nontrivial || !a.is_trivial(p)) return a;
  }
  throw std::runtime_error("random_antichain: could not draw a nontrivial antichain");
}

}  // namespace relblock
