#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "relblock/fraction.hpp"
#include "relblock/numtheory.hpp"
#include "relblock/weights.hpp"

namespace relblock {

enum class FareyKind { Full, Boolean, LeftBounded, Poset };

/// Ascending sequence of irreducible fractions in [0,1] with 0/1 and 1/1 as
/// endpoints.  Four flavors:
///   Full        F_n: all denominators <= n
///   Boolean     members of F_n with numerator <= m and den-num <= n-m,
///               plus both endpoints unconditionally
///   LeftBounded members of F_n with numerator <= m
///   Poset       reduced ratios omega({b} meet {a}) / omega(b) over b != bottom
struct FareySeq {
  FareyKind kind = FareyKind::Full;
  int n = 0, m = 0;  // m unused for Full; both unused for Poset
  std::vector<Fraction> fractions;

  std::size_t size() const { return fractions.size(); }
  const Fraction& operator[](std::size_t i) const { return fractions.at(i); }

  std::optional<std::size_t> find(const Fraction& f) const {
    auto it = std::lower_bound(fractions.begin(), fractions.end(), f);
    if (it == fractions.end() || *it != f) return std::nullopt;
    return static_cast<std::size_t>(it - fractions.begin());
  }
  bool contains(const Fraction& f) const { return find(f).has_value(); }

  /// Largest member <= r; r in [0,1) so 0/1 always qualifies.
  Fraction floor_member(const Fraction& r) const {
    auto it = std::upper_bound(fractions.begin(), fractions.end(), r);
    if (it == fractions.begin()) throw std::domain_error("no member below the given value");
    return *(it - 1);
  }
};

namespace detail {

inline void check_farey_n(int n) {
  if (n < 1) throw std::domain_error("farey order must satisfy n >= 1");
}

inline void check_farey_nm(int n, int m) {
  check_farey_n(n);
  if (m < 0 || m > n) throw std::domain_error("farey parameter m must lie in [0, n]");
}

}  // namespace detail

inline bool farey_boolean_contains(int n, int m, const Fraction& f) {
  detail::check_farey_nm(n, m);
  if (f.is_zero() || f.is_one()) return true;
  return f.den() <= n && f.num() <= m && f.den() - f.num() <= n - m;
}

inline bool farey_left_contains(int n, int m, const Fraction& f) {
  detail::check_farey_nm(n, m);
  if (f.is_zero() || f.is_one()) return true;
  return f.den() <= n && f.num() <= m;
}

inline FareySeq farey_full(int n) {
  detail::check_farey_n(n);
  std::set<Fraction> acc;
  for (int k = 1; k <= n; ++k)
    for (int h = 0; h <= k; ++h)
      if (std::gcd(h, k) == 1) acc.emplace(h, k);
  return {FareyKind::Full, n, 0, std::vector<Fraction>(acc.begin(), acc.end())};
}

/// Membership-filtered generation; the recurrence generators below provide
/// the fast path and are pinned against this one in the tests.
inline FareySeq farey_boolean(int n, int m) {
  detail::check_farey_nm(n, m);
  FareySeq full = farey_full(n);
  FareySeq out{FareyKind::Boolean, n, m, {}};
  for (const Fraction& f : full.fractions)
    if (farey_boolean_contains(n, m, f)) out.fractions.push_back(f);
  return out;
}

inline FareySeq farey_left(int n, int m) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("left-bounded sequence needs m >= 1");
  FareySeq full = farey_full(n);
  FareySeq out{FareyKind::LeftBounded, n, m, {}};
  for (const Fraction& f : full.fractions)
    if (farey_left_contains(n, m, f)) out.fractions.push_back(f);
  return out;
}

/// Farey sequence attached to a poset element: the reduced meet-weight
/// ratios of all nonbottom elements against a, endpoints included.
template <PosetLike P>
FareySeq farey_poset(const P& p, Elem a, const WeightMap<P>& w) {
  detail::check_elem(p.size(), a);
  if (a == p.bottom()) throw std::domain_error("farey_poset needs a != bottom");
  std::set<Fraction> acc;
  acc.emplace(0, 1);
  acc.emplace(1, 1);
  for (Elem b = 0; b < p.size(); ++b) {
    if (b == p.bottom()) continue;
    acc.emplace(meet_weight(p, w, b, a), element_weight(p, w, b));
  }
  return {FareyKind::Poset, 0, 0, std::vector<Fraction>(acc.begin(), acc.end())};
}

namespace detail {

inline void check_interior(int n, int m, const Fraction& f) {
  if (m < 1 || m >= n) throw std::domain_error("neighbor formulas need 0 < m < n");
  if (f.is_zero() || f.is_one()) throw std::domain_error("fraction is at a boundary");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Boolean (two-sided constrained) subsequence: index, cardinality, neighbors.
// ---------------------------------------------------------------------------

/// Zero-based position of a member f < 1/1, counted as
///   sum_{j=1..n} #{ irreducible i/j : max{1, j+m-n} <= i <= min{m, floor(j*f)} }.
/// The lower bound j+m-n is the two-sided membership constraint.
inline std::int64_t boolean_index_of(int n, int m, const Fraction& f) {
  if (m < 1 || m >= n) throw std::domain_error("index formula needs 0 < m < n");
  if (!farey_boolean_contains(n, m, f) || f.is_one())
    throw std::domain_error("fraction is not an interior-or-zero member");
  std::int64_t t = 0;
  for (int j = 1; j <= n; ++j)
    t += coprime_count(j, std::max<std::int64_t>(1, j + m - n), std::min<std::int64_t>(m, f.floor_scaled(j)));
  return t;
}

/// Looser lower bound max{1, j + min{m, floor(j*f)} - n} kept for reference;
/// overcounts when the two-sided bound binds (n=6, m=3, f=1/2 gives 5, true
/// position 4).
inline std::int64_t boolean_index_of_loose_bound(int n, int m, const Fraction& f) {
  if (m < 1 || m >= n) throw std::domain_error("index formula needs 0 < m < n");
  if (!farey_boolean_contains(n, m, f) || f.is_one())
    throw std::domain_error("fraction is not an interior-or-zero member");
  std::int64_t t = 0;
  for (int j = 1; j <= n; ++j) {
    std::int64_t hi = std::min<std::int64_t>(m, f.floor_scaled(j));
    t += coprime_count(j, std::max<std::int64_t>(1, j + hi - n), hi);
  }
  return t;
}

/// Number of members:
///   1 + sum_{j=1..n} phi(j;[1,min{m,j}])
///     - sum_{j=ceil(n/2)+1..m} phi(j;[1,2j-n-1])
///     - sum_{j=n-m+2..n} phi(j;[1,j+m-n-1]).
inline std::int64_t boolean_cardinality(int n, int m) {
  if (m < 1 || m >= n) throw std::domain_error("cardinality formula needs 0 < m < n");
  std::int64_t t = 1;
  for (int j = 1; j <= n; ++j) t += coprime_count(j, 1, std::min(m, j));
  for (int j = (n + 1) / 2 + 1; j <= m; ++j) t -= coprime_count(j, 1, 2 * j - n - 1);
  for (int j = n - m + 2; j <= n; ++j) t -= coprime_count(j, 1, j + m - n - 1);
  return t;
}

namespace detail {

// Solves k*x == sign (mod h) within [m-h+1, m]; unique since the window
// spans h consecutive integers and gcd(h,k)=1.
inline std::int64_t neighbor_anchor(std::int64_t h, std::int64_t k, std::int64_t m, int sign) {
  std::int64_t target = ((sign * mod_inverse(k, h)) % h + h) % h;
  std::int64_t lo = m - h + 1;
  return lo + (((target - lo) % h) + h) % h;
}

}  // namespace detail

/// Neighbor of f = h/k in the boolean subsequence on the side given by
/// sign (-1: predecessor, +1: successor) via the anchor-and-translate rule.
inline Fraction boolean_neighbor(int n, int m, const Fraction& f, int sign) {
  detail::check_interior(n, m, f);
  if (!farey_boolean_contains(n, m, f)) throw std::domain_error("fraction is not a member");
  std::int64_t h = f.num(), k = f.den();
  if (h == 1) {
    // Closed form for fractions 1/k (every anchor solves the congruence);
    // k >= 2 here since 1/1 was excluded.
    std::int64_t c = m + std::min<std::int64_t>(0, floor_div(n - k * m + sign, k - 1));
    return Fraction(c, k * c - sign);
  }
  std::int64_t x0 = detail::neighbor_anchor(h, k, m, sign > 0 ? +1 : -1);
  std::int64_t y0 = (k * x0 - sign) / h;
  std::int64_t t = std::min({floor_div(m - x0, h), floor_div(n - y0, k), floor_div(n - m + x0 - y0, k - h)});
  return Fraction(x0 + t * h, y0 + t * k);
}

inline Fraction boolean_predecessor(int n, int m, const Fraction& f) {
  return boolean_neighbor(n, m, f, -1);
}
inline Fraction boolean_successor(int n, int m, const Fraction& f) {
  return boolean_neighbor(n, m, f, +1);
}

namespace detail {

inline void check_consecutive(const Fraction& a, const Fraction& b) {
  if (b.den() * a.num() >= a.den() * b.num())
    throw std::domain_error("pair must be ascending");
  if (a.den() * b.num() - a.num() * b.den() != 1)
    throw std::domain_error("pair is not consecutive (determinant != 1)");
}

}  // namespace detail

/// Given consecutive members f_j < f_{j+1} (f_{j+1} < 1/1), produces f_{j+2}:
///   t = floor min{ (h_j+m)/h_{j+1}, (k_j+n)/k_{j+1}, (k_j-h_j+n-m)/(k_{j+1}-h_{j+1}) },
///   f_{j+2} = (t*h_{j+1} - h_j) / (t*k_{j+1} - k_j).
inline Fraction boolean_next_from_pair(int n, int m, const Fraction& fj, const Fraction& fj1) {
  if (m < 1 || m >= n) throw std::domain_error("recurrence needs 0 < m < n");
  detail::check_consecutive(fj, fj1);
  if (fj1.is_one()) throw std::domain_error("no successor past 1/1");
  std::int64_t t = std::min({floor_div(fj.num() + m, fj1.num()), floor_div(fj.den() + n, fj1.den()),
                             floor_div(fj.den() - fj.num() + n - m, fj1.den() - fj1.num())});
  return Fraction(t * fj1.num() - fj.num(), t * fj1.den() - fj.den());
}

/// Given consecutive members f_{j+1} < f_{j+2} (f_{j+1} > 0/1), produces f_j.
inline Fraction boolean_prev_from_pair(int n, int m, const Fraction& fj1, const Fraction& fj2) {
  if (m < 1 || m >= n) throw std::domain_error("recurrence needs 0 < m < n");
  detail::check_consecutive(fj1, fj2);
  if (fj1.is_zero()) throw std::domain_error("no predecessor before 0/1");
  std::int64_t t = floor_div(fj2.den() + n, fj1.den());
  t = std::min(t, floor_div(fj2.num() + m, fj1.num()));
  if (fj1.den() - fj1.num() > 0)
    t = std::min(t, floor_div(fj2.den() - fj2.num() + n - m, fj1.den() - fj1.num()));
  return Fraction(t * fj1.num() - fj2.num(), t * fj1.den() - fj2.den());
}

// ---------------------------------------------------------------------------
// Left-bounded subsequence (numerator <= m only).
// ---------------------------------------------------------------------------

/// Position of a member f < 1/1 in the left-bounded sequence:
///   sum_{j=1..n} phi(j; [1, min{m, floor(j*f)}]).
inline std::int64_t left_index_of(int n, int m, const Fraction& f) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("left index needs m >= 1");
  if (!farey_left_contains(n, m, f) || f.is_one()) throw std::domain_error("fraction is not a member below 1/1");
  std::int64_t t = 0;
  for (int j = 1; j <= n; ++j)
    t += coprime_count(j, 1, std::min<std::int64_t>(m, f.floor_scaled(j)));
  return t;
}

/// Same position through the divisor-sum route:
///   -1 + sum_{d>=1} mobius(d) * ( floor(n/d) + sum_{j=1..floor(n/d)} min{floor(m/d), floor(j*f)} ).
inline std::int64_t left_index_of_divisor_form(int n, int m, const Fraction& f) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("left index needs m >= 1");
  if (!farey_left_contains(n, m, f) || f.is_one()) throw std::domain_error("fraction is not a member below 1/1");
  std::int64_t t = -1;
  for (int d = 1; d <= n; ++d) {
    int mu = mobius_natural(d);
    if (mu == 0) continue;
    std::int64_t nd = n / d, md = m / d;
    std::int64_t inner = nd;
    for (std::int64_t j = 1; j <= nd; ++j) inner += std::min(md, f.floor_scaled(j));
    t += mu * inner;
  }
  return t;
}

/// 1 + sum_{j=1..n} phi(j;[1,min{m,j}]).
inline std::int64_t left_cardinality(int n, int m) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("left cardinality needs m >= 1");
  std::int64_t t = 1;
  for (int j = 1; j <= n; ++j) t += coprime_count(j, 1, std::min(m, j));
  return t;
}

/// 1 + sum_{d>=1} mobius(d) * (floor(n/d) - floor(m/d)/2) * (floor(m/d) + 1);
/// evaluated in integers as (2*floor(n/d) - floor(m/d)) * (floor(m/d)+1) / 2.
inline std::int64_t left_cardinality_divisor_form(int n, int m) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("left cardinality needs m >= 1");
  std::int64_t t = 1;
  for (int d = 1; d <= n; ++d) {
    int mu = mobius_natural(d);
    if (mu == 0) continue;
    std::int64_t nd = n / d, md = m / d;
    t += mu * ((2 * nd - md) * (md + 1)) / 2;
  }
  return t;
}

/// Neighbor in the left-bounded sequence; only the numerator and denominator
/// caps constrain the translate, so the minimum has two terms.
inline Fraction left_neighbor(int n, int m, const Fraction& f, int sign) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("left neighbor needs m >= 1");
  if (f.is_zero() || f.is_one()) throw std::domain_error("fraction is at a boundary");
  if (!farey_left_contains(n, m, f)) throw std::domain_error("fraction is not a member");
  std::int64_t h = f.num(), k = f.den();
  if (h == 1) {
    if (n <= 1) throw std::domain_error("closed form needs n > 1");
    // Same shape as the two-sided closed form but the divisor is k itself.
    std::int64_t c = m + std::min<std::int64_t>(0, floor_div(n - k * m + sign, k));
    return Fraction(c, k * c - sign);
  }
  std::int64_t x0 = detail::neighbor_anchor(h, k, m, sign > 0 ? +1 : -1);
  std::int64_t y0 = (k * x0 - sign) / h;
  std::int64_t t = std::min(floor_div(m - x0, h), floor_div(n - y0, k));
  return Fraction(x0 + t * h, y0 + t * k);
}

inline Fraction left_predecessor(int n, int m, const Fraction& f) { return left_neighbor(n, m, f, -1); }
inline Fraction left_successor(int n, int m, const Fraction& f) { return left_neighbor(n, m, f, +1); }

/// Two-term variants of the pair recurrences for the left-bounded sequence.
inline Fraction left_next_from_pair(int n, int m, const Fraction& fj, const Fraction& fj1) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("recurrence needs m >= 1");
  detail::check_consecutive(fj, fj1);
  if (fj1.is_one()) throw std::domain_error("no successor past 1/1");
  std::int64_t t = std::min(floor_div(fj.num() + m, fj1.num()), floor_div(fj.den() + n, fj1.den()));
  return Fraction(t * fj1.num() - fj.num(), t * fj1.den() - fj.den());
}

inline Fraction left_prev_from_pair(int n, int m, const Fraction& fj1, const Fraction& fj2) {
  detail::check_farey_nm(n, m);
  if (m < 1) throw std::domain_error("recurrence needs m >= 1");
  detail::check_consecutive(fj1, fj2);
  if (fj1.is_zero()) throw std::domain_error("no predecessor before 0/1");
  std::int64_t t = std::min(floor_div(fj2.num() + m, fj1.num()), floor_div(fj2.den() + n, fj1.den()));
  return Fraction(t * fj1.num() - fj2.num(), t * fj1.den() - fj2.den());
}

}  // namespace relblock
