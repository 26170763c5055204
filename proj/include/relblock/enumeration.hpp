#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "relblock/blockers.hpp"
#include "relblock/fraction.hpp"

namespace relblock {

/// Least integer strictly greater than r*k:
/// ceil(r*k) when r*k is not an integer, r*k + 1 otherwise.
inline Weight least_integer_above(const Fraction& r, Weight k) {
  if (k < 0) throw std::domain_error("least_integer_above needs k >= 0");
  // floor(r*k) + 1 is ceil(r*k) off the integers and r*k + 1 on them.
  return (r.num() * k) / r.den() + 1;
}

/// Binomial or Gaussian-binomial evaluator [j over i].  q = 1 selects the
/// ordinary binomial; other q values are meaningful for subspace counting.
/// Values are computed by the Pascal-type recursion
///   C_q(j,i) = C_q(j-1,i-1) + q^i * C_q(j-1,i)
/// in 128 bits and must fit a signed 64-bit result.
class Bracket {
 public:
  explicit Bracket(std::int64_t q = 1) : q_(q) {
    if (q < 1) throw std::domain_error("bracket base must satisfy q >= 1");
  }

  std::int64_t q() const { return q_; }

  std::int64_t operator()(std::int64_t j, std::int64_t i) const {
    if (j < 0) throw std::domain_error("bracket needs j >= 0");
    if (i < 0 || i > j) return 0;
    __int128 value = gaussian(j, i);
    if (value > INT64_MAX) throw std::overflow_error("bracket value exceeds 64 bits");
    return static_cast<std::int64_t>(value);
  }

 private:
  __int128 gaussian(std::int64_t j, std::int64_t i) const {
    std::vector<__int128> row(static_cast<std::size_t>(j) + 1, 0);
    row[0] = 1;
    for (std::int64_t level = 1; level <= j; ++level) {
      for (std::int64_t col = std::min(level, i); col >= 1; --col) {
        __int128 qpow = 1;
        for (std::int64_t e = 0; e < col; ++e)
          if (__builtin_mul_overflow(qpow, static_cast<__int128>(q_), &qpow))
            throw std::overflow_error("bracket overflow");
        __int128 scaled;
        if (__builtin_mul_overflow(qpow, row[col], &scaled) ||
            __builtin_add_overflow(row[col - 1], scaled, &row[col]))
          throw std::overflow_error("bracket overflow");
      }
    }
    return row[i];
  }

  std::int64_t q_;
};

inline std::int64_t binomial(std::int64_t j, std::int64_t i) { return Bracket(1)(j, i); }
inline std::int64_t gaussian_binomial(std::int64_t j, std::int64_t i, std::int64_t q) {
  return Bracket(q)(j, i);
}

/// Layered decomposition of the blocking set under the max-rank weight:
/// for every k with least_integer_above(r,k) <= min member rank, the layer-k
/// part equals  layer(k) & filter(absolute_blocker(nu(r,k)-1, A)).
/// The union over k is the whole blocking set.
template <PosetLike P>
std::map<Weight, ElemSet> decompose_layers(const P& p, const Antichain& a, const Fraction& r) {
  detail::check_threshold(r);
  if (!p.is_graded()) throw capability_error("decompose_layers needs a graded poset");
  if (a.is_trivial(p)) throw std::domain_error("decompose_layers needs a nontrivial antichain");
  WeightMap<P> w = WeightMap<P>::max_rank();
  int min_rank = p.height();
  for (Elem g : a.members()) min_rank = std::min(min_rank, p.rank(g));

  std::map<Weight, ElemSet> out;
  for (Weight k = 1; k <= p.height(); ++k) {
    Weight nu = least_integer_above(r, k);
    if (nu > min_rank) continue;
    Antichain bound = absolute_blocker(p, w, nu - 1, a);
    out.emplace(k, layer(p, static_cast<int>(k)) & filter(p, bound.members()));
  }
  return out;
}

namespace detail {

template <PosetLike P>
void check_count_inputs(const P& p, const Antichain& a, Weight k) {
  if (a.is_trivial(p)) throw std::domain_error("count needs a nontrivial antichain");
  if (k < 1 || k > p.height()) throw std::domain_error("count layer outside [1, height]");
  if (a.size() > 12) throw guard_error("antichain too large for subset enumeration (|A| <= 12)");
}

inline int min_rank_of(const BooleanLattice& p, const Antichain& a) {
  int r = p.height();
  for (Elem g : a.members()) r = std::min(r, p.rank(g));
  return r;
}

}  // namespace detail

/// |blocking elements of rank k| in a Boolean lattice, by double inclusion-
/// exclusion: over nonempty generator subsets C, then over nonempty subsets
/// E of the level-nu part of ideal(C), each contributing
/// (-1)^(|E|-1) * bracket(n - rank(join E), n - k).
/// The bracket is a parameter; correctness is only claimed for the ordinary
/// binomial on B(n).
inline std::int64_t count_blocking_incl_excl(const BooleanLattice& p, const Antichain& a,
                                             const Fraction& r, Weight k,
                                             const Bracket& bracket = Bracket(1)) {
  detail::check_threshold(r);
  detail::check_count_inputs(p, a, k);
  int n = p.height();
  Weight nu = least_integer_above(r, k);
  if (nu > detail::min_rank_of(p, a)) return 0;

  // Level-nu elements below at least one generator, with per-generator masks.
  std::vector<Elem> level;
  std::vector<std::uint32_t> below_mask;  // bit g: level element below a.members()[g]
  for (Elem x = 0; x < p.size(); ++x) {
    if (p.rank(x) != nu) continue;
    std::uint32_t mask = 0;
    for (std::size_t g = 0; g < a.size(); ++g)
      if (p.leq(x, a.members()[g])) mask |= (1u << g);
    if (mask != 0) {
      level.push_back(x);
      below_mask.push_back(mask);
    }
  }
  if (level.size() > 20) throw guard_error("level slice too large for subset enumeration (<= 20)");

  std::int64_t total = 0;
  for (std::uint32_t c = 1; c < (1u << a.size()); ++c) {
    // X_C: level elements below some generator in C.
    std::vector<Elem> xc;
    for (std::size_t i = 0; i < level.size(); ++i)
      if (below_mask[i] & c) xc.push_back(level[i]);
    std::int64_t inner = 0;
    for (std::uint64_t e = 1; e < (std::uint64_t{1} << xc.size()); ++e) {
      Elem join = 0;
      for (std::size_t i = 0; i < xc.size(); ++i)
        if (e & (std::uint64_t{1} << i)) join |= xc[i];
      std::int64_t term = bracket(n - p.rank(join), n - k);
      inner += (std::popcount(e) % 2 == 1) ? term : -term;
    }
    total += (std::popcount(c) % 2 == 1) ? inner : -inner;
  }
  return total;
}

/// Lattice of the distinct slices  level_nu & ideal(C)  over C subsets of A,
/// ordered by inclusion.  Elements are stored as sorted member lists;
/// id 0 is the empty slice (the bottom).
class SliceLattice {
 public:
  std::size_t size() const { return slices_.size(); }
  bool leq(Elem x, Elem y) const {
    const auto& a = slices_[x];
    const auto& b = slices_[y];
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  Elem bottom() const { return 0; }
  Elem top() const { return top_; }
  bool is_graded() const { return false; }
  int rank(Elem) const { throw capability_error("slice lattice carries no rank"); }
  int height() const { throw capability_error("slice lattice carries no rank"); }

  const std::vector<Elem>& slice(Elem id) const { return slices_[id]; }

  static SliceLattice build(const BooleanLattice& p, const Antichain& a, Weight nu) {
    if (a.is_trivial(p)) throw std::domain_error("slice lattice needs a nontrivial antichain");
    if (a.size() > 12) throw guard_error("antichain too large for subset enumeration (|A| <= 12)");
    SliceLattice lat;
    std::vector<std::vector<Elem>> acc;
    for (std::uint32_t c = 0; c < (1u << a.size()); ++c) {
      std::vector<Elem> slice;
      for (Elem x = 0; x < p.size(); ++x) {
        if (p.rank(x) != nu) continue;
        for (std::size_t g = 0; g < a.size(); ++g)
          if ((c & (1u << g)) && p.leq(x, a.members()[g])) {
            slice.push_back(x);
            break;
          }
      }
      acc.push_back(std::move(slice));
    }
    std::sort(acc.begin(), acc.end(),
              [](const auto& l, const auto& r) { return l.size() < r.size() || (l.size() == r.size() && l < r); });
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    lat.slices_ = std::move(acc);
    // The slice for C = A contains every other slice and sorts last.
    lat.top_ = static_cast<Elem>(lat.slices_.size() - 1);
    return lat;
  }

 private:
  std::vector<std::vector<Elem>> slices_;
  Elem top_ = 0;
};

/// Join closure of a same-rank antichain X inside a Boolean lattice, with a
/// synthetic bottom below the generators.  id 0 is the synthetic bottom;
/// ids >= 1 carry host masks.
class JoinClosureLattice {
 public:
  std::size_t size() const { return members_.size() + 1; }
  bool leq(Elem x, Elem y) const {
    if (x == 0) return true;
    if (y == 0) return false;
    Elem mx = members_[x - 1], my = members_[y - 1];
    return (mx & ~my) == 0;
  }
  Elem bottom() const { return 0; }
  Elem top() const { return top_; }
  bool is_graded() const { return false; }
  int rank(Elem) const { throw capability_error("join closure carries no uniform rank"); }
  int height() const { throw capability_error("join closure carries no uniform rank"); }

  /// Host rank of a non-bottom element.
  int host_rank(Elem id) const { return std::popcount(members_.at(id - 1)); }
  std::size_t member_count() const { return members_.size(); }

  static JoinClosureLattice build(const BooleanLattice& p, const std::vector<Elem>& gens) {
    if (gens.empty()) throw std::domain_error("join closure needs generators");
    for (Elem g : gens) detail::check_elem(p.size(), g);
    std::vector<Elem> closure = gens;
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    // Saturate under pairwise joins (bitwise OR in the host).
    for (bool grew = true; grew;) {
      grew = false;
      std::size_t count = closure.size();
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) {
          Elem join = closure[i] | closure[j];
          if (!std::binary_search(closure.begin(), closure.end(), join)) {
            closure.insert(std::lower_bound(closure.begin(), closure.end(), join), join);
            grew = true;
          }
        }
    }
    JoinClosureLattice lat;
    lat.members_ = std::move(closure);
    Elem top_mask = 0;
    for (Elem g : gens) top_mask |= g;
    for (std::size_t i = 0; i < lat.members_.size(); ++i)
      if (lat.members_[i] == top_mask) lat.top_ = static_cast<Elem>(i + 1);
    return lat;
  }

 private:
  std::vector<Elem> members_;
  Elem top_ = 0;
};

/// |blocking elements of rank k| through Moebius functions of the two
/// auxiliary lattices:
///   sum over slices X > bottom of  mu_C(0,X) *
///     sum over closure elements z > bottom with rank(z) <= k of
///       mu_E(0,z) * bracket(n - rank(z), n - k).
inline std::int64_t count_blocking_mobius(const BooleanLattice& p, const Antichain& a,
                                          const Fraction& r, Weight k,
                                          const Bracket& bracket = Bracket(1)) {
  detail::check_threshold(r);
  detail::check_count_inputs(p, a, k);
  int n = p.height();
  Weight nu = least_integer_above(r, k);
  if (nu > detail::min_rank_of(p, a)) return 0;

  SliceLattice slices = SliceLattice::build(p, a, nu);
  std::int64_t total = 0;
  for (Elem x = 0; x < slices.size(); ++x) {
    if (x == slices.bottom()) continue;
    std::int64_t mu_c = mobius(slices, slices.bottom(), x);
    if (mu_c == 0) continue;
    JoinClosureLattice closure = JoinClosureLattice::build(p, slices.slice(x));
    std::int64_t inner = 0;
    for (Elem z = 1; z < closure.size(); ++z) {
      int rz = closure.host_rank(z);
      if (rz > k) continue;
      std::int64_t mu_e = mobius(closure, closure.bottom(), z);
      inner += mu_e * bracket(n - rz, n - k);
    }
    total += mu_c * inner;
  }
  return total;
}

/// Direct definition scan; the reference route the closed-form counters are
/// checked against.
inline std::int64_t count_blocking_brute(const BooleanLattice& p, const Antichain& a,
                                         const Fraction& r, Weight k) {
  detail::check_threshold(r);
  detail::check_count_inputs(p, a, k);
  WeightMap<BooleanLattice> w = WeightMap<BooleanLattice>::max_rank();
  return static_cast<std::int64_t>(blocking_layer(p, w, r, a, k).count());
}

/// Number of rank-k elements of the rank-n subspace lattice over GF(q) whose
/// meet with a fixed rank-m element has rank >= h:
///   sum_{j=h..k} C_q(m,j) * C_q(n-m,k-j) * q^((m-j)(k-j)).
inline std::int64_t subspace_count_meet_at_least(int n, int m, int k, int h, std::int64_t q) {
  if (n < 0 || m < 0 || m > n || k < 0 || k > n || h < 0)
    throw std::domain_error("subspace count needs 0 <= m,k <= n and h >= 0");
  Bracket bracket(q);
  __int128 total = 0;
  for (int j = h; j <= k; ++j) {
    __int128 term = static_cast<__int128>(bracket(m, j)) * bracket(n - m, k - j);
    __int128 qpow = 1;
    for (std::int64_t e = 0; e < static_cast<std::int64_t>(m - j) * (k - j); ++e) qpow *= q;
    total += term * qpow;
  }
  if (total > INT64_MAX) throw std::overflow_error("subspace count exceeds 64 bits");
  return static_cast<std::int64_t>(total);
}

/// Single term of the sum above: meet rank exactly h.
inline std::int64_t subspace_count_meet_exact(int n, int m, int k, int h, std::int64_t q) {
  if (n < 0 || m < 0 || m > n || k < 0 || k > n || h < 0)
    throw std::domain_error("subspace count needs 0 <= m,k <= n and h >= 0");
  if (h > k) return 0;
  Bracket bracket(q);
  __int128 term = static_cast<__int128>(bracket(m, h)) * bracket(n - m, k - h);
  __int128 qpow = 1;
  for (std::int64_t e = 0; e < static_cast<std::int64_t>(m - h) * (k - h); ++e) qpow *= q;
  term *= qpow;
  if (term > INT64_MAX) throw std::overflow_error("subspace count exceeds 64 bits");
  return static_cast<std::int64_t>(term);
}

}  // namespace relblock
