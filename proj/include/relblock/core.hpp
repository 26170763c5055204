#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relblock {

// Dense element handle within one poset; ids run 0..size()-1.
// For BooleanLattice the id *is* the subset mask.
using Elem = std::uint32_t;

// Weight-map values: integers >= -1 (-1 only for the empty antichain).
using Weight = std::int64_t;

// Subset of a poset's elements, universe size == poset size.
using ElemSet = boost::dynamic_bitset<>;

// Requested computation exceeds a documented resource guard.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation needs a structural capability the poset lacks (e.g. rank data).
struct capability_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr std::size_t npos = ElemSet::npos;

template <class F>
void for_each_member(const ElemSet& s, F&& f) {
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i))
    f(static_cast<Elem>(i));
}

inline std::vector<Elem> to_vector(const ElemSet& s) {
  std::vector<Elem> out;
  out.reserve(s.count());
  for_each_member(s, [&](Elem e) { out.push_back(e); });
  return out;
}

inline ElemSet set_of(std::size_t universe, const std::vector<Elem>& elems) {
  ElemSet s(universe);
  for (Elem e : elems) {
    if (e >= universe) throw std::out_of_range("element id outside poset");
    s.set(e);
  }
  return s;
}

// Floored division for b > 0 (C++ '/' truncates toward zero).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

}  // namespace relblock
