#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

#include "relblock/core.hpp"

namespace relblock {

/// Exact nonnegative rational h/k in lowest terms, k >= 1.
/// Serves both as a Farey sequence member (then 0 <= h <= k) and as a
/// blocking threshold (then 0 <= h/k < 1); comparisons never overflow for
/// the magnitudes arising here (cross products are taken in 128 bits).
class Fraction {
 public:
  constexpr Fraction() : num_(0), den_(1) {}

  Fraction(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ <= 0) throw std::domain_error("fraction denominator must be positive");
    if (num_ < 0) throw std::domain_error("fraction numerator must be nonnegative");
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == den_; }
  bool is_integer() const { return den_ == 1; }

  friend bool operator==(const Fraction& a, const Fraction& b) = default;

  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// h/k -> (k-h)/k; requires h <= k.
  Fraction complement() const {
    if (num_ > den_) throw std::domain_error("complement needs a fraction <= 1");
    return Fraction(den_ - num_, den_);
  }

  // Freshman sum (h'+h'')/(k'+k''), reduced.
  static Fraction mediant(const Fraction& a, const Fraction& b) {
    return Fraction(a.num_ + b.num_, a.den_ + b.den_);
  }

  /// floor(j * h/k) for j >= 0.
  std::int64_t floor_scaled(std::int64_t j) const {
    if (j < 0) throw std::domain_error("floor_scaled needs j >= 0");
    return (j * num_) / den_;
  }

  /// True iff j * h/k is an integer.
  bool scaled_is_integer(std::int64_t j) const { return (j * num_) % den_ == 0; }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Parses "h/k"; plain integers are rejected (the interface is always h/k).
  static Fraction parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size())
      throw std::invalid_argument("fraction must look like h/k: '" + std::string(text) + "'");
    auto to_int = [](std::string_view part) {
      std::int64_t value = 0;
      if (part.empty() || part.size() > 18) throw std::invalid_argument("bad fraction component");
      for (char c : part) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad fraction component");
        value = value * 10 + (c - '0');
      }
      return value;
    };
    return Fraction(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

 private:
  std::int64_t num_, den_;
};

}  // namespace relblock
