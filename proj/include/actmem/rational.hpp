/* Copyright 2026 The actmem Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ACTMEM_RATIONAL_HPP_
#define ACTMEM_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace actmem {

// Exact rational number with a positive, reduced denominator. Pointer
// velocities and savings fractions are kept in this form so that floor/ceil
// never drift over long cycle counts.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT
  constexpr Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t l = std::lcm(a.den_, b.den_);
    return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
  }
  friend constexpr Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    return Rational((a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1)),
                    (a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1)));
  }
  friend constexpr Rational operator/(const Rational& a, const Rational& b) {
    return a * Rational(b.den_, b.num_);
  }
  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend constexpr std::strong_ordering operator<=>(const Rational& a,
                                                    const Rational& b) {
    // Denominators are positive, so cross multiplication keeps the order.
    return static_cast<__int128>(a.num_) * b.den_ <=>
           static_cast<__int128>(b.num_) * a.den_;
  }

  constexpr double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// floor(a / b) and ceil(a / b) for b > 0, valid for negative a.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  const std::int64_t q = a / b;
  return (a % b != 0 && a > 0) ? q + 1 : q;
}

// floor(r * t) and ceil(r * t) without materialising the product as a
// Rational, so t can be as large as the cycle count of a full layer.
constexpr std::int64_t floor_mul(const Rational& r, std::int64_t t) {
  const __int128 p = static_cast<__int128>(r.num()) * t;
  const __int128 q = p / r.den();
  return static_cast<std::int64_t>((p % r.den() != 0 && p < 0) ? q - 1 : q);
}
constexpr std::int64_t ceil_mul(const Rational& r, std::int64_t t) {
  const __int128 p = static_cast<__int128>(r.num()) * t;
  const __int128 q = p / r.den();
  return static_cast<std::int64_t>((p % r.den() != 0 && p > 0) ? q + 1 : q);
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num();
  if (r.den() != 1) os << '/' << r.den();
  return os;
}

}  // namespace actmem

#endif  // ACTMEM_RATIONAL_HPP_
