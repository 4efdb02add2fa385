// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>

#include "mtf/rational.hpp"

namespace mtf {

// Univariate polynomial over Q, coefficients little-endian, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Vec coeffs);
  Poly(std::initializer_list<Rat> coeffs) : Poly(Vec(coeffs)) {}

  static Poly monomial(const Rat& c, std::size_t deg);
  static Poly constant(const Rat& c) { return Poly(Vec{c}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Vec& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Rat operator()(const Rat& t) const;
  Poly derivative() const;
  Poly monic() const;
  Poly compose(const Poly& inner) const;

  std::string str() const;

 private:
  void trim();
  Vec c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic, or zero

}  // namespace mtf
