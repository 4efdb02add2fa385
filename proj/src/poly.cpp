// SPDX-License-Identifier: Apache-2.0
#include "mtf/poly.hpp"

#include <stdexcept>

namespace mtf {

Poly::Poly(Vec coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(const Rat& c, std::size_t deg) {
  Vec v(deg + 1, Rat(0));
  v[deg] = c;
  return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
  Vec v(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Poly(std::move(v));
}

Poly Poly::operator-() const {
  Vec v = c_;
  for (auto& x : v) x = -x;
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  Vec v(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& s) const {
  Vec v = c_;
  for (auto& x : v) x *= s;
  return Poly(std::move(v));
}

Rat Poly::operator()(const Rat& t) const {
  Rat acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  Vec v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(v));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / lead();
  return *this * inv;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * inner + Poly::constant(c_[i]);
  return acc;
}

std::string Poly::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ",";
    s += to_string(c_[i]);
  }
  return s + "]";
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Vec r = a.coeffs();
  long db = b.degree();
  long da = a.degree();
  if (da < db) return {Poly(), a};
  Vec q(static_cast<std::size_t>(da - db + 1), Rat(0));
  Rat inv = 1 / b.lead();
  for (long k = da; k >= db; --k) {
    Rat c = r[static_cast<std::size_t>(k)] * inv;
    q[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace mtf
