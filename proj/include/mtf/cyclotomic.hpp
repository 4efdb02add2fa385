// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtf/mu8.hpp"
#include "mtf/rational.hpp"

namespace mtf {

// Element of Q(zeta_N), zeta_N = exp(2 pi i / N), stored in the power basis
// 1, zeta, ..., zeta^{phi(N)-1} reduced modulo Phi_N.
class CycNum {
 public:
  static constexpr std::uint64_t kMaxLevel = 8ull * 11 * 11 * 11 * 11;

  CycNum() : CycNum(Rat(0)) {}
  explicit CycNum(const Rat& r, std::uint64_t level = 1);

  static CycNum zeta(std::uint64_t level, std::int64_t k);
  static CycNum from_mu8(Mu8 m);
  // sum_k counts[k] zeta_N^k, k in [0, N)
  static CycNum from_exponent_counts(std::uint64_t level, const std::vector<Rat>& counts);

  std::uint64_t level() const { return N_; }
  const Vec& coeffs() const { return c_; }

  CycNum raise(std::uint64_t level) const;

  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator-() const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator*(const Rat& s) const;
  CycNum operator*(Mu8 m) const { return *this * from_mu8(m); }
  CycNum inv() const;
  CycNum conj() const;
  bool operator==(const CycNum& o) const;
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  bool is_zero() const { return mtf::is_zero(c_); }
  bool is_rational(Rat* out = nullptr) const;

  std::string str() const;

 private:
  std::uint64_t N_ = 1;
  Vec c_;
};

// x * conj(x); throws if the result is not rational.
Rat abs_square(const CycNum& x);
// The eighth root of unity equal to x; throws if none.
Mu8 as_mu8(const CycNum& x);
// Positive square root of p as an element of Q(zeta_p) or Q(zeta_{4p}).
CycNum sqrt_p(const Int& p);
// Quadratic Gauss sum sum_{x mod p} chi(x) zeta_p^x (test and cross-check helper).
CycNum gauss_sum_legendre(const Int& p);

std::uint64_t euler_phi(std::uint64_t n);

}  // namespace mtf
