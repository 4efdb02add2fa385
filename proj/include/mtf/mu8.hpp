// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace mtf {

// Eighth root of unity zeta8^k, zeta8 = exp(2*pi*i/8).
struct Mu8 {
  int k = 0;

  constexpr Mu8() = default;
  constexpr explicit Mu8(int e) : k(((e % 8) + 8) % 8) {}

  static constexpr Mu8 one() { return Mu8(0); }
  static constexpr Mu8 from_sign(int s) { return Mu8(s < 0 ? 4 : 0); }

  constexpr Mu8 operator*(Mu8 o) const { return Mu8(k + o.k); }
  constexpr Mu8& operator*=(Mu8 o) { return *this = *this * o; }
  constexpr Mu8 inv() const { return Mu8(-k); }
  constexpr Mu8 pow(long e) const { return Mu8(static_cast<int>((static_cast<long>(k) * (e % 8)) % 8)); }
  constexpr bool operator==(const Mu8&) const = default;

  std::string str() const { return "zeta8^" + std::to_string(k); }
};

}  // namespace mtf
