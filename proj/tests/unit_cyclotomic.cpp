// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/cyclotomic.hpp"
#include "mtf/mu8.hpp"

using namespace mtf;

namespace {
// sum_{x mod p} zeta_p^{x^2}, expanded term by term
CycNum quadratic_gauss(std::uint64_t p) {
  CycNum s(Rat(0), p);
  for (std::uint64_t x = 0; x < p; ++x) s = s + CycNum::zeta(p, static_cast<std::int64_t>((x * x) % p));
  return s;
}
}  // namespace

TEST_CASE("roots of unity") {
  CHECK(CycNum::zeta(8, 1) * CycNum::zeta(8, 7) == CycNum(Rat(1)));
  CHECK(CycNum::zeta(3, 1).conj() == CycNum::zeta(3, 2));
  CHECK(CycNum::zeta(4, 2) == CycNum(Rat(-1)));
  CHECK(CycNum::zeta(6, 1) * CycNum::zeta(6, 1) == CycNum::zeta(3, 1));
}

TEST_CASE("gauss sums") {
  const CycNum g5 = quadratic_gauss(5);
  Rat r;
  REQUIRE((g5 * g5).is_rational(&r));
  CHECK(r == 5);
  CHECK(abs_square(g5) == 5);
  const CycNum g3 = quadratic_gauss(3);
  REQUIRE((g3 * g3).is_rational(&r));
  CHECK(r == -3);
  CHECK(gauss_sum_legendre(7) == quadratic_gauss(7));
}

TEST_CASE("sqrt_p") {
  for (long p : {3L, 5L, 7L, 11L}) {
    const CycNum s = sqrt_p(p);
    Rat r;
    REQUIRE((s * s).is_rational(&r));
    CHECK(r == p);
  }
}

TEST_CASE("abs_square") {
  CHECK(abs_square(CycNum::zeta(8, 1)) == 1);
  CHECK(abs_square(CycNum(Rat(1), 4) + CycNum::zeta(4, 1)) == 2);
}

TEST_CASE("as_mu8") {
  CHECK(as_mu8(CycNum(Rat(-1))) == Mu8(4));
  CHECK(as_mu8(CycNum::zeta(8, 3)) == Mu8(3));
  CHECK(as_mu8(CycNum::zeta(4, 1)) == Mu8(2));
  CHECK_THROWS(as_mu8(CycNum(Rat(2))));
  CHECK_THROWS(as_mu8(CycNum::zeta(3, 1)));
}

TEST_CASE("inverse and exponent counts") {
  const CycNum z = CycNum(Rat(2), 5) + CycNum::zeta(5, 1);
  CHECK(z * z.inv() == CycNum(Rat(1)));
  const CycNum w = CycNum::from_exponent_counts(5, {Rat(1), Rat(0), Rat(2), Rat(0), Rat(0)});
  CHECK(w == CycNum(Rat(1), 5) + CycNum::zeta(5, 2) * Rat(2));
}

TEST_CASE("mu8 group law") {
  CHECK(Mu8(3) * Mu8(5) == Mu8::one());
  CHECK(Mu8(3).inv() == Mu8(5));
  CHECK(Mu8(3).pow(8) == Mu8::one());
  CHECK(Mu8::from_sign(-1) == Mu8(4));
  CHECK(CycNum::from_mu8(Mu8(2)) == CycNum::zeta(4, 1));
}

TEST_CASE("euler_phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(20) == 8);
}
