// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/base_field.hpp"
#include "mtf/oracles.hpp"

using namespace mtf;

namespace {
const Place Q3 = Place::padic(3);
const Place Q5 = Place::padic(5);
const Place R = Place::real();
}  // namespace

TEST_CASE("place rejects 2 and composites") {
  CHECK_THROWS(Place::padic(2));
  CHECK_THROWS(Place::padic(9));
  CHECK(Place::padic(11).p() == 11);
}

TEST_CASE("valuation") {
  CHECK(valuation(parse_rat("50/3"), Q5) == 2);
  CHECK(valuation(Rat(0), Q5) == kValInf);
  CHECK(valuation(parse_rat("7/27"), Q3) == -3);
  CHECK_THROWS(valuation(Rat(5), R));
}

TEST_CASE("valuation of a ramified uniformizer") {
  // x^2 - 3 over Q_3
  auto k = LocalField::tower(3, {0, 1}, {Vec{Rat(-3)}, Vec{Rat(0)}, Vec{Rat(1)}});
  CHECK(k->e() == 2);
  CHECK(k->valuation(k->uniformizer()) == 1);
  CHECK(k->valuation(k->from_rat(3)) == 2);
}

TEST_CASE("residue_unit") {
  // 2 * 3^{-1} mod 5
  Int want = (2 * 2) % 5;
  CHECK(residue_unit(parse_rat("50/3"), Q5) == want);
  CHECK(residue_unit(Rat(1), Q5) == 1);
  CHECK(residue_unit(Rat(5), Q5) == 1);
  CHECK_THROWS(residue_unit(Rat(0), Q5));
}

TEST_CASE("is_square") {
  CHECK(is_square(Rat(-1), Q5));
  CHECK_FALSE(is_square(Rat(-1), R));
  CHECK_FALSE(is_square(Rat(3), Q3));
  CHECK_FALSE(is_square(Rat(2), Q5));
  CHECK(is_square(parse_rat("4/9"), Q3));
  // Euler criterion oracle on units mod 7
  const Place q7 = Place::padic(7);
  for (int a = 1; a < 7; ++a) {
    Int e;
    mpz_powm_ui(e.get_mpz_t(), Int(a).get_mpz_t(), 3, Int(7).get_mpz_t());
    CHECK(is_square(Rat(a), q7) == (e == 1));
  }
}

TEST_CASE("hilbert symbol against the conic oracle") {
  CHECK(hilbert(2, 5, Q5) == -1);
  CHECK(hilbert(-1, -1, R) == -1);
  CHECK(hilbert(3, 3, Q3) == -1);
  CHECK(oracle::hilbert_conic(2, 5, 5) == -1);
  CHECK(oracle::hilbert_conic(3, 3, 3) == -1);
  for (long p : {3L, 5L, 7L}) {
    const Place pl = Place::padic(p);
    for (int a : {1, 2, 3, 5, 6, 7, 10, 14, 15, 21}) {
      for (int b : {-1, 2, 3, -5, 7, 11}) {
        CHECK(hilbert(a, b, pl) == oracle::hilbert_conic(a, b, p));
      }
    }
  }
}

TEST_CASE("weil_index_rank1") {
  const PsiSpec psi5(Q5), psir(R);
  CHECK(weil_index_rank1(1, psi5) == Mu8::one());
  CHECK(weil_index_rank1(1, psir) == Mu8(1));
  CHECK(weil_index_rank1(-1, psir) == Mu8(-1));
  CHECK(weil_index_rank1(9, psi5) == weil_index_rank1(1, psi5));
  for (long p : {3L, 5L, 7L, 11L}) {
    const PsiSpec psi(Place::padic(p));
    for (int a : {1, 2, 3, 5, 6, 7, 10, 11, 22})
      CHECK(weil_index_rank1(a, psi) == oracle::weil_index_gauss(a, p));
  }
}

TEST_CASE("least_nonresidue") {
  CHECK(least_nonresidue(3) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(least_nonresidue(41) == 3);
}
