// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/oracles.hpp"
#include "mtf/symplectic.hpp"
#include "mtf/weil_character.hpp"

using namespace mtf;

namespace {
const CycNum one(Rat(1));
}

TEST_CASE("membership predicates") {
  const LatticeModel m3(3, 1), m5(5, 1);
  CHECK(in_K(Mat::identity(2), m3));
  CHECK(top_unipotent(Mat::identity(2), m3));
  CHECK_FALSE(in_K(Mat::diag({Rat(3), parse_rat("1/3")}), m3));
  const Mat x{{1, 3}, {3, 10}};
  CHECK(top_unipotent(x, m3));
  CHECK_FALSE(reduction_regular(x, m3));
  CHECK(reduction_regular(Mat::diag({Rat(2), parse_rat("1/2")}), m5));
  CHECK_FALSE(reduction_regular(Mat::diag({Rat(-1), Rat(-1)}), m5));
}

TEST_CASE("theta on unimodular and regular elements") {
  const LatticeModel m5(5, 1);
  const Mat x = Mat::diag({Rat(3), parse_rat("1/3")});
  CHECK(theta_lattice(x, m5).value == one);
  CHECK(theta_lattice(-Mat::identity(2), m5).value == one);
  CHECK(theta_lattice(-Mat::identity(4), LatticeModel(3, 2)).value == one);
  const Mat r = Mat::diag({Rat(2), parse_rat("1/2")});
  CHECK(theta_lattice(r, m5).value == one);
  CHECK(theta_lattice(-r, m5).value == one);
}

TEST_CASE("keystone on a topologically unipotent element") {
  const LatticeModel m(3, 1);
  const Mat x{{1, 3}, {3, 10}};
  const ThetaVal a = theta_lattice(x, m);
  const ThetaVal b = theta_via_cayley(x, m);
  CHECK(a.det_minus_val == 2);
  CHECK(a.value == b.value);
  CHECK(a.value == oracle::theta_brute(x, m));
  const Mu8 g = weil_index(q_of_X(cayley(x), m.place), m.psi());
  CHECK(a.value == CycNum::from_mu8(g) * Rat(3));
  CHECK(p_half_power(3, 2) == CycNum(Rat(3)));
  CHECK(theta_lattice(-x, m).value == one);
  CHECK(theta_ratio_check(x, m));
}

TEST_CASE("block decomposition") {
  const Mat u = Mat::diag({Rat(2), parse_rat("1/2")});
  CHECK(theta_decompose({u, u}, 5));
  CHECK(theta_decompose({u, -Mat::identity(2)}, 5));
  const Mat e = sp_block_embed({u, -Mat::identity(2)});
  CHECK(is_symplectic(e));
  CHECK(theta_lattice(e, LatticeModel(5, 2)).value == one);
}
