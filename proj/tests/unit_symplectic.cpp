// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/symplectic.hpp"

using namespace mtf;

namespace {
const Place Q3 = Place::padic(3);
const Place Q5 = Place::padic(5);

Lagrangian line(const Rat& a, const Rat& b) { return Lagrangian{Mat{{a}, {b}}}; }
}  // namespace

TEST_CASE("standard form and lie algebra") {
  const Mat J = std_J(2);
  CHECK(is_symplectic(J));
  CHECK(is_symplectic(Mat::identity(4)));
  const Mat x{{2, 1}, {1, 1}};
  CHECK(is_symplectic(x));
  CHECK(sp_inverse(x) * x == Mat::identity(2));
  CHECK(is_sp_lie(Mat{{3, 1}, {7, -3}}));
  CHECK_FALSE(is_sp_lie(Mat{{1, 0}, {0, 1}}));
}

TEST_CASE("lagrangians") {
  const Mat J = std_J(1);
  CHECK(is_lagrangian(line(1, 0), J));
  CHECK_THROWS(lagrangian_from(Mat{{1, 0}, {0, 1}}, J));
  const Mat D = doubled_form(1);
  CHECK(is_lagrangian(graph(Mat{{2, 1}, {1, 1}}), D));
  CHECK(is_lagrangian(graph(-Mat::identity(2)), D));
  CHECK(dim_intersection({line(1, 0), line(2, 0)}) == 1);
  CHECK(dim_intersection({line(1, 0), line(0, 1)}) == 0);
}

TEST_CASE("kashiwara triple on the plane") {
  const Mat J = std_J(1);
  const Lagrangian x = line(1, 0), y = line(0, 1), d = line(1, 1);
  const QForm m = maslov_form({x, y, d}, J, Q5);
  CHECK(m.rank() == 1);
  CHECK(maslov_dim({x, y, d}, J) == 1);
  CHECK(witt_equal(kashiwara_form(x, y, d, J, Q5), m));
  CHECK(maslov_witt({x, y, d}, J, Q5) == witt_class(m));
  CHECK(kashiwara_form(x, x, x, J, Q5).rank() == 0);
  // reversing the triple negates the class
  CHECK(witt_equal(maslov_form({d, y, x}, J, Q5), m.negated()));
}

TEST_CASE("maslov dimension") {
  const Mat J = std_J(1);
  const Lagrangian l = line(1, 2);
  for (std::size_t m = 3; m <= 5; ++m) CHECK(maslov_dim(std::vector<Lagrangian>(m, l), J) == 0);
  const Lagrangian ll = direct_sum(line(1, 0), line(1, 0));
  CHECK(maslov_dim({graph(-Mat::identity(2)), graph(Mat::identity(2)), ll}, doubled_form(1)) == 0);
}

TEST_CASE("cocycle values") {
  const PsiSpec psi(Q3);
  const Lagrangian l = Lagrangian{Mat{{1, 0}, {0, 1}, {0, 0}, {0, 0}}};
  const Mat g{{1, 0, 3, 1}, {0, 1, 1, 2}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const Mat h{{0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}};
  REQUIRE(is_symplectic(g));
  REQUIRE(is_symplectic(h));
  CHECK(cocycle_value(Mat::identity(4), h, l, psi) == Mu8::one());
  // g and s stabilize l
  const Mat s = block_diag({Mat{{2, 1}, {1, 1}}, Mat{{1, -1}, {-1, 2}}});
  REQUIRE(is_symplectic(s));
  CHECK(cocycle_value(s, s, l, psi) == Mu8::one());
  CHECK(cocycle_value(s * s, s, l, psi) == Mu8::one());
  CHECK(cocycle_value(g, s, l, psi) == Mu8::one());
}

TEST_CASE("cayley transform") {
  CHECK(cayley(Mat::identity(2)).is_zero());
  for (const Rat a : {Rat(2), Rat(5), parse_rat("3/7")}) {
    const Rat t = 2 * (a - 1) / (a + 1);
    CHECK(cayley(Mat::diag({a, 1 / a})) == Mat::diag({t, -t}));
  }
  const Mat x{{2, 1}, {1, 1}};
  CHECK(cayley_inv(cayley(x)) == x);
  CHECK(is_sp_lie(cayley(x)));
}

TEST_CASE("q of X") {
  const Mat X{{0, 3}, {5, 0}};
  const QForm q = q_of_X(X, Q5);
  CHECK(q.gram() == Mat::diag({Rat(-5), Rat(3)}));
  CHECK_THROWS(q_of_X(Mat{{0, 1}, {0, 0}}, Q5));
}
