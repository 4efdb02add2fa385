// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/oracles.hpp"
#include "mtf/quadratic_form.hpp"

using namespace mtf;

namespace {
const Place Q5 = Place::padic(5);
const Place R = Place::real();

bool same_square_class(const Rat& a, const Rat& b, const Place& pl) { return is_square(a / b, pl); }
}  // namespace

TEST_CASE("diagonalize") {
  const QForm h(Q5, Mat{{0, 1}, {1, 0}});
  Vec d = diagonalize(h);
  REQUIRE(d.size() == 2);
  CHECK(same_square_class(-d[0] * d[1], Rat(1), Q5));
  CHECK(is_hyperbolic(QForm::diagonal(Q5, d)));

  const Vec e{Rat(2), Rat(3), Rat(7)};
  CHECK(diagonalize(QForm::diagonal(Q5, e)) == e);

  const QForm q(R, Mat{{2, 1}, {1, 2}});
  Vec c = diagonalize(q);
  REQUIRE(c.size() == 2);
  CHECK(isometric(QForm::diagonal(R, c), QForm::diagonal(R, {Rat(2), parse_rat("3/2")})));
  CHECK(isometric(QForm::diagonal(Q5, c), QForm::diagonal(Q5, {Rat(2), parse_rat("3/2")})) ==
        isometric(QForm(Q5, q.gram()), QForm::diagonal(Q5, {Rat(2), parse_rat("3/2")})));
}

TEST_CASE("hasse and determinant") {
  CHECK(hasse(QForm::diagonal(Q5, {Rat(1), Rat(-1)})) == 1);
  CHECK(hasse(QForm::diagonal(Q5, {Rat(5), Rat(5)})) == oracle::hilbert_conic(5, 5, 5));
  CHECK(hasse(QForm::diagonal(Q5, {Rat(5), Rat(5)})) == 1);
  CHECK(hasse(QForm::diagonal(Q5, {Rat(2), Rat(5)})) == -1);
  CHECK(same_square_class(det_class(QForm::diagonal(Q5, {Rat(2), Rat(3)})), Rat(6), Q5));
  CHECK(signature(QForm::diagonal(R, {Rat(1), Rat(-2), Rat(3)})) == 1);
}

TEST_CASE("weil index of forms") {
  const PsiSpec psi5(Q5), psir(R);
  CHECK(weil_index(QForm::hyperbolic(Q5), psi5) == Mu8::one());
  CHECK(weil_index(QForm::hyperbolic(R, 3), psir) == Mu8::one());
  CHECK(weil_index(QForm::diagonal(R, {Rat(1), Rat(1), Rat(1), Rat(1)}), psir) == Mu8(4));
  const QForm a = QForm::diagonal(Q5, {Rat(2), Rat(5)});
  const QForm b = QForm::diagonal(Q5, {Rat(3), parse_rat("1/5"), Rat(10)});
  CHECK(weil_index(a + b, psi5) == weil_index(a, psi5) * weil_index(b, psi5));
  CHECK(weil_index(a, psi5) == oracle::weil_index_gauss(2, 5) * oracle::weil_index_gauss(5, 5));
}

TEST_CASE("witt classes") {
  CHECK(is_hyperbolic(QForm::diagonal(Q5, {Rat(1), Rat(-1)})));
  CHECK(witt_class(QForm::diagonal(Q5, {Rat(1), Rat(-1)})) == witt_class(QForm::zero(Q5)));
  CHECK(isometric(QForm::diagonal(Q5, {Rat(1), Rat(1)}), QForm::diagonal(Q5, {Rat(2), Rat(2)})));
  CHECK_FALSE(isometric(QForm::diagonal(Q5, {Rat(1), Rat(1)}), QForm::diagonal(Q5, {Rat(1), Rat(2)})));
  const QForm q = QForm::diagonal(Q5, {Rat(2), Rat(15), parse_rat("7/5")});
  CHECK(witt_equal(q, q + QForm::hyperbolic(Q5)));
  // -1 is a square in Q5 but not in Q3
  CHECK(witt_equal(q, q.negated()));
  const QForm q3 = QForm::diagonal(Place::padic(3), {Rat(2), Rat(15), parse_rat("7/5")});
  CHECK_FALSE(witt_equal(q3, q3.negated()));
  CHECK(is_hyperbolic(q + q.negated()));
  // over R only the signature survives
  CHECK(isometric(QForm::diagonal(R, {Rat(3), Rat(-7)}), QForm::diagonal(R, {Rat(1), Rat(-1)})));
}

TEST_CASE("trace forms") {
  // Q[T]/(T^2 - 2), inert at 5
  const QAlgebra A = QAlgebra::monogenic(Poly{Rat(-2), Rat(0), Rat(1)});
  const QForm t(Q5, trace_gram(A, A.one()));
  CHECK(same_square_class(det_class(t), Rat(-2), Q5));
  CHECK(same_square_class(det(t.gram()), Rat(8), Q5));

  // split algebra Q x Q as Q[T]/(T^2 - 1)
  const QAlgebra S = QAlgebra::monogenic(Poly{Rat(-1), Rat(0), Rat(1)});
  CHECK(is_hyperbolic(QForm(Q5, trace_gram(S, Vec{Rat(0), Rat(1)}))));
}

TEST_CASE("dual basis traces") {
  // degree one: P_b = T - beta
  const QAlgebra A = QAlgebra::monogenic(Poly{Rat(-3), Rat(1)});
  auto g = dual_basis_traces(A, A.from_rat(3), Poly{Rat(-3), Rat(1)});
  REQUIRE(g.size() == 1);
  CHECK(g[0] == A.one());

  // degree three: tr(b^k g_s / P'(b)) = delta_{k,s}
  const Poly P{Rat(-2), Rat(1), Rat(0), Rat(1)};
  const QAlgebra C = QAlgebra::monogenic(P);
  const Vec b = C.basis(1);
  auto h = dual_basis_traces(C, b, P);
  REQUIRE(h.size() == 3);
  const Vec dp_inv = C.inv(C.eval(P.derivative(), b));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t s = 0; s < 3; ++s)
      CHECK(C.trace(C.mul(C.mul(C.pow(b, static_cast<long>(k)), h[s]), dp_inv)) == (k == s ? 1 : 0));
}

TEST_CASE("q1 and q2 closed forms") {
  const Poly P{Rat(3), Rat(-1), Rat(0), Rat(1)};
  const QAlgebra A = QAlgebra::monogenic(P);
  const Vec b = A.basis(1);
  for (long p : {3L, 5L, 7L}) {
    const Place pl = Place::padic(p);
    auto [q1, q2] = q1_q2_classes(pl, A, b);
    CHECK(q1.rank() == 3);
    CHECK(q2.rank() == 3);
    CHECK(isometric(q1, QForm::hyperbolic(pl) + QForm::diagonal(pl, {Rat(1)})));
    CHECK(isometric(q2, QForm::hyperbolic(pl) + QForm::diagonal(pl, {A.norm(b)})));
  }
}

TEST_CASE("q1 and q2 in even degree") {
  const Poly P{Rat(5), Rat(1), Rat(1), Rat(0), Rat(1)};
  const QAlgebra A = QAlgebra::monogenic(P);
  const Vec b = A.basis(1);
  const Rat N = A.norm(b);
  for (long p : {3L, 7L}) {
    const Place pl = Place::padic(p);
    auto [q1, q2] = q1_q2_classes(pl, A, b);
    CHECK(isometric(q1, QForm::hyperbolic(pl, 2)));
    CHECK(isometric(q2, QForm::hyperbolic(pl) + QForm::diagonal(pl, {Rat(1), -N})));
  }
}
