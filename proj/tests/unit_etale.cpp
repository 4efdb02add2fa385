// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/etale.hpp"

using namespace mtf;

namespace {
const Place Q5 = Place::padic(5);

LocalFieldPtr q5() { return LocalField::rationals(Q5); }
EtaleFactor inert(const Rat& d) { return EtaleFactor::make_inert(q5(), Vec{d}); }
EtaleElem elem(std::initializer_list<std::pair<int, int>> xs) {
  EtaleElem z;
  for (auto [a, b] : xs) z.parts.emplace_back(Vec{Rat(a)}, Vec{Rat(b)});
  return z;
}
}  // namespace

TEST_CASE("inert factor needs a nonsquare") {
  CHECK_THROWS(inert(Rat(4)));
  CHECK_THROWS(inert(Rat(-1)));
  CHECK_NOTHROW(inert(Rat(2)));
}

TEST_CASE("involution, norm and trace") {
  const EtaleAlg A({inert(2), EtaleFactor::make_split(q5())});
  const EtaleElem x = elem({{3, 2}, {4, 7}});
  CHECK(A.tau(x) == elem({{3, -2}, {7, 4}}));
  auto n = A.norm_to_sharp(x);
  CHECK(n[0] == Vec{Rat(1)});
  CHECK(n[1] == Vec{Rat(28)});
  CHECK(A.trace_to_F(x) == 6 + 11);
  CHECK(A.norm_to_F(x) == 1 * 28);
  CHECK(A.dim_F() == 4);
  CHECK(A.inert_indices() == std::vector<std::size_t>{0});
  CHECK(A.mul(x, A.inv(x)) == A.one());
}

TEST_CASE("sign character") {
  const EtaleAlg split({EtaleFactor::make_split(q5())});
  CHECK(split.sgn_char(split.from_rat(5)) == 1);
  CHECK(split.sgn_char(split.from_rat(2)) == 1);
  const EtaleAlg K({inert(2)});
  CHECK(K.sgn_char(K.from_rat(5)) == hilbert(5, 2, Q5));
  CHECK(K.sgn_char(K.from_rat(5)) == -1);
  CHECK(K.sgn_char(K.from_rat(3)) == 1);
  for (auto [a, b] : {std::pair{1, 1}, {3, 5}, {0, 5}, {7, 0}}) {
    const EtaleElem z = elem({{a, b}});
    auto n = K.norm_to_sharp(z);
    CHECK(K.sgn_char(K.from_rat(n[0][0])) == 1);
  }
}

TEST_CASE("characteristic polynomial and derivative") {
  const EtaleAlg K({inert(2)});
  const EtaleElem r2 = elem({{0, 1}});
  CHECK(K.char_poly(r2) == Poly{Rat(-2), Rat(0), Rat(1)});
  CHECK(K.deriv_eval(r2) == elem({{0, 2}}));
  CHECK(K.eval(K.char_poly(r2), r2) == K.zero());
}

TEST_CASE("matrix realization") {
  ClassParam q;
  q.epsilon = -1;
  q.mode = ParamMode::Lie;
  q.alg = EtaleAlg({inert(2)});
  q.a = elem({{0, 1}});
  q.c = elem({{0, 1}});
  const Realization r = matrix_realization(q);
  CHECK(r.gram.is_antisymmetric());
  CHECK(det(r.gram) != 0);
  CHECK(r.op * r.op == Mat::identity(2) * Rat(2));
  // the operator is skew for the realized form
  CHECK((r.op.transpose() * r.gram + r.gram * r.op).is_zero());

  ClassParam bad = q;
  bad.c = elem({{1, 0}});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

namespace {
ClassParam two_inert(int eps) {
  ClassParam q;
  q.epsilon = eps;
  q.mode = ParamMode::Lie;
  q.alg = EtaleAlg({inert(2), inert(3)});
  q.a = elem({{0, 1}, {0, 1}});
  q.c = eps == -1 ? elem({{0, 1}, {0, 1}}) : elem({{1, 0}, {1, 0}});
  return q;
}
}  // namespace

TEST_CASE("stable orbits") {
  CHECK(stable_orbit(GroupKind::Sp, two_inert(-1)).size() == 4);
  CHECK(stable_orbit(GroupKind::SOeven, two_inert(1)).size() == 2);
  ClassParam s;
  s.epsilon = -1;
  s.mode = ParamMode::Lie;
  s.alg = EtaleAlg({EtaleFactor::make_split(q5())});
  s.a = elem({{2, -2}});
  s.c = elem({{1, -1}});
  CHECK(stable_orbit(GroupKind::Sp, s).size() == 1);
}

TEST_CASE("class existence") {
  ClassParam q;
  q.epsilon = 1;
  q.mode = ParamMode::Lie;
  q.alg = EtaleAlg({inert(2)});
  q.a = elem({{0, 1}});
  q.c = elem({{1, 0}});
  CHECK(class_exists(GroupKind::SOeven, q, q.c));
  ClassParam t = q;
  t.c = elem({{5, 0}});
  CHECK_FALSE(class_exists(GroupKind::SOeven, t, q.c));
  ClassParam sp = two_inert(-1);
  ClassParam sp2 = sp;
  sp2.c = elem({{0, 5}, {0, 1}});
  CHECK(class_exists(GroupKind::Sp, sp2, sp.c));
}

TEST_CASE("invariant vector and kappa") {
  ClassParam sp = two_inert(-1);
  ClassParam sp2 = sp;
  sp2.c = elem({{0, 5}, {0, 1}});
  CHECK(invariant_vector(sp, sp2) == std::vector<int>{-1, 1});
  CHECK(kappa_pair({1, 1}, {1, 1}) == 1);
  CHECK(kappa_pair({1}, {1, -1}) == -1);
  CHECK(kappa_pair({-1, -1}, {1}) == 1);
  CHECK(kappa_pair({}, {-1, -1}) == 1);
}
