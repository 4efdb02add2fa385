// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include "mtf/transfer.hpp"

using namespace mtf;

namespace {
const Place Q3 = Place::padic(3);

EtaleElem elem(std::initializer_list<std::pair<int, int>> xs) {
  EtaleElem z;
  for (auto [a, b] : xs) z.parts.emplace_back(Vec{Rat(a)}, Vec{Rat(b)});
  return z;
}

ClassParam group_param(const Place& pl, int d, std::pair<int, int> a) {
  ClassParam q;
  q.epsilon = 1;
  q.mode = ParamMode::Group;
  q.alg = EtaleAlg({EtaleFactor::make_inert(LocalField::rationals(pl), Vec{Rat(d)})});
  q.a = elem({a});
  q.c = elem({{1, 0}});
  q.validate();
  return q;
}
}  // namespace

TEST_CASE("delta0 by hand over Q3") {
  // K' = Q3(sqrt2), a' = 3 + 2 sqrt2, P_{a'} = T^2 - 6T + 1; b'' = 7 + 4 sqrt3 in Q3(sqrt3).
  // P_{a'}(b'') (-b'')^{-1} = -8, N(1 + a') = 8, so alpha'' = -64 and (-64, 3)_3 = -1.
  const ClassParam p1 = group_param(Q3, 2, {3, 2});
  const ClassParam p2 = group_param(Q3, 3, {-7, -4});
  CHECK(delta0_data(p1.alg, p1.a, p2.alg, elem({{7, 4}})) == -1);
  const CorrespondencePair pair = correspond(HClassParam{p1, p2});
  CHECK(pair.gamma.datum() == EndoDatum{1, 1});
  CHECK(pair.a_second() == elem({{7, 4}}));
  CHECK(delta0(pair) == -1);
  CHECK(delta0_reciprocity_check(pair));
}

TEST_CASE("delta0 trivial cases") {
  const ClassParam p1 = group_param(Q3, 2, {3, 2});
  CHECK(delta0(correspond(HClassParam{p1, ClassParam{}})) == 1);
  CHECK(delta0(correspond(HClassParam{ClassParam{}, p1})) == 1);
  CHECK(delta0_reciprocity_check(correspond(HClassParam{p1, ClassParam{}})));

  ClassParam s;
  s.epsilon = 1;
  s.mode = ParamMode::Group;
  s.alg = EtaleAlg({EtaleFactor::make_split(LocalField::rationals(Q3))});
  s.a = EtaleElem{{{Vec{Rat(4)}, Vec{parse_rat("1/4")}}}};
  s.c = elem({{1, 1}});
  s.validate();
  CHECK(delta0(correspond(HClassParam{p1, s})) == 1);
}

TEST_CASE("correspondence rejects colliding spectra") {
  const ClassParam p1 = group_param(Q3, 2, {3, 2});
  const ClassParam p2 = group_param(Q3, 2, {-3, -2});
  CHECK_THROWS(correspond(HClassParam{p1, p2}));
}

TEST_CASE("cocycle twists") {
  const ClassParam p1 = group_param(Q3, 2, {3, 2});
  const ClassParam p2 = group_param(Q3, 3, {-7, -4});
  const CorrespondencePair pair = correspond(HClassParam{p1, p2});
  const TwistResult same = delta0_cocycle_twist(pair, {1, 1});
  CHECK(same.kappa == 1);
  CHECK(same.consistent());
  CHECK(delta0_cocycle_twist(pair, {-1, 1}).kappa == 1);
  const TwistResult flip = delta0_cocycle_twist(pair, {1, -1});
  CHECK(flip.kappa == -1);
  CHECK(flip.delta0_invariant);
}

TEST_CASE("parabolic descent") {
  const ClassParam p1 = group_param(Q3, 2, {3, 2});
  const ClassParam p2 = group_param(Q3, 3, {-7, -4});
  const CorrespondencePair pair = correspond(HClassParam{p1, p2});
  CHECK(parabolic_descent_check(pair, {Rat(4)}, {}));
  CHECK(parabolic_descent_check(pair, {}, {Rat(10)}));
  CHECK(parabolic_descent_check(pair, {Rat(4), Rat(7)}, {Rat(10)}));
}

TEST_CASE("lie descent factors") {
  ClassParam s;
  s.epsilon = -1;
  s.mode = ParamMode::Lie;
  s.alg = EtaleAlg({EtaleFactor::make_split(LocalField::rationals(Place::padic(5)))});
  s.a = elem({{2, -2}});
  s.c = elem({{1, -1}});
  CHECK(lie_descent_plus(s, Poly{Rat(-7), Rat(0), Rat(1)}) == 1);

  // K'' = Q5(sqrt2), a'' = 3 sqrt2, c'' = z sqrt2, X_u = (3 sqrt2) over L = Q(sqrt2):
  // the argument is sqrt2 / (z sqrt2) = 1/z.
  ClassParam k;
  k.epsilon = -1;
  k.mode = ParamMode::Lie;
  k.alg = EtaleAlg({EtaleFactor::make_inert(LocalField::rationals(Place::padic(5)), Vec{Rat(2)})});
  k.a = elem({{0, 3}});
  const QuadExt L{Rat(2), false};
  const std::vector<std::vector<LNum>> xu{{LNum{Rat(0), Rat(3)}}};
  for (int z : {1, 5, 3}) {
    k.c = elem({{0, z}});
    CHECK(lie_descent_u(k, L, xu) == hilbert(Rat(1, z), 2, Place::padic(5)));
  }
  k.c = elem({{0, 5}});
  CHECK(lie_descent_u(k, L, xu) == -1);
  CHECK(lie_descent_u(k, QuadExt{Rat(1), true}, xu) == 1);
  CHECK_THROWS(lie_descent_u(k, L, xu, LNum{Rat(1), Rat(0)}));
  CHECK_THROWS(lie_descent_u(k, L, {{LNum{Rat(0), Rat(2)}}}));
}

TEST_CASE("mobius identity") {
  const Poly P{Rat(2), Rat(-3), Rat(0), Rat(1)};
  CHECK(mobius_check(P, Rat(1), Rat(2), Rat(3), Rat(5)));
  CHECK(mobius_check(P, Rat(2), Rat(-1), Rat(1), Rat(1)));
}

TEST_CASE("real place sign") {
  const CirclePoint w1{parse_rat("3/5"), parse_rat("4/5")};
  const CirclePoint w2{parse_rat("-3/5"), parse_rat("4/5")};
  CHECK(delta_R({w1}, {w2}) == 1);
  CHECK(delta_R({w2}, {w1}) == -1);
  CHECK(delta_R({}, {w2}) == 1);
  CHECK(delta_R({w1}, {}) == 1);
  CHECK(delta0_real({w1}, {w2}) == delta_R({w1}, {w2}));
  CHECK(delta0_real({w2}, {w1}) == delta_R({w2}, {w1}));
}

TEST_CASE("product formula") {
  const ProductFormula split = product_formula_delta0({RationalFactor{Rat(2), Rat(3), Rat(2)}},
                                                      {RationalFactor{Rat(1), parse_rat("5/4"), parse_rat("3/4")}});
  for (const auto& [place, s] : split.local) CHECK(s == 1);
  CHECK(split.complement_2 == 1);

  const ProductFormula pf = product_formula_delta0({RationalFactor{Rat(2), Rat(3), Rat(2)}},
                                                   {RationalFactor{Rat(3), Rat(-7), Rat(-4)}});
  CHECK(pf.stable);
  int prod = pf.complement_2;
  for (const auto& [place, s] : pf.local) prod *= s;
  CHECK(prod == 1);
}
