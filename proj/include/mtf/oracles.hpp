// SPDX-License-Identifier: Apache-2.0
#pragma once

// Brute-force routes used only to cross-check the closed forms.

#include <vector>

#include "mtf/cyclotomic.hpp"
#include "mtf/quadratic_form.hpp"
#include "mtf/symplectic.hpp"
#include "mtf/weil_character.hpp"

namespace mtf::oracle {

// Primitive solution of z^2 = a x^2 + b y^2 modulo p^3, a and b integers of
// valuation 0 or 1.
bool conic_solvable_mod_p3(const Int& a, const Int& b, long p);
// Hilbert symbol at odd p through the conic; a, b are first reduced to
// integer square-class representatives of valuation 0 or 1.
int hilbert_conic(const Rat& a, const Rat& b, long p);

// 2-adic Hilbert symbol from the unit-part parities.
int hilbert2(const Rat& a, const Rat& b);

// Weil index of <a> normalized by an exact quadratic Gauss sum: odd p over
// Z/p^k, and p = 2 over Z/2^k.
Mu8 weil_index_gauss(const Rat& a, long p);
Mu8 weil_index2(const Rat& a);
Mu8 weil_index2(const QForm& q);

// Direct sum over (x-1)^{-1}L/L obtained by scanning p^{-v}L/L.
CycNum theta_brute(const Mat& x, const LatticeModel& m);

}  // namespace mtf::oracle
