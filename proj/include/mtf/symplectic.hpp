// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mtf/matrix.hpp"
#include "mtf/quadratic_form.hpp"

namespace mtf {

// Standard symplectic Gram J = [[0, I], [-I, 0]] on Q^{2n}.
Mat std_J(std::size_t n);
bool is_symplectic(const Mat& x);
bool is_sp_lie(const Mat& X);
Mat sp_inverse(const Mat& x);  // -J x^T J

// A lagrangian in a symplectic space (V, omega): columns span it.
struct Lagrangian {
  Mat basis;
};

// The form (-<,>) + <,> on W + W, of Gram diag(-J, J).
Mat doubled_form(std::size_t n);
Lagrangian graph(const Mat& x);
Lagrangian lagrangian_from(const Mat& basis, const Mat& omega);  // validates
bool is_lagrangian(const Lagrangian& l, const Mat& omega);
Lagrangian apply(const Mat& g, const Lagrangian& l);
Lagrangian direct_sum(const Lagrangian& a, const Lagrangian& b);

std::size_t dim_intersection(const std::vector<Lagrangian>& ls);

// Kashiwara's form q(x1,x2,x3) = <x1|x2> + <x2|x3> + <x3|x1> on l1+l2+l3,
// restricted to a complement of its radical.
QForm kashiwara_form(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3, const Mat& omega,
                     const Place& place);
// tau(l_1..l_m): x -> sum_{i<j} <x_j|x_i> on {(x_i) in l_1 + ... + l_m : sum x_i = 0}
// modulo its radical. Its rank is maslov_dim; for m = 3 it is Witt equivalent
// to kashiwara_form.
QForm maslov_form(const std::vector<Lagrangian>& ls, const Mat& omega, const Place& place);
// Witt class of tau from Kashiwara triples (l_1, l_k, l_{k+1}) and the chain condition.
WittClass maslov_witt(const std::vector<Lagrangian>& ls, const Mat& omega, const Place& place);
long maslov_dim(const std::vector<Lagrangian>& ls, const Mat& omega);

// gamma_psi(tau(l, g l, g g' l)).
Mu8 cocycle_value(const Mat& g, const Mat& gp, const Lagrangian& l, const PsiSpec& psi);

Mat cayley(const Mat& x);      // 2 (x - 1)(x + 1)^{-1}
Mat cayley_inv(const Mat& X);  // (2 + X)(2 - X)^{-1}
// q[X](w1|w2) = <X w1 | w2>, Gram X^T J.
QForm q_of_X(const Mat& X, const Place& place);

}  // namespace mtf
