// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mtf/base_field.hpp"
#include "mtf/cyclotomic.hpp"
#include "mtf/matrix.hpp"

namespace mtf {

// Lattice model of the Weil representation of Sp(2n) over Q_p: the standard
// self-dual lattice Z_p^{2n} for the standard form and conductor-Z_p psi.
struct LatticeModel {
  Place place;
  std::size_t n;

  LatticeModel(const Int& p, std::size_t n_) : place(Place::padic(p)), n(n_) {}
  const Int& p() const { return place.p(); }
  PsiSpec psi() const { return PsiSpec(place); }
};

struct ThetaVal {
  CycNum value;
  long det_minus_val = 0;  // v_p(det(x - 1))
  std::uint64_t terms = 0;
};

bool in_K(const Mat& x, const LatticeModel& m);
// Reduction mod p has separable characteristic polynomial.
bool reduction_regular(const Mat& x, const LatticeModel& m);
// Characteristic polynomial is (T - 1)^{2n} mod p.
bool top_unipotent(const Mat& x, const LatticeModel& m);

// Sum of psi(<xw|w>/2) over w in (x-1)^{-1}L / L.
ThetaVal theta_lattice(const Mat& x, const LatticeModel& m);
// |det(x-1)|^{-1/2} gamma_psi(q[C_x]) for topologically unipotent x.
ThetaVal theta_via_cayley(const Mat& x, const LatticeModel& m);
// Theta(x) = gamma_psi(q[C_x]) |det(x+1)/det(x-1)|^{1/2} Theta(-x).
bool theta_ratio_check(const Mat& x, const LatticeModel& m);

// Block-diagonal embedding of symplectic blocks x_k in Sp(2n_k) into Sp(2n)
// for the standard form, n = sum n_k.
Mat sp_block_embed(const std::vector<Mat>& blocks);
// Theta of the embedded element equals the product of blockwise values.
bool theta_decompose(const std::vector<Mat>& blocks, const Int& p);

// p^{v/2} in a cyclotomic field.
CycNum p_half_power(const Int& p, long v);
// sum_{k < terms} X^k / k!  (exact when X^terms = 0).
Mat exp_truncated(const Mat& X, unsigned terms);

}  // namespace mtf
