// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mtf/base_field.hpp"
#include "mtf/matrix.hpp"
#include "mtf/mu8.hpp"

namespace mtf {

// Nondegenerate quadratic form x -> x^T G x over Q, viewed at a place.
class QForm {
 public:
  QForm(Place place, Mat gram);  // gram symmetric, det != 0
  static QForm diagonal(Place place, const Vec& d);
  static QForm hyperbolic(Place place, std::size_t copies = 1);
  static QForm zero(Place place);

  const Place& place() const { return place_; }
  const Mat& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }

  QForm scaled(const Rat& t) const;
  QForm negated() const { return scaled(Rat(-1)); }
  QForm operator+(const QForm& o) const;  // orthogonal sum

 private:
  Place place_;
  Mat gram_;
};

// Witt class: anisotropic kernel invariants. For the real place the
// signature determines everything; rank/det/hasse describe the kernel.
struct WittClass {
  Place place;
  int rank = 0;
  Rat det = 1;  // canonical square-class representative (1 for rank 0)
  int hasse = 1;
  int signature = 0;  // real place only
  bool operator==(const WittClass& o) const {
    return place == o.place && rank == o.rank && det == o.det && hasse == o.hasse && signature == o.signature;
  }
  std::string str() const;
};

Vec diagonalize(const QForm& q);  // diagonal entries of an isometric form
Rat square_class(const Rat& x, const Place& pl);  // canonical representative
std::vector<Rat> square_class_reps(const Place& pl);
Rat det_class(const QForm& q);
int hasse(const QForm& q);
int hasse_of_diag(const Vec& d, const Place& pl);
int signature(const QForm& q);
Mu8 weil_index(const QForm& q, const PsiSpec& psi);
Mu8 weil_index_diag(const Vec& d, const PsiSpec& psi);
WittClass witt_class(const QForm& q);
bool witt_equal(const QForm& a, const QForm& b);
bool is_hyperbolic(const QForm& q);
bool isometric(const QForm& a, const QForm& b);

// Gram of x -> tr_{A/Q}(r * x^2) on a commutative Q-algebra A.
Mat trace_gram(const QAlgebra& A, const Vec& r);

// Dual basis data for K# = Q[b]: returns g_0..g_{n-1} (as elements of Q[b])
// with g_k = sum_{j>k} h_j b^{j-k-1}, where P_b = sum h_j T^j.
std::vector<Vec> dual_basis_traces(const QAlgebra& A, const Vec& b, const Poly& Pb);

// q1 = tr_*<Pb'(b)^{-1}>, q2 = tr_*<b^{-1} Pb'(b)^{-1}> on Q[b] at a place.
std::pair<QForm, QForm> q1_q2_classes(const Place& pl, const QAlgebra& A, const Vec& b);

}  // namespace mtf
