// SPDX-License-Identifier: Apache-2.0
#include "mtf/symplectic.hpp"

#include <stdexcept>

namespace mtf {

Mat std_J(std::size_t n) {
  Mat J(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    J(i, n + i) = 1;
    J(n + i, i) = -1;
  }
  return J;
}

bool is_symplectic(const Mat& x) {
  if (!x.square() || x.rows() % 2) return false;
  Mat J = std_J(x.rows() / 2);
  return x.transpose() * J * x == J;
}

bool is_sp_lie(const Mat& X) {
  if (!X.square() || X.rows() % 2) return false;
  Mat J = std_J(X.rows() / 2);
  return (X.transpose() * J + J * X).is_zero();
}

Mat sp_inverse(const Mat& x) {
  Mat J = std_J(x.rows() / 2);
  return -(J * x.transpose() * J);
}

Mat doubled_form(std::size_t n) {
  Mat J = std_J(n);
  return block_diag({-J, J});
}

Lagrangian graph(const Mat& x) {
  if (!is_symplectic(x)) throw std::invalid_argument("graph: not a symplectic matrix");
  const std::size_t d = x.rows();
  Mat b(2 * d, d);
  b.set_block(0, 0, Mat::identity(d));
  b.set_block(d, 0, x);
  return Lagrangian{b};
}

bool is_lagrangian(const Lagrangian& l, const Mat& omega) {
  return 2 * l.basis.cols() == omega.rows() && rank(l.basis) == l.basis.cols() &&
         (l.basis.transpose() * omega * l.basis).is_zero();
}

Lagrangian lagrangian_from(const Mat& basis, const Mat& omega) {
  Lagrangian l{basis};
  if (!is_lagrangian(l, omega)) throw std::invalid_argument("not a lagrangian subspace");
  return l;
}

Lagrangian apply(const Mat& g, const Lagrangian& l) { return Lagrangian{g * l.basis}; }

Lagrangian direct_sum(const Lagrangian& a, const Lagrangian& b) {
  // (V1 + V2) with blocks ordered (V1, V2)
  return Lagrangian{block_diag({a.basis, b.basis})};
}

std::size_t dim_intersection(const std::vector<Lagrangian>& ls) {
  if (ls.empty()) return 0;
  Mat s = ls[0].basis;
  for (std::size_t i = 1; i < ls.size() && s.cols() > 0; ++i) s = intersect(s, ls[i].basis);
  return s.cols();
}

namespace {

// G restricted to a complement of its radical.
QForm radical_quotient(const Mat& G, const Place& place) {
  const std::size_t tot = G.rows();
  Mat K = kernel(G);
  Mat ext = hstack(K, Mat::identity(tot));
  Mat cs = column_space(ext);  // first K.cols() columns are K
  Mat C(tot, cs.cols() - K.cols());
  for (std::size_t j = K.cols(); j < cs.cols(); ++j) C.set_col(j - K.cols(), cs.col(j));
  return QForm(place, C.transpose() * G * C);
}

}  // namespace

QForm kashiwara_form(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3, const Mat& omega,
                     const Place& place) {
  const Lagrangian* L[3] = {&l1, &l2, &l3};
  std::size_t dims[3], off[3];
  std::size_t tot = 0;
  for (int i = 0; i < 3; ++i) {
    dims[i] = L[i]->basis.cols();
    off[i] = tot;
    tot += dims[i];
  }
  Mat G(tot, tot);
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3;
    Mat B = L[i]->basis.transpose() * omega * L[j]->basis * Rat(1, 2);
    G.set_block(off[i], off[j], G.block(off[i], off[j], dims[i], dims[j]) + B);
    G.set_block(off[j], off[i], G.block(off[j], off[i], dims[j], dims[i]) + B.transpose());
  }
  return radical_quotient(G, place);
}

QForm maslov_form(const std::vector<Lagrangian>& ls, const Mat& omega, const Place& place) {
  const std::size_t m = ls.size();
  if (m < 3) throw std::invalid_argument("Maslov index needs at least three lagrangians");
  std::vector<std::size_t> off(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) off[i + 1] = off[i] + ls[i].basis.cols();
  Mat sum(omega.rows(), off[m]);
  for (std::size_t i = 0; i < m; ++i) sum.set_block(0, off[i], ls[i].basis);
  Mat T(off[m], off[m]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) T.set_block(off[i], off[j], ls[i].basis.transpose() * omega.transpose() * ls[j].basis);
  const Mat K = kernel(sum);
  if (K.cols() == 0) return QForm::zero(place);
  return radical_quotient(K.transpose() * (T + T.transpose()) * K * Rat(1, 2), place);
}

WittClass maslov_witt(const std::vector<Lagrangian>& ls, const Mat& omega, const Place& place) {
  if (ls.size() < 3) throw std::invalid_argument("Maslov index needs at least three lagrangians");
  QForm acc = QForm::zero(place);
  for (std::size_t k = 1; k + 1 < ls.size(); ++k) acc = acc + kashiwara_form(ls[0], ls[k], ls[k + 1], omega, place);
  return witt_class(acc);
}

long maslov_dim(const std::vector<Lagrangian>& ls, const Mat& omega) {
  const long m = static_cast<long>(ls.size());
  if (m < 3) throw std::invalid_argument("Maslov index needs at least three lagrangians");
  long d = (m - 2) * static_cast<long>(omega.rows()) / 2;
  for (long i = 0; i < m; ++i) d -= static_cast<long>(dim_intersection({ls[static_cast<std::size_t>(i)], ls[static_cast<std::size_t>((i + 1) % m)]}));
  d += 2 * static_cast<long>(dim_intersection(ls));
  return d;
}

Mu8 cocycle_value(const Mat& g, const Mat& gp, const Lagrangian& l, const PsiSpec& psi) {
  Mat omega = std_J(g.rows() / 2);
  QForm t = kashiwara_form(l, apply(g, l), apply(g * gp, l), omega, psi.place);
  return weil_index(t, psi);
}

Mat cayley(const Mat& x) {
  const std::size_t n = x.rows();
  Mat I = Mat::identity(n);
  Mat xp = x + I;
  if (det(xp) == 0) throw std::domain_error("cayley: -1 is an eigenvalue");
  return (x - I) * inverse(xp) * Rat(2);
}

Mat cayley_inv(const Mat& X) {
  const std::size_t n = X.rows();
  Mat I2 = Mat::identity(n) * Rat(2);
  Mat d = I2 - X;
  if (det(d) == 0) throw std::domain_error("inverse cayley: 2 is an eigenvalue");
  return (I2 + X) * inverse(d);
}

QForm q_of_X(const Mat& X, const Place& place) {
  if (!is_sp_lie(X)) throw std::invalid_argument("q[X]: X is not in sp");
  if (det(X) == 0) throw std::domain_error("q[X]: X is singular");
  return QForm(place, X.transpose() * std_J(X.rows() / 2));
}

}  // namespace mtf
