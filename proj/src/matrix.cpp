// SPDX-License-Identifier: Apache-2.0
#include "mtf/matrix.hpp"

#include <stdexcept>

#include "mtf/poly.hpp"

namespace mtf {

Mat::Mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (const auto& row : rows) {
    if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& x : row) a_.push_back(x);
  }
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::diag(const Vec& d) {
  Mat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Mat Mat::column(const Vec& v) {
  Mat m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(std::size_t i) const { return Vec(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_)); }

void Mat::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool Mat::is_symmetric() const { return square() && *this == transpose(); }
bool Mat::is_antisymmetric() const { return square() && *this == -transpose(); }

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch in +");
  Mat m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch in *");
  Mat m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const Rat& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

Vec Mat::operator*(const Vec& v) const {
  if (c_ != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  Vec out(r_, Rat(0));
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k)
      if (v[k] != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

Mat Mat::operator*(const Rat& s) const {
  Mat m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Mat m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Rat det(Mat m) {
  if (!m.square()) throw std::invalid_argument("det of non-square matrix");
  const std::size_t n = m.rows();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Rat inv = 1 / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::size_t rank(Mat m) { return rref(m).size(); }

Mat inverse(const Mat& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Mat aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Mat::identity(n));
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] >= n) throw std::domain_error("singular matrix");
  return aug.block(0, n, n, n);
}

Mat kernel(const Mat& m) {
  Mat e = m;
  auto piv = rref(e);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    Vec v(m.cols(), Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -e(r, f);
    basis.push_back(std::move(v));
  }
  Mat k(m.cols(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) k.set_col(j, basis[j]);
  return k;
}

Mat column_space(const Mat& m) {
  Mat e = m;
  auto piv = rref(e);
  Mat out(m.rows(), piv.size());
  for (std::size_t j = 0; j < piv.size(); ++j) out.set_col(j, m.col(piv[j]));
  return out;
}

Mat intersect(const Mat& a, const Mat& b) {
  // a x = b y  <=>  [a | -b] (x; y) = 0
  Mat ab = hstack(a, -b);
  Mat k = kernel(ab);
  Mat out = a * k.block(0, 0, a.cols(), k.cols());
  return column_space(out);
}

Vec solve(const Mat& m, const Vec& b) { return inverse(m) * b; }

Poly charpoly(const Mat& a) {
  if (!a.square()) throw std::invalid_argument("charpoly of non-square matrix");
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier
  Vec c(n + 1, Rat(0));
  c[n] = 1;
  Mat mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    Mat amk = a * mk;
    c[n - k] = -trace(amk) / Rat(static_cast<long>(k));
  }
  return Poly(std::move(c));
}

Mat mat_pow(const Mat& m, unsigned long e) {
  Mat r = Mat::identity(m.rows());
  Mat b = m;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Mat block_diag(const std::vector<Mat>& blocks) {
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    nr += b.rows();
    nc += b.cols();
  }
  Mat m(nr, nc);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Mat hstack(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Mat m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Rat trace(const Mat& m) {
  Rat t = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

}  // namespace mtf
