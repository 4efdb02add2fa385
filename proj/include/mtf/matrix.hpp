// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "mtf/rational.hpp"

namespace mtf {

class Poly;

// Dense matrix over Q, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rat(0)) {}
  Mat(std::initializer_list<std::initializer_list<Rat>> rows);

  static Mat identity(std::size_t n);
  static Mat diag(const Vec& d);
  static Mat column(const Vec& v);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Vec col(std::size_t j) const;
  Vec row(std::size_t i) const;
  void set_col(std::size_t j, const Vec& v);

  Mat transpose() const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Vec operator*(const Vec& v) const;
  Mat operator*(const Rat& s) const;

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

Rat det(Mat m);
std::size_t rank(Mat m);
Mat inverse(const Mat& m);            // throws on singular input
Mat kernel(const Mat& m);             // columns form a basis of {v : m v = 0}
Mat column_space(const Mat& m);       // independent columns spanning the image
Mat intersect(const Mat& a, const Mat& b);  // column-space intersection
Vec solve(const Mat& m, const Vec& b);      // square, nonsingular
Poly charpoly(const Mat& m);          // det(T - m), monic
Mat mat_pow(const Mat& m, unsigned long e);
Mat block_diag(const std::vector<Mat>& blocks);
Mat hstack(const Mat& a, const Mat& b);
Rat trace(const Mat& m);

}  // namespace mtf
