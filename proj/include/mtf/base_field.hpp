// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mtf/matrix.hpp"
#include "mtf/mu8.hpp"
#include "mtf/poly.hpp"
#include "mtf/rational.hpp"

namespace mtf {

// A completion of Q: an odd prime p or the real place.
class Place {
 public:
  enum class Kind { Padic, Real };

  static Place padic(const Int& p);  // rejects p = 2 and non-primes
  static Place real() { return Place(); }

  Kind kind() const { return kind_; }
  bool is_real() const { return kind_ == Kind::Real; }
  const Int& p() const { return p_; }
  std::string str() const { return is_real() ? "real" : p_.get_str(); }
  bool operator==(const Place& o) const { return kind_ == o.kind_ && p_ == o.p_; }

 private:
  Place() = default;
  Kind kind_ = Kind::Real;
  Int p_ = 0;
};

// Additive character attached to a place. At p: x -> exp(-2 pi i {x}_p),
// conductor Z_p. At the real place: x -> exp(2 pi i x). Their product is
// trivial on Q.
struct PsiSpec {
  Place place;
  explicit PsiSpec(Place pl) : place(std::move(pl)) {}
};

// Finite field F_p[t]/(g), g monic irreducible mod p.
class FqField {
 public:
  FqField(Int p, std::vector<Int> modulus);  // little-endian, monic

  using Elem = std::vector<Int>;

  const Int& p() const { return p_; }
  int degree() const { return f_; }
  Int order() const { return ipow(p_, static_cast<unsigned long>(f_)); }

  Elem zero() const { return Elem(static_cast<std::size_t>(f_), Int(0)); }
  Elem one() const;
  Elem from_int(const Int& z) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, Int e) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const;
  // Quadratic character by Euler's criterion.
  int chi(const Elem& a) const;

  // Irreducibility of g over F_p via gcd with t^{p^d} - t, d < f.
  static bool irreducible(const Int& p, const std::vector<Int>& g);

 private:
  Int p_;
  int f_;
  std::vector<Int> g_;
};

// Finite-dimensional commutative Q-algebra given by the matrices of left
// multiplication by each basis vector.
class QAlgebra {
 public:
  QAlgebra() = default;
  QAlgebra(std::vector<Mat> left_mult, Vec one);

  static QAlgebra monogenic(const Poly& monic);  // Q[T]/(P), basis 1..T^{n-1}

  std::size_t dim() const { return L_.size(); }
  const Vec& one() const { return one_; }
  Vec from_rat(const Rat& r) const;
  Vec basis(std::size_t k) const;

  Mat mult_matrix(const Vec& x) const;
  Vec mul(const Vec& x, const Vec& y) const { return mult_matrix(x) * y; }
  Vec add(const Vec& x, const Vec& y) const;
  Vec sub(const Vec& x, const Vec& y) const;
  Vec neg(const Vec& x) const;
  Vec scale(const Vec& x, const Rat& s) const;
  Vec inv(const Vec& x) const;
  Vec pow(const Vec& x, long e) const;
  Rat norm(const Vec& x) const { return det(mult_matrix(x)); }
  Rat trace(const Vec& x) const { return mtf::trace(mult_matrix(x)); }
  Poly charpoly(const Vec& x) const { return mtf::charpoly(mult_matrix(x)); }
  // Polynomial with rational coefficients evaluated at x.
  Vec eval(const Poly& f, const Vec& x) const;
  bool is_rational(const Vec& x, Rat* out = nullptr) const;

 private:
  std::vector<Mat> L_;
  Vec one_;
};

// A local field of characteristic zero over a completion of Q, modelled by a
// number field with a unique place above the base place.
//   Padic: unramified stage Q(theta) then Eisenstein stage (pi);
//          basis theta^j pi^i, index i*f + j.
//   Real:  R itself (degree 1).
//   Complex: C = R(i), basis 1, i.
class LocalField {
 public:
  enum class Kind { Padic, Real, Complex };
  using Elem = Vec;

  static std::shared_ptr<const LocalField> rationals(const Place& pl);
  static std::shared_ptr<const LocalField> complex();
  // unram: monic, little-endian, irreducible mod p, integer coefficients.
  // eis: e+1 coefficients (little-endian, leading one), each a polynomial in
  //      theta (little-endian, length <= f) with p-integral rationals.
  static std::shared_ptr<const LocalField> tower(const Int& p, const std::vector<Int>& unram,
                                                 const std::vector<Vec>& eis);

  Kind kind() const { return kind_; }
  const Place& place() const { return place_; }
  int f() const { return f_; }
  int e() const { return e_; }
  std::size_t degree() const { return alg_.dim(); }
  const QAlgebra& alg() const { return alg_; }
  const std::vector<Int>& unram_poly() const { return unram_; }
  const std::vector<Vec>& eisenstein_poly() const { return eis_; }
  std::string describe() const;

  Elem zero() const { return zero_vec(degree()); }
  Elem one() const { return alg_.one(); }
  Elem from_rat(const Rat& r) const { return alg_.from_rat(r); }
  Elem uniformizer() const { return pi_; }
  Elem mul(const Elem& a, const Elem& b) const { return alg_.mul(a, b); }
  Elem add(const Elem& a, const Elem& b) const { return alg_.add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return alg_.sub(a, b); }
  Elem neg(const Elem& a) const { return alg_.neg(a); }
  Elem inv(const Elem& a) const { return alg_.inv(a); }
  Elem pow(const Elem& a, long k) const { return alg_.pow(a, k); }
  Rat norm(const Elem& a) const { return alg_.norm(a); }
  Rat trace(const Elem& a) const { return alg_.trace(a); }

  // Normalized so v(pi) = 1; kValInf for zero. Padic only.
  long valuation(const Elem& x) const;
  FqField::Elem residue_unit(const Elem& x) const;  // Padic only
  const FqField& residue_field() const;
  bool is_square(const Elem& x) const;
  int hilbert(const Elem& a, const Elem& b) const;
  // Real kind only: sign of a real element.
  int real_sign(const Elem& x) const;

 private:
  LocalField() = default;
  Kind kind_ = Kind::Real;
  Place place_ = Place::real();
  int f_ = 1, e_ = 1;
  std::vector<Int> unram_;
  std::vector<Vec> eis_;
  QAlgebra alg_;
  Elem pi_, pi_inv_;
  std::shared_ptr<FqField> fq_;
};

using LocalFieldPtr = std::shared_ptr<const LocalField>;

// Conveniences over Q viewed in a completion.
long valuation(const Rat& x, const Place& pl);
Int residue_unit(const Rat& x, const Place& pl);  // in [1, p)
int legendre(const Int& a, const Int& p);
bool is_square(const Rat& x, const Place& pl);
int hilbert(const Rat& a, const Rat& b, const Place& pl);
Mu8 weil_index_rank1(const Rat& a, const PsiSpec& psi);

// Smallest positive integer that is a non-residue mod p.
Int least_nonresidue(const Int& p);

}  // namespace mtf
