// SPDX-License-Identifier: Apache-2.0
#include "mtf/base_field.hpp"

#include <mutex>
#include <map>
#include <stdexcept>

namespace mtf {

Place Place::padic(const Int& p) {
  if (p == 2) throw std::invalid_argument("p = 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + p.get_str());
  Place pl;
  pl.kind_ = Kind::Padic;
  pl.p_ = p;
  return pl;
}

// ---------------------------------------------------------------- F_q

namespace {

using IPoly = std::vector<Int>;

void itrim(IPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

IPoly imod(IPoly a, const Int& p) {
  for (auto& x : a) x = mod_int(x, p);
  itrim(a);
  return a;
}

// remainder of a modulo monic-after-normalization b, over F_p
IPoly irem(IPoly a, IPoly b, const Int& p) {
  a = imod(std::move(a), p);
  b = imod(std::move(b), p);
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  Int inv;
  mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
  while (a.size() >= b.size()) {
    Int c = mod_int(Int(a.back() * inv), p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod_int(Int(a[shift + j] - c * b[j]), p);
    itrim(a);
  }
  return a;
}

IPoly imulmod(const IPoly& a, const IPoly& b, const IPoly& g, const Int& p) {
  if (a.empty() || b.empty()) return {};
  IPoly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return irem(std::move(r), g, p);
}

IPoly igcd(IPoly a, IPoly b, const Int& p) {
  a = imod(std::move(a), p);
  b = imod(std::move(b), p);
  while (!b.empty()) {
    IPoly r = irem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

FqField::FqField(Int p, std::vector<Int> modulus) : p_(std::move(p)), g_(std::move(modulus)) {
  f_ = static_cast<int>(g_.size()) - 1;
  if (f_ < 1 || g_.back() != 1) throw std::invalid_argument("residue modulus must be monic of degree >= 1");
}

FqField::Elem FqField::one() const {
  Elem e = zero();
  e[0] = 1;
  return e;
}

FqField::Elem FqField::from_int(const Int& z) const {
  Elem e = zero();
  e[0] = mod_int(z, p_);
  return e;
}

FqField::Elem FqField::add(const Elem& a, const Elem& b) const {
  Elem r(static_cast<std::size_t>(f_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_int(Int(a[i] + b[i]), p_);
  return r;
}

FqField::Elem FqField::mul(const Elem& a, const Elem& b) const {
  IPoly r = imulmod(a, b, g_, p_);
  r.resize(static_cast<std::size_t>(f_), Int(0));
  return r;
}

FqField::Elem FqField::pow(Elem a, Int e) const {
  Elem r = one();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
    e >>= 1;
    if (e > 0) a = mul(a, a);
  }
  return r;
}

bool FqField::is_zero(const Elem& a) const {
  for (const auto& x : a)
    if (mod_int(x, p_) != 0) return false;
  return true;
}

bool FqField::is_one(const Elem& a) const { return is_zero(add(a, from_int(-1))); }

int FqField::chi(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("quadratic character of zero");
  Elem t = pow(a, Int((order() - 1) / 2));
  if (is_one(t)) return 1;
  if (is_zero(add(t, one()))) return -1;
  throw std::logic_error("Euler criterion returned neither 1 nor -1; modulus not irreducible?");
}

bool FqField::irreducible(const Int& p, const std::vector<Int>& g) {
  IPoly gm = imod(g, p);
  int f = static_cast<int>(gm.size()) - 1;
  if (f < 1) return false;
  if (f == 1) return true;
  IPoly t{Int(0), Int(1)};
  IPoly tp = t;  // t^{p^d} mod g
  for (int d = 1; d <= f / 2; ++d) {
    // raise to the p-th power
    IPoly base = tp;
    IPoly acc{Int(1)};
    Int e = p;
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = imulmod(acc, base, gm, p);
      e >>= 1;
      if (e > 0) base = imulmod(base, base, gm, p);
    }
    tp = acc;
    IPoly diff = tp;
    diff.resize(std::max<std::size_t>(diff.size(), 2), Int(0));
    diff[1] -= 1;
    diff = imod(diff, p);
    IPoly g1 = igcd(gm, diff, p);
    if (g1.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Q-algebras

QAlgebra::QAlgebra(std::vector<Mat> left_mult, Vec one) : L_(std::move(left_mult)), one_(std::move(one)) {}

QAlgebra QAlgebra::monogenic(const Poly& monic) {
  if (monic.degree() < 1 || monic.lead() != 1) throw std::invalid_argument("monogenic algebra needs a monic polynomial");
  const std::size_t n = static_cast<std::size_t>(monic.degree());
  Mat C(n, n);  // companion: multiplication by T
  for (std::size_t i = 0; i + 1 < n; ++i) C(i + 1, i) = 1;
  for (std::size_t i = 0; i < n; ++i) C(i, n - 1) = -monic.coeff(i);
  std::vector<Mat> L;
  Mat P = Mat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    L.push_back(P);
    P = P * C;
  }
  Vec one = zero_vec(n);
  one[0] = 1;
  return QAlgebra(std::move(L), std::move(one));
}

Vec QAlgebra::from_rat(const Rat& r) const {
  Vec v = one_;
  for (auto& x : v) x *= r;
  return v;
}

Vec QAlgebra::basis(std::size_t k) const {
  Vec v = zero_vec(dim());
  v[k] = 1;
  return v;
}

Mat QAlgebra::mult_matrix(const Vec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("element size does not match algebra dimension");
  Mat m(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k)
    if (x[k] != 0) m = m + L_[k] * x[k];
  return m;
}

Vec QAlgebra::add(const Vec& x, const Vec& y) const {
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vec QAlgebra::sub(const Vec& x, const Vec& y) const {
  Vec r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vec QAlgebra::neg(const Vec& x) const { return scale(x, Rat(-1)); }

Vec QAlgebra::scale(const Vec& x, const Rat& s) const {
  Vec r = x;
  for (auto& c : r) c *= s;
  return r;
}

Vec QAlgebra::inv(const Vec& x) const {
  Mat m = mult_matrix(x);
  if (det(m) == 0) throw std::domain_error("element is not invertible");
  return solve(m, one_);
}

Vec QAlgebra::pow(const Vec& x, long e) const {
  Vec b = e < 0 ? inv(x) : x;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Vec r = one_;
  while (k) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

Vec QAlgebra::eval(const Poly& f, const Vec& x) const {
  Vec acc = zero_vec(dim());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = add(mul(acc, x), from_rat(f.coeffs()[i]));
  return acc;
}

bool QAlgebra::is_rational(const Vec& x, Rat* out) const {
  // x = r * one  for some r
  std::size_t k = 0;
  while (k < dim() && one_[k] == 0) ++k;
  Rat r = x[k] / one_[k];
  for (std::size_t i = 0; i < dim(); ++i)
    if (x[i] != r * one_[i]) return false;
  if (out) *out = r;
  return true;
}

// ---------------------------------------------------------------- local fields

std::shared_ptr<const LocalField> LocalField::rationals(const Place& pl) {
  auto lf = std::shared_ptr<LocalField>(new LocalField());
  lf->place_ = pl;
  lf->alg_ = QAlgebra({Mat::identity(1)}, Vec{Rat(1)});
  if (pl.is_real()) {
    lf->kind_ = Kind::Real;
  } else {
    lf->kind_ = Kind::Padic;
    lf->unram_ = {Int(0), Int(1)};
    lf->eis_ = {Vec{Rat(-pl.p())}, Vec{Rat(1)}};
    lf->pi_ = Vec{Rat(pl.p())};
    lf->pi_inv_ = Vec{Rat(1) / Rat(pl.p())};
    lf->fq_ = std::make_shared<FqField>(pl.p(), lf->unram_);
  }
  return lf;
}

std::shared_ptr<const LocalField> LocalField::complex() {
  auto lf = std::shared_ptr<LocalField>(new LocalField());
  lf->kind_ = Kind::Complex;
  lf->place_ = Place::real();
  lf->alg_ = QAlgebra::monogenic(Poly({Rat(1), Rat(0), Rat(1)}));
  return lf;
}

std::shared_ptr<const LocalField> LocalField::tower(const Int& p, const std::vector<Int>& unram,
                                                    const std::vector<Vec>& eis) {
  Place pl = Place::padic(p);
  if (unram.size() < 2 || unram.back() != 1) throw std::invalid_argument("unramified polynomial must be monic of degree >= 1");
  if (!FqField::irreducible(p, unram)) throw std::invalid_argument("unramified polynomial is not irreducible mod p");
  const int f = static_cast<int>(unram.size()) - 1;
  if (eis.size() < 2) throw std::invalid_argument("Eisenstein polynomial must have degree >= 1");
  const int e = static_cast<int>(eis.size()) - 1;
  if (!(eis.back().size() == 1 && eis.back()[0] == 1)) throw std::invalid_argument("Eisenstein polynomial must be monic");

  auto theta_val = [&](const Vec& c) {
    long v = kValInf;
    for (const auto& x : c) v = std::min(v, vp(x, p));
    return v;
  };
  for (int i = 0; i < e; ++i) {
    if (static_cast<int>(eis[static_cast<std::size_t>(i)].size()) > f)
      throw std::invalid_argument("Eisenstein coefficient has too many theta-coordinates");
    long v = theta_val(eis[static_cast<std::size_t>(i)]);
    if (e > 1 || i > 0) {
      if (v < 1) throw std::invalid_argument("Eisenstein polynomial: coefficient of valuation < 1");
    }
    if (i == 0 && v != 1) throw std::invalid_argument("Eisenstein polynomial: constant term must have valuation exactly 1");
  }

  const std::size_t N = static_cast<std::size_t>(e * f);
  auto idx = [f](int i, int j) { return static_cast<std::size_t>(i * f + j); };
  Vec gq;
  for (const auto& c : unram) gq.push_back(Rat(c));
  Poly g(gq);

  Mat Th(N, N), Pi(N, N);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      // theta * theta^j pi^i
      if (j + 1 < f) {
        Th(idx(i, j + 1), idx(i, j)) = 1;
      } else {
        for (int k = 0; k < f; ++k) Th(idx(i, k), idx(i, j)) = -Rat(unram[static_cast<std::size_t>(k)]);
      }
      // pi * theta^j pi^i
      if (i + 1 < e) {
        Pi(idx(i + 1, j), idx(i, j)) = 1;
      } else {
        for (int i2 = 0; i2 < e; ++i2) {
          Poly c(eis[static_cast<std::size_t>(i2)]);
          Poly r = divmod(Poly::monomial(Rat(1), static_cast<std::size_t>(j)) * c, g).second;
          for (int k = 0; k < f; ++k) Pi(idx(i2, k), idx(i, j)) -= r.coeff(static_cast<std::size_t>(k));
        }
      }
    }
  std::vector<Mat> L(N);
  Mat Pp = Mat::identity(N);
  for (int i = 0; i < e; ++i) {
    Mat T = Pp;
    for (int j = 0; j < f; ++j) {
      L[idx(i, j)] = T;
      T = Th * T;
    }
    Pp = Pi * Pp;
  }
  Vec one = zero_vec(N);
  one[0] = 1;

  auto lf = std::shared_ptr<LocalField>(new LocalField());
  lf->kind_ = Kind::Padic;
  lf->place_ = pl;
  lf->f_ = f;
  lf->e_ = e;
  lf->unram_ = unram;
  lf->eis_ = eis;
  lf->alg_ = QAlgebra(std::move(L), one);
  if (e > 1) {
    lf->pi_ = lf->alg_.basis(idx(1, 0));
  } else {
    lf->pi_ = lf->alg_.from_rat(Rat(p));
  }
  lf->pi_inv_ = lf->alg_.inv(lf->pi_);
  lf->fq_ = std::make_shared<FqField>(p, unram);
  return lf;
}

std::string LocalField::describe() const {
  switch (kind_) {
    case Kind::Real: return "R";
    case Kind::Complex: return "C";
    case Kind::Padic: break;
  }
  return "Q_" + place_.p().get_str() + "(f=" + std::to_string(f_) + ",e=" + std::to_string(e_) + ")";
}

long LocalField::valuation(const Elem& x) const {
  if (kind_ != Kind::Padic) throw std::logic_error("valuation requires a p-adic field");
  if (is_zero(x)) return kValInf;
  long v = vp(norm(x), place_.p());
  if (v % f_ != 0) throw std::logic_error("norm valuation not divisible by residue degree");
  return v / f_;
}

const FqField& LocalField::residue_field() const {
  if (!fq_) throw std::logic_error("no residue field at an archimedean place");
  return *fq_;
}

FqField::Elem LocalField::residue_unit(const Elem& x) const {
  long v = valuation(x);
  if (v == kValInf) throw std::domain_error("residue_unit of zero");
  Elem u = mul(x, v >= 0 ? pow(pi_inv_, v) : pow(pi_, -v));
  FqField::Elem r = fq_->zero();
  for (int j = 0; j < f_; ++j) r[static_cast<std::size_t>(j)] = mod_int(u[static_cast<std::size_t>(j)], place_.p());
  if (fq_->is_zero(r)) throw std::logic_error("residue of a unit vanished");
  return r;
}

int LocalField::real_sign(const Elem& x) const {
  if (kind_ != Kind::Real) throw std::logic_error("real_sign requires the real field");
  return sign(x[0]);
}

bool LocalField::is_square(const Elem& x) const {
  if (is_zero(x)) throw std::domain_error("is_square of zero");
  switch (kind_) {
    case Kind::Real: return real_sign(x) > 0;
    case Kind::Complex: return true;
    case Kind::Padic: break;
  }
  if (valuation(x) % 2 != 0) return false;
  return fq_->chi(residue_unit(x)) == 1;
}

int LocalField::hilbert(const Elem& a, const Elem& b) const {
  if (is_zero(a) || is_zero(b)) throw std::domain_error("Hilbert symbol of zero");
  switch (kind_) {
    case Kind::Real: return (real_sign(a) < 0 && real_sign(b) < 0) ? -1 : 1;
    case Kind::Complex: return 1;
    case Kind::Padic: break;
  }
  long al = valuation(a), be = valuation(b);
  int s = 1;
  if (((al * be) % 2 + 2) % 2 == 1) s *= fq_->chi(fq_->from_int(-1));
  if (((be % 2) + 2) % 2 == 1) s *= fq_->chi(residue_unit(a));
  if (((al % 2) + 2) % 2 == 1) s *= fq_->chi(residue_unit(b));
  return s;
}

// ---------------------------------------------------------------- over Q

long valuation(const Rat& x, const Place& pl) {
  if (pl.is_real()) throw std::logic_error("valuation at the real place");
  return vp(x, pl.p());
}

Int residue_unit(const Rat& x, const Place& pl) {
  if (x == 0) throw std::domain_error("residue_unit of zero");
  long v = valuation(x, pl);
  Rat u = x * rpow(Rat(pl.p()), -v);
  return mod_int(u, pl.p());
}

int legendre(const Int& a, const Int& p) {
  Int r = mod_int(a, p);
  if (r == 0) throw std::domain_error("Legendre symbol of a multiple of p");
  return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

bool is_square(const Rat& x, const Place& pl) {
  if (x == 0) throw std::domain_error("is_square of zero");
  if (pl.is_real()) return x > 0;
  if (valuation(x, pl) % 2 != 0) return false;
  return legendre(residue_unit(x, pl), pl.p()) == 1;
}

int hilbert(const Rat& a, const Rat& b, const Place& pl) {
  if (a == 0 || b == 0) throw std::domain_error("Hilbert symbol of zero");
  if (pl.is_real()) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = pl.p();
  long al = valuation(a, pl), be = valuation(b, pl);
  int s = 1;
  if ((al * be) % 2 != 0) s *= legendre(Int(-1), p);
  if (be % 2 != 0) s *= legendre(residue_unit(a, pl), p);
  if (al % 2 != 0) s *= legendre(residue_unit(b, pl), p);
  return s;
}

Mu8 weil_index_rank1(const Rat& a, const PsiSpec& psi) {
  if (a == 0) throw std::domain_error("Weil index of a degenerate form");
  const Place& pl = psi.place;
  if (pl.is_real()) return Mu8(a > 0 ? 1 : -1);
  long v = valuation(a, pl);
  if (v % 2 == 0) return Mu8::one();
  const Int& p = pl.p();
  int chi = legendre(Int(2 * residue_unit(a, pl)), p);
  Mu8 eps = (mod_int(p, Int(4)) == 1) ? Mu8(0) : Mu8(6);
  return Mu8::from_sign(chi) * eps;
}

Int least_nonresidue(const Int& p) {
  for (Int a = 2;; ++a)
    if (legendre(a, p) == -1) return a;
}

}  // namespace mtf
