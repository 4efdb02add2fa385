// SPDX-License-Identifier: Apache-2.0
#include "mtf/weil_character.hpp"

#include <stdexcept>

#include "mtf/poly.hpp"
#include "mtf/quadratic_form.hpp"
#include "mtf/symplectic.hpp"

namespace mtf {
namespace {

constexpr std::uint64_t kMaxTerms = 5'000'000;

using FpPoly = std::vector<Int>;  // little-endian, coefficients in [0, p)

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_reduce(const Poly& f, const Int& p) {
  FpPoly a;
  for (const auto& c : f.coeffs()) a.push_back(mod_int(c, p));
  fp_trim(a);
  return a;
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, const Int& p) {
  Int inv_lead;
  mpz_invert(inv_lead.get_mpz_t(), b.back().get_mpz_t(), p.get_mpz_t());
  while (a.size() >= b.size()) {
    Int q = mod_int(Int(a.back() * inv_lead), p);
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = mod_int(Int(a[s + i] - q * b[i]), p);
    fp_trim(a);
  }
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, const Int& p) {
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FpPoly fp_deriv(const FpPoly& a, const Int& p) {
  FpPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mod_int(Int(a[i] * static_cast<unsigned long>(i)), p));
  fp_trim(d);
  return d;
}

bool p_integral(const Mat& x, const Int& p) {
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x(i, j) != 0 && vp(x(i, j), p) < 0) return false;
  return true;
}

void check_element(const Mat& x, const LatticeModel& m) {
  if (x.rows() != 2 * m.n || x.cols() != 2 * m.n) throw std::invalid_argument("matrix: expected size 2n x 2n");
  if (!is_symplectic(x)) throw std::invalid_argument("matrix: not symplectic");
  if (!in_K(x, m)) throw std::invalid_argument("matrix: does not preserve the standard lattice");
}

struct Smith {
  Mat V;                // column operations, A V = U^{-1} D
  std::vector<long> k;  // elementary divisors p^{k_i}
};

// Smith form of a nonsingular p-integral matrix over Z_(p).
Smith smith_p(Mat A, const Int& p) {
  const std::size_t n = A.rows();
  Mat V = Mat::identity(n);
  std::vector<long> k(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    long best = kValInf;
    std::size_t bi = r, bj = r;
    for (std::size_t i = r; i < n; ++i)
      for (std::size_t j = r; j < n; ++j)
        if (A(i, j) != 0) {
          long v = vp(A(i, j), p);
          if (v < best) best = v, bi = i, bj = j;
        }
    if (best == kValInf) throw std::domain_error("det(x - 1) = 0");
    if (bi != r)
      for (std::size_t j = 0; j < n; ++j) std::swap(A(r, j), A(bi, j));
    if (bj != r)
      for (std::size_t i = 0; i < n; ++i) {
        std::swap(A(i, r), A(i, bj));
        std::swap(V(i, r), V(i, bj));
      }
    const Rat pk = rpow(Rat(p), best);
    const Rat u = A(r, r) / pk;
    for (std::size_t j = r; j < n; ++j) A(r, j) /= u;
    for (std::size_t i = r + 1; i < n; ++i) {
      if (A(i, r) == 0) continue;
      const Rat f = A(i, r) / pk;
      for (std::size_t j = r; j < n; ++j) A(i, j) -= f * A(r, j);
    }
    for (std::size_t j = r + 1; j < n; ++j) {
      if (A(r, j) == 0) continue;
      const Rat f = A(r, j) / pk;
      A(r, j) = 0;
      for (std::size_t i = 0; i < n; ++i) V(i, j) -= f * V(i, r);
    }
    k[r] = best;
  }
  return Smith{std::move(V), std::move(k)};
}

unsigned long long ull(const Int& z) { return z.get_ui(); }

}  // namespace

bool in_K(const Mat& x, const LatticeModel& m) {
  if (!x.square()) return false;
  if (!p_integral(x, m.p())) return false;
  Rat d = det(x);
  return d != 0 && vp(d, m.p()) == 0;
}

bool reduction_regular(const Mat& x, const LatticeModel& m) {
  if (!in_K(x, m)) return false;
  FpPoly f = fp_reduce(charpoly(x), m.p());
  FpPoly g = fp_gcd(f, fp_deriv(f, m.p()), m.p());
  return g.size() == 1;
}

bool top_unipotent(const Mat& x, const LatticeModel& m) {
  if (!in_K(x, m)) return false;
  const std::size_t n = x.rows();
  Poly target = Poly::constant(Rat(1));
  for (std::size_t i = 0; i < n; ++i) target = target * Poly({Rat(-1), Rat(1)});
  return fp_reduce(charpoly(x), m.p()) == fp_reduce(target, m.p());
}

ThetaVal theta_lattice(const Mat& x, const LatticeModel& m) {
  check_element(x, m);
  const Int& p = m.p();
  const std::size_t dim = x.rows();
  const Mat A = x - Mat::identity(dim);
  if (det(A) == 0) throw std::domain_error("det(x - 1) = 0");
  Smith s = smith_p(A, p);

  long K = 0, v = 0;
  for (long ki : s.k) K = std::max(K, ki), v += ki;
  ThetaVal out;
  out.det_minus_val = v;
  if (v == 0) {
    out.value = CycNum(Rat(1));
    out.terms = 1;
    return out;
  }
  const Int total = ipow(p, static_cast<unsigned long>(v));
  if (total > kMaxTerms) throw std::invalid_argument("theta sum too large: " + total.get_str() + " terms");
  const Int level = ipow(p, static_cast<unsigned long>(K));
  if (level > CycNum::kMaxLevel) throw std::invalid_argument("theta sum level exceeds the cyclotomic cap");

  // w = W t with W = V D^{-1}; <xw|w>/2 = t^T B t with B = (AW)^T J W / 2.
  Mat W = s.V;
  for (std::size_t j = 0; j < dim; ++j) {
    const Rat f = rpow(Rat(p), -s.k[j]);
    for (std::size_t i = 0; i < dim; ++i) W(i, j) *= f;
  }
  Mat B = (A * W).transpose() * std_J(dim / 2) * W * Rat(1, 2);

  // Only coordinates with k_i > 0 vary.
  std::vector<std::size_t> idx;
  std::vector<unsigned long long> range;
  for (std::size_t i = 0; i < dim; ++i)
    if (s.k[i] > 0) idx.push_back(i), range.push_back(ull(ipow(p, static_cast<unsigned long>(s.k[i]))));
  const std::size_t r = idx.size();
  const unsigned long long M = ull(level);
  std::vector<std::vector<unsigned long long>> b(r, std::vector<unsigned long long>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) b[i][j] = ull(mod_int(B(idx[i], idx[j]) * Rat(level), level));

  std::vector<Rat> counts(M, Rat(0));
  std::vector<unsigned long long> t(r, 0);
  std::vector<unsigned long long> hist(M, 0);
  std::uint64_t n_terms = 0;
  while (true) {
    unsigned long long acc = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (!t[i]) continue;
      unsigned long long row = 0;
      for (std::size_t j = 0; j < r; ++j) row = (row + b[i][j] * t[j]) % M;
      acc = (acc + row * t[i]) % M;
    }
    ++hist[(M - acc) % M];  // psi(r / M) = zeta_M^{-r}
    ++n_terms;
    std::size_t pos = 0;
    while (pos < r && ++t[pos] == range[pos]) t[pos++] = 0;
    if (pos == r) break;
  }
  for (unsigned long long e = 0; e < M; ++e)
    if (hist[e]) counts[e] = Rat(static_cast<unsigned long>(hist[e]));
  out.value = CycNum::from_exponent_counts(M, counts);
  out.terms = n_terms;
  return out;
}

CycNum p_half_power(const Int& p, long v) {
  const long h = v >= 0 ? v / 2 : -((-v + 1) / 2);  // floor(v / 2)
  CycNum r(rpow(Rat(p), h));
  if (v - 2 * h == 1) r = r * sqrt_p(p);
  return r;
}

ThetaVal theta_via_cayley(const Mat& x, const LatticeModel& m) {
  check_element(x, m);
  if (!top_unipotent(x, m)) throw std::invalid_argument("matrix: not topologically unipotent");
  const Rat dm = det(x - Mat::identity(x.rows()));
  if (dm == 0) throw std::domain_error("det(x - 1) = 0");
  ThetaVal out;
  out.det_minus_val = vp(dm, m.p());
  Mu8 g = weil_index(q_of_X(cayley(x), m.place), m.psi());
  out.value = p_half_power(m.p(), out.det_minus_val) * g;
  out.terms = ull(ipow(m.p(), static_cast<unsigned long>(out.det_minus_val)));
  return out;
}

bool theta_ratio_check(const Mat& x, const LatticeModel& m) {
  check_element(x, m);
  const Mat I = Mat::identity(x.rows());
  const Rat dm = det(x - I), dp = det(x + I);
  if (dm == 0 || dp == 0) throw std::domain_error("x has eigenvalue 1 or -1");
  ThetaVal plus = theta_lattice(x, m);
  ThetaVal minus = theta_lattice(-x, m);
  Mu8 g = weil_index(q_of_X(cayley(x), m.place), m.psi());
  const long vm = vp(dm, m.p()), vpl = vp(dp, m.p());
  return plus.value == p_half_power(m.p(), vm - vpl) * minus.value * g;
}

Mat sp_block_embed(const std::vector<Mat>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!b.square() || b.rows() % 2) throw std::invalid_argument("symplectic block must be 2n_k x 2n_k");
    n += b.rows() / 2;
  }
  Mat x(2 * n, 2 * n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    const std::size_t nk = b.rows() / 2;
    auto g = [&](std::size_t a) { return a < nk ? off + a : n + off + (a - nk); };
    for (std::size_t i = 0; i < 2 * nk; ++i)
      for (std::size_t j = 0; j < 2 * nk; ++j) x(g(i), g(j)) = b(i, j);
    off += nk;
  }
  return x;
}

bool theta_decompose(const std::vector<Mat>& blocks, const Int& p) {
  Mat x = sp_block_embed(blocks);
  CycNum prod(Rat(1));
  for (const auto& b : blocks) prod = prod * theta_lattice(b, LatticeModel(p, b.rows() / 2)).value;
  return theta_lattice(x, LatticeModel(p, x.rows() / 2)).value == prod;
}

Mat exp_truncated(const Mat& X, unsigned terms) {
  const std::size_t n = X.rows();
  Mat acc = Mat::identity(n), term = Mat::identity(n);
  for (unsigned k = 1; k < terms; ++k) {
    term = term * X * Rat(1, k);
    acc = acc + term;
  }
  return acc;
}

}  // namespace mtf
