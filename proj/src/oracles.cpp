// SPDX-License-Identifier: Apache-2.0
#include "mtf/oracles.hpp"

#include <stdexcept>

namespace mtf::oracle {
namespace {

long mod_pos(const Int& z, long m) {
  Int r = z % m;
  if (r < 0) r += m;
  return r.get_si();
}

// Unit part of r modulo p^k together with the parity of v_p(r).
std::pair<long, long> reduce_square_class(const Rat& r, long p, long k) {
  if (r == 0) throw std::invalid_argument("zero has no square class");
  const long v = vp(r, Int(p));
  Rat u = r / rpow(Rat(p), v);
  const Int pk = ipow(Int(p), static_cast<unsigned long>(k));
  return {mod_int(u, pk).get_si(), ((v % 2) + 2) % 2};
}

// Normalizes an exponential sum S: returns the eighth root u with S = u |S|.
Mu8 phase_of(const CycNum& s, long p) {
  const Rat a2 = abs_square(s);
  const long e = vp(a2, Int(p));
  if (a2 != rpow(Rat(p), e)) throw std::logic_error("Gauss sum modulus is not a power of p");
  CycNum modulus(rpow(Rat(p), e / 2));
  if (e % 2) {
    if (p == 2)
      modulus = modulus * (CycNum::zeta(8, 1) + CycNum::zeta(8, 7));
    else
      modulus = modulus * sqrt_p(Int(p));
  }
  for (int k = 0; k < 8; ++k)
    if (s == modulus * Mu8(k)) return Mu8(k);
  throw std::logic_error("Gauss sum phase is not an eighth root of unity");
}

}  // namespace

bool conic_solvable_mod_p3(const Int& a, const Int& b, long p) {
  const long q = p * p * p;
  const long am = mod_pos(a, q), bm = mod_pos(b, q);
  std::vector<bool> square(static_cast<std::size_t>(q), false);
  for (long z = 0; z < q; ++z) square[static_cast<std::size_t>(z * z % q)] = true;
  // Scaling by a unit reduces to x = 1, or to y = 1 with x divisible by p;
  // when p | x and p | y every z works only through z = 0 mod p, which is not
  // primitive, so those triples are never needed.
  for (long t = 0; t < q; ++t) {
    const long tt = t * t % q;
    if (square[static_cast<std::size_t>((am + bm * tt) % q)]) return true;
    if (t % p == 0 && square[static_cast<std::size_t>((am * tt + bm) % q)]) return true;
  }
  return false;
}

int hilbert_conic(const Rat& a, const Rat& b, long p) {
  auto [ua, va] = reduce_square_class(a, p, 3);
  auto [ub, vb] = reduce_square_class(b, p, 3);
  return conic_solvable_mod_p3(Int(ua) * (va ? p : 1), Int(ub) * (vb ? p : 1), p) ? 1 : -1;
}

int hilbert2(const Rat& a, const Rat& b) {
  auto [u, alpha] = reduce_square_class(a, 2, 3);
  auto [v, beta] = reduce_square_class(b, 2, 3);
  auto eps = [](long x) { return ((x - 1) / 2) % 2; };
  auto omega = [](long x) { return ((x * x - 1) / 8) % 2; };
  const long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
  return e % 2 ? -1 : 1;
}

Mu8 weil_index_gauss(const Rat& a, long p) {
  auto [u, v] = reduce_square_class(a, p, 2);
  // psi(a x^2 / 2) over p^{-1}Z_p: x = y/p, y mod p^M with M = 2 - v.
  const long M = 2 - v;
  long level = 1;
  for (long i = 0; i < M; ++i) level *= p;
  const long c = mod_int(Rat(u) / 2, Int(level)).get_si();
  std::vector<Rat> counts(static_cast<std::size_t>(level), Rat(0));
  for (long y = 0; y < level; ++y) {
    const long r = c * (y * y % level) % level;
    counts[static_cast<std::size_t>((level - r) % level)] += 1;
  }
  return phase_of(CycNum::from_exponent_counts(static_cast<std::uint64_t>(level), counts), p);
}

Mu8 weil_index2(const Rat& a) {
  auto [u, v] = reduce_square_class(a, 2, 8);
  // psi_2(a x^2 / 2) with x = y / 2^3: u y^2 / 2^M, M = 7 - v, y mod 2^{M-1}.
  const long M = 7 - v;
  const long level = 1L << M;
  std::vector<Rat> counts(static_cast<std::size_t>(level), Rat(0));
  for (long y = 0; y < level / 2; ++y) {
    long r = (u % level) * (y * y % level) % level;
    counts[static_cast<std::size_t>((level - r) % level)] += 1;
  }
  return phase_of(CycNum::from_exponent_counts(static_cast<std::uint64_t>(level), counts), 2);
}

Mu8 weil_index2(const QForm& q) {
  Mu8 g;
  for (const auto& d : diagonalize(q)) g *= weil_index2(d);
  return g;
}

CycNum theta_brute(const Mat& x, const LatticeModel& m) {
  const long p = m.p().get_si();
  const std::size_t dim = x.rows();
  const Mat A = x - Mat::identity(dim);
  const long v = vp(det(A), m.p());
  if (v < 0 || v > 12) throw std::invalid_argument("theta_brute: valuation out of range");
  long pv = 1;
  for (long i = 0; i < v; ++i) pv *= p;
  double total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= static_cast<double>(pv);
  if (total > 2e6) throw std::invalid_argument("theta_brute: too many vectors");
  const long level = pv * pv;
  const Int L(level);
  const Mat J = std_J(dim / 2);
  std::vector<Rat> counts(static_cast<std::size_t>(level), Rat(0));
  std::vector<long> y(dim, 0);
  while (true) {
    Vec w(dim);
    for (std::size_t i = 0; i < dim; ++i) w[i] = Rat(y[i], pv);
    Vec aw = A * w;
    bool in_lattice = true;
    for (const auto& z : aw)
      if (vp(z, m.p()) < 0) in_lattice = false;
    if (in_lattice) {
      Vec xw = x * w;
      Vec jw = J * w;
      Rat val(0);
      for (std::size_t i = 0; i < dim; ++i) val += xw[i] * jw[i];
      val /= 2;
      // val has p-power denominator dividing p^{2v} up to p-units
      const long r = mod_int(val * level, L).get_si();
      counts[static_cast<std::size_t>((level - r) % level)] += 1;
    }
    std::size_t k = 0;
    while (k < dim && ++y[k] == pv) y[k++] = 0;
    if (k == dim) break;
  }
  return CycNum::from_exponent_counts(static_cast<std::uint64_t>(level), counts);
}

}  // namespace mtf::oracle
