// SPDX-License-Identifier: Apache-2.0
#include "mtf/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "mtf/base_field.hpp"

namespace mtf {

namespace {

using Sparse = std::vector<std::pair<std::uint64_t, Int>>;

std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    r *= q;
    while (n % q == 0) n /= q;
  }
  return n > 1 ? r * n : r;
}

std::mutex g_phi_mutex;
std::map<std::uint64_t, std::shared_ptr<const Sparse>> g_phi_cache;
std::map<std::uint64_t, std::vector<Int>> g_phi_dense_squarefree;

// Dense integer coefficients of Phi_r for squarefree r; caller holds the lock.
const std::vector<Int>& phi_squarefree_locked(std::uint64_t r) {
  auto it = g_phi_dense_squarefree.find(r);
  if (it != g_phi_dense_squarefree.end()) return it->second;
  std::vector<Int> num(r + 1, Int(0));
  num[0] = -1;
  num[r] = 1;
  for (std::uint64_t d = 1; d < r; ++d) {
    if (r % d) continue;
    std::vector<Int> den = phi_squarefree_locked(d);
    // exact division num / den, den monic
    std::size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<Int> q(dn - dd + 1, Int(0));
    for (std::size_t k = dn + 1; k-- > dd;) {
      Int c = num[k];
      q[k - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
    }
    num = std::move(q);
  }
  return g_phi_dense_squarefree.emplace(r, std::move(num)).first->second;
}

std::shared_ptr<const Sparse> phi_poly(std::uint64_t N) {
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  auto it = g_phi_cache.find(N);
  if (it != g_phi_cache.end()) return it->second;
  std::uint64_t r = radical(N);
  const auto& base = phi_squarefree_locked(r);
  auto sp = std::make_shared<Sparse>();
  for (std::size_t k = 0; k < base.size(); ++k)
    if (base[k] != 0) sp->emplace_back(static_cast<std::uint64_t>(k) * (N / r), base[k]);
  g_phi_cache.emplace(N, sp);
  return sp;
}

void check_level(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("cyclotomic level must be positive");
  if (N > CycNum::kMaxLevel) throw std::length_error("cyclotomic level " + std::to_string(N) + " exceeds cap");
}

// Reduce a sparse exponent map (exponents already < N or arbitrary) to the power basis.
Vec reduce(std::uint64_t N, std::map<std::uint64_t, Rat> terms) {
  auto phi = phi_poly(N);
  const std::uint64_t deg = phi->back().first;
  Vec out(deg, Rat(0));
  // fold exponents mod N
  std::map<std::uint64_t, Rat> t;
  for (auto& [k, c] : terms)
    if (c != 0) t[k % N] += c;
  while (!t.empty()) {
    auto top = std::prev(t.end());
    std::uint64_t d = top->first;
    Rat c = top->second;
    t.erase(top);
    if (c == 0) continue;
    if (d < deg) {
      out[d] += c;
      continue;
    }
    const std::uint64_t shift = d - deg;
    for (const auto& [k, a] : *phi) {
      if (k == deg) continue;
      t[shift + k] -= c * Rat(a);
    }
  }
  return out;
}

}  // namespace

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    r -= r / q;
    while (n % q == 0) n /= q;
  }
  if (n > 1) r -= r / n;
  return r;
}

CycNum::CycNum(const Rat& r, std::uint64_t level) : N_(level) {
  check_level(level);
  c_ = Vec(euler_phi(level), Rat(0));
  c_[0] = r;
}

CycNum CycNum::zeta(std::uint64_t level, std::int64_t k) {
  check_level(level);
  std::int64_t N = static_cast<std::int64_t>(level);
  std::map<std::uint64_t, Rat> t;
  t[static_cast<std::uint64_t>(((k % N) + N) % N)] = 1;
  CycNum z;
  z.N_ = level;
  z.c_ = reduce(level, std::move(t));
  return z;
}

CycNum CycNum::from_mu8(Mu8 m) { return zeta(8, m.k); }

CycNum CycNum::from_exponent_counts(std::uint64_t level, const std::vector<Rat>& counts) {
  check_level(level);
  std::map<std::uint64_t, Rat> t;
  for (std::size_t k = 0; k < counts.size(); ++k)
    if (counts[k] != 0) t[k] += counts[k];
  CycNum z;
  z.N_ = level;
  z.c_ = reduce(level, std::move(t));
  return z;
}

CycNum CycNum::raise(std::uint64_t level) const {
  if (level == N_) return *this;
  if (level % N_ != 0) throw std::invalid_argument("level raise to a non-multiple");
  check_level(level);
  const std::uint64_t s = level / N_;
  std::map<std::uint64_t, Rat> t;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) t[k * s] = c_[k];
  CycNum z;
  z.N_ = level;
  z.c_ = reduce(level, std::move(t));
  return z;
}

CycNum CycNum::operator+(const CycNum& o) const {
  std::uint64_t L = std::lcm(N_, o.N_);
  CycNum a = raise(L), b = o.raise(L);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

CycNum CycNum::operator-() const {
  CycNum a = *this;
  for (auto& x : a.c_) x = -x;
  return a;
}

CycNum CycNum::operator-(const CycNum& o) const { return *this + (-o); }

CycNum CycNum::operator*(const CycNum& o) const {
  std::uint64_t L = std::lcm(N_, o.N_);
  CycNum a = raise(L), b = o.raise(L);
  std::map<std::uint64_t, Rat> t;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (b.c_[j] != 0) t[i + j] += a.c_[i] * b.c_[j];
  }
  CycNum z;
  z.N_ = L;
  z.c_ = reduce(L, std::move(t));
  return z;
}

CycNum CycNum::operator*(const Rat& s) const {
  CycNum a = *this;
  for (auto& x : a.c_) x *= s;
  return a;
}

CycNum CycNum::conj() const {
  std::map<std::uint64_t, Rat> t;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) t[(N_ - k % N_) % N_] += c_[k];
  CycNum z;
  z.N_ = N_;
  z.c_ = reduce(N_, std::move(t));
  return z;
}

CycNum CycNum::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic number");
  const std::size_t n = c_.size();
  Mat m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CycNum b = zeta(N_, static_cast<std::int64_t>(j));
    CycNum col = *this * b;
    m.set_col(j, col.c_);
  }
  Vec rhs(n, Rat(0));
  rhs[0] = 1;
  CycNum z;
  z.N_ = N_;
  z.c_ = solve(m, rhs);
  return z;
}

bool CycNum::operator==(const CycNum& o) const {
  std::uint64_t L = std::lcm(N_, o.N_);
  return raise(L).c_ == o.raise(L).c_;
}

bool CycNum::is_rational(Rat* out) const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return false;
  if (out) *out = c_[0];
  return true;
}

std::string CycNum::str() const {
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c_[k]) + ")z^" + std::to_string(k);
  }
  if (s.empty()) s = "0";
  return s + " [N=" + std::to_string(N_) + "]";
}

Rat abs_square(const CycNum& x) {
  CycNum y = x * x.conj();
  Rat r;
  if (!y.is_rational(&r)) throw std::domain_error("|x|^2 is not rational");
  return r;
}

Mu8 as_mu8(const CycNum& x) {
  for (int k = 0; k < 8; ++k)
    if (x == CycNum::from_mu8(Mu8(k))) return Mu8(k);
  throw std::domain_error("value is not an eighth root of unity: " + x.str());
}

CycNum sqrt_p(const Int& p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("sqrt_p needs an odd prime");
  const std::uint64_t n = p.get_ui();
  std::vector<Rat> counts(n, Rat(0));
  for (std::uint64_t x = 0; x < n; ++x) counts[(x * x) % n] += 1;
  CycNum g = CycNum::from_exponent_counts(n, counts);
  if (n % 4 == 1) return g;
  return g * CycNum::zeta(4, 3);
}

CycNum gauss_sum_legendre(const Int& p) {
  const std::uint64_t n = p.get_ui();
  std::vector<Rat> counts(n, Rat(0));
  for (std::uint64_t x = 1; x < n; ++x) counts[x] = legendre(Int(static_cast<unsigned long>(x)), p);
  return CycNum::from_exponent_counts(n, counts);
}

}  // namespace mtf
