// SPDX-License-Identifier: Apache-2.0
#include "mtf/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace mtf {

Rat parse_rat(std::string_view s) {
  std::string t(s);
  while (!t.empty() && t.front() == ' ') t.erase(t.begin());
  while (!t.empty() && t.back() == ' ') t.pop_back();
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  if (t.front() == '+') t.erase(t.begin());
  for (char ch : t) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '/'))
      throw std::invalid_argument("bad rational literal: " + std::string(s));
  }
  Rat r;
  if (r.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + std::string(s));
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }
std::string to_string(const Int& z) { return z.get_str(10); }

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

long vp(const Int& n, const Int& p) {
  if (n == 0) return kValInf;
  Int m = abs(n);
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

long vp(const Rat& r, const Int& p) {
  if (r == 0) return kValInf;
  return vp(r.get_num(), p) - vp(r.get_den(), p);
}

Int mod_int(const Int& z, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int mod_int(const Rat& r, const Int& m) {
  Int inv;
  Int den = mod_int(r.get_den(), m);
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("denominator not invertible modulo " + m.get_str());
  return mod_int(Int(mod_int(r.get_num(), m) * inv), m);
}

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat& b, long e) {
  if (e >= 0) {
    Rat r(ipow(b.get_num(), static_cast<unsigned long>(e)), ipow(b.get_den(), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
  }
  if (b == 0) throw std::domain_error("zero to a negative power");
  Rat r(ipow(b.get_den(), static_cast<unsigned long>(-e)), ipow(b.get_num(), static_cast<unsigned long>(-e)));
  r.canonicalize();
  return r;
}

int sign(const Rat& r) { return sgn(r); }

Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace mtf

namespace mtf {

std::vector<Int> prime_factors(const Int& n) {
  if (n == 0) throw std::invalid_argument("prime_factors of zero");
  Int m = abs(n);
  std::vector<Int> out;
  for (unsigned long q = 2; q < 1'000'000 && Int(q) * q <= m; q += (q == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      out.emplace_back(q);
      while (mpz_divisible_ui_p(m.get_mpz_t(), q)) m /= q;
    }
  }
  if (m > 1) {
    if (!is_prime(m)) throw std::invalid_argument("prime_factors: cofactor too large to factor: " + m.get_str());
    out.push_back(m);
  }
  return out;
}

}  // namespace mtf
