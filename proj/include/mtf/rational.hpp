// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <string_view>
#include <vector>

namespace mtf {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Rat>;

// Valuation of zero.
inline constexpr long kValInf = LONG_MAX;

Rat parse_rat(std::string_view s);
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

bool is_prime(const Int& n);

// p-adic valuation; kValInf for zero.
long vp(const Int& n, const Int& p);
long vp(const Rat& r, const Int& p);

// r mod m for r with denominator prime to m; result in [0, m).
Int mod_int(const Rat& r, const Int& m);
Int mod_int(const Int& z, const Int& m);

Int ipow(const Int& b, unsigned long e);
Rat rpow(const Rat& b, long e);

int sign(const Rat& r);

// Distinct prime divisors of |n| in increasing order (n != 0).
std::vector<Int> prime_factors(const Int& n);

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);

}  // namespace mtf
