// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mtf/etale.hpp"
#include "mtf/symplectic.hpp"
#include "mtf/transfer.hpp"

namespace mtf {

// Seeded source; every draw goes through uniform() so that streams are
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  // Independent stream for trial `index` of a check seeded by `seed`.
  static Rng trial(std::uint64_t seed, std::uint64_t check, std::uint64_t index);

  long uniform(long lo, long hi);  // inclusive
  bool coin() { return uniform(0, 1) == 1; }
  Rat rat(long num_bound, long den_bound, bool nonzero = true);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 g_;
};

// Small odd primes used by the suites.
const std::vector<long>& small_primes();

// K# over the place: Q_p, or a tower of degree <= max_degree; R at the real place.
LocalFieldPtr random_ksharp(Rng& rng, const Place& pl, int max_degree);
LocalFieldPtr ksharp_of_degree(Rng& rng, const Place& pl, int degree);
LocalField::Elem random_element(Rng& rng, const LocalField& k, bool nonzero = true);
LocalField::Elem random_nonsquare(Rng& rng, const LocalField& k);

// Algebra whose K# factors have the given degrees; factor kinds drawn at random
// (or all inert / all split when forced).
enum class FactorKinds { Mixed, Inert, Split };
EtaleAlg random_etale(Rng& rng, const Place& pl, const std::vector<int>& degrees, FactorKinds kinds = FactorKinds::Mixed);
std::vector<int> random_degrees(Rng& rng, const Place& pl, int total);

EtaleElem random_unit(Rng& rng, const EtaleAlg& A);
EtaleElem random_hermitian(Rng& rng, const EtaleAlg& A);      // tau(x) = x
EtaleElem random_antihermitian(Rng& rng, const EtaleAlg& A);  // tau(x) = -x
EtaleElem random_norm_one(Rng& rng, const EtaleAlg& A);       // tau(x) x = 1

// Regular parameters; retries until valid.
ClassParam random_lie_param(Rng& rng, const EtaleAlg& A);
ClassParam random_group_param(Rng& rng, const EtaleAlg& A, int epsilon);

// Products of integral symplectic transvections.
Mat random_sp_integral(Rng& rng, std::size_t n, int steps);
Mat random_sp_lie_integral(Rng& rng, std::size_t n, long bound);
// Topologically unipotent x in Sp(2n, Z_(p)) with 1 <= v_p(det(x-1)) <= vmax.
Mat random_top_unipotent(Rng& rng, const Int& p, std::size_t n, long vmax);
// x in Sp(2n, Z_(p)) with separable reduction.
Mat random_regular_reduction(Rng& rng, const Int& p, std::size_t n);
std::vector<Lagrangian> random_lagrangians(Rng& rng, std::size_t n, std::size_t m);

// Corresponding pairs (gamma, delta).
CorrespondencePair random_pair(Rng& rng, const Place& pl, int deg1, int deg2);
// Sp(2)-blocks over Q_p, delta in K with regular reduction.
CorrespondencePair regular_reduction_pair(Rng& rng, const Int& p, std::size_t n1, std::size_t n2);
// Sp(2)-blocks over Q_p: delta' topologically unipotent, -delta'' topologically unipotent.
CorrespondencePair compact_pair(Rng& rng, const Int& p, std::size_t n1, std::size_t n2);

// Rational point of the unit circle other than (+-1, 0).
CirclePoint random_circle_point(Rng& rng);

}  // namespace mtf
