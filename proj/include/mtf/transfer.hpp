// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtf/cyclotomic.hpp"
#include "mtf/etale.hpp"
#include "mtf/weil_character.hpp"

namespace mtf {

struct EndoDatum {
  std::size_t n1 = 0, n2 = 0;  // (n', n''), ordered
  bool operator==(const EndoDatum&) const = default;
};

// Class in SO(2n'+1) x SO(2n''+1): two group-mode parameters with epsilon = +1.
struct HClassParam {
  ClassParam prime;
  ClassParam second;
  EndoDatum datum() const;
};

// gamma together with a corresponding delta in Sp(2n): delta.alg = K' x K'',
// the first `split` factors forming K'. delta.a = (a', -a'').
struct CorrespondencePair {
  HClassParam gamma;
  ClassParam delta;
  std::size_t split = 0;

  EtaleAlg alg_prime() const;
  EtaleAlg alg_second() const;
  EtaleElem a_prime() const;   // eigenvalue datum of delta'
  EtaleElem a_second() const;  // eigenvalue datum of delta'' (G side)
  ClassParam delta_prime() const;
  ClassParam delta_second() const;
};

// Builds delta from gamma; c defaults to sqrt d (an anti-hermitian unit).
// Throws std::invalid_argument when gamma is not G-regular.
CorrespondencePair correspond(const HClassParam& gamma, const std::optional<EtaleElem>& c = std::nullopt);

// sgn_{K''/K''#}(P_{a'}(b'') (-b'')^{-n'} N_{K'/F}(1 + a')) for delta' with
// eigenvalue datum a' on K' and delta'' with eigenvalue datum b'' on K''.
// Either algebra may be empty.
int delta0_data(const EtaleAlg& k1, const EtaleElem& a1, const EtaleAlg& k2, const EtaleElem& b2);
int delta0(const CorrespondencePair& pair);
// Delta_0(delta', delta'') == Delta_0(-delta'', -delta').
bool delta0_reciprocity_check(const CorrespondencePair& pair);

// Twist c of delta by non-norms: twist is a sign vector over I'* then I''*.
CorrespondencePair twist_pair(const CorrespondencePair& pair, const std::vector<int>& twist);

struct TwistResult {
  int kappa = 1;           // kappa_pair of the twist
  bool delta0_invariant = false;
  Mu8 gamma_ratio;         // gamma(q[C_{delta''_1}]) / gamma(q[C_{delta''}])
  int sgn_ratio = 1;       // sgn_{K''/K''#}(c''_1 / c'')
  bool consistent() const { return delta0_invariant && gamma_ratio == Mu8::from_sign(kappa) && sgn_ratio == kappa; }
};
TwistResult delta0_cocycle_twist(const CorrespondencePair& pair, const std::vector<int>& twist);

// gamma_psi(q[C_y]) for y realized from a parameter by matrix_realization.
Mu8 gamma_cayley_param(const ClassParam& param);

// Realization of an epsilon = -1 group-mode parameter with all K_i# = Q_p
// (or R) as a block-diagonal element of Sp(2n) for the standard form.
Mat realize_standard(const ClassParam& param);
// Blocks (x', x'') of x along W' = span(e_1..e_n', f_1..f_n'); throws if x
// does not preserve the splitting.
std::pair<Mat, Mat> sp_block_split(const Mat& x, std::size_t n1);

struct FullDelta {
  Mu8 value;
  int delta0 = 1;
  CycNum theta;        // Theta(-delta) in the lattice model
  Rat theta_abs2;      // |Theta(-delta)|^2
  Mu8 gamma_second;    // gamma_psi(q[C_{delta''}])
};
// Delta(gamma, delta~) with the lattice-model section; x is the element of
// Sp(2n) (W' first, W'' second) realizing pair.delta.
FullDelta full_delta(const CorrespondencePair& pair, const Mat& x, const LatticeModel& m);
FullDelta full_delta(const CorrespondencePair& pair, const LatticeModel& m);

// Appending matched split blocks leaves Delta_0 unchanged.
bool parabolic_descent_check(const CorrespondencePair& pair, const std::vector<Rat>& u_prime,
                             const std::vector<Rat>& u_second);

// Keystone formula for an epsilon = -1 Lie parameter (K/K#, a, c):
// gamma(q[X]) = gamma((-1)^{n-1}) gamma(det X) sgn(c^{-1} P'_a(a)).
struct CalculQX {
  Mu8 gram_side;
  Mu8 closed_form;
  bool holds() const { return gram_side == closed_form; }
};
CalculQX calcul_qx(const ClassParam& lie_param);
// sgn_{K/K#}(c^{-1} P'_a(a)) recovered from the Gram matrix of q[X].
int sign_from_gram(const ClassParam& lie_param);

// Descent sign factors.
int lie_descent_plus(const ClassParam& second, const Poly& p_x_plus);
int lie_descent_minus(const ClassParam& prime, const Poly& p_x_minus);

// Element x + y sqrt d of L = F(sqrt d).
struct LNum {
  Rat x = 0, y = 0;
};
struct QuadExt {
  Rat d = 1;
  bool split = false;  // L = F x F
};
// Characteristic polynomial over L of an L-matrix (coefficients little-endian).
std::vector<LNum> charpoly_over(const QuadExt& L, const std::vector<std::vector<LNum>>& X);
// Delta_u = sgn_{K''/K''#}(gamma_u c''^{-1} P'_{X_u|L}(a'')); K'' has inert factors with d = d_L
// and a'' must be a root of P_{X_u|L}.
int lie_descent_u(const ClassParam& second, const QuadExt& L, const std::vector<std::vector<LNum>>& x_u,
                  const std::optional<LNum>& gamma_u = std::nullopt);

struct ReciprocityResult {
  int lhs = 1, rhs = 1;
  bool holds() const { return lhs == rhs; }
};
// Lie-algebra lemma for Lie parameters X' on K', X'' on K''.
ReciprocityResult reciprocity_lie(const ClassParam& x1, const ClassParam& x2);
// Group lemma for group-mode data a' on K', a'' on K''.
ReciprocityResult reciprocity_group(const EtaleAlg& k1, const EtaleElem& a1, const EtaleAlg& k2,
                                    const EtaleElem& a2);

// Fractional-linear identities for z generating Q[T]/(P_z):
// (cT+d)^m P_w((aT+b)/(cT+d)) = c^m P_w(a/c) P_z(T) and the derivative form.
bool mobius_check(const Poly& p_z, const Rat& a, const Rat& b, const Rat& c, const Rat& d);

// Real place: eigenvalues on the unit circle as (re, im).
using CirclePoint = std::pair<Rat, Rat>;
int delta_R(const std::vector<CirclePoint>& w1, const std::vector<CirclePoint>& w2);
// Delta_0 via sgn over C/R factors, with optional real split eigenvalues.
int delta0_real(const std::vector<CirclePoint>& w1, const std::vector<CirclePoint>& w2,
                const std::vector<Rat>& split1 = {}, const std::vector<Rat>& split2 = {});

// Rational data: factor Q[T]/(T^2 - d) (d = 1 for split) with element x + yT.
struct RationalFactor {
  Rat d = 1;
  Rat x = 0, y = 0;
};
struct ProductFormula {
  std::vector<Rat> alpha;                        // alpha'' per K'' factor
  std::vector<std::pair<std::string, int>> local; // place -> sgn, over the support
  int complement_2 = 1;                           // the factor at 2 by complementarity
  bool stable = false;  // complement unchanged under odd-square rescaling, +1 off the support
};
ProductFormula product_formula_delta0(const std::vector<RationalFactor>& prime,
                                      const std::vector<RationalFactor>& second);

}  // namespace mtf
