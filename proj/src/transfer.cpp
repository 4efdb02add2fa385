// SPDX-License-Identifier: Apache-2.0
#include "mtf/transfer.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

#include "mtf/quadratic_form.hpp"
#include "mtf/symplectic.hpp"

namespace mtf {
namespace {

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> v(to - from);
  std::iota(v.begin(), v.end(), from);
  return v;
}

std::size_t half_dim(const EtaleAlg& k) { return k.dim_F() / 2; }

void require_same_place(const EtaleAlg& a, const EtaleAlg& b) {
  if (a.size() && b.size() && !(a.place() == b.place())) throw std::invalid_argument("parameters live at different places");
}

int hilbert_pow(const Place& pl, std::size_t e) { return e % 2 ? hilbert(Rat(-1), Rat(-1), pl) : 1; }

Mu8 mu8_sign(int s) { return Mu8::from_sign(s); }

}  // namespace

EndoDatum HClassParam::datum() const { return EndoDatum{half_dim(prime.alg), half_dim(second.alg)}; }

EtaleAlg CorrespondencePair::alg_prime() const { return delta.alg.sub_algebra(iota(0, split)); }
EtaleAlg CorrespondencePair::alg_second() const { return delta.alg.sub_algebra(iota(split, delta.alg.size())); }
EtaleElem CorrespondencePair::a_prime() const { return delta.alg.restrict(delta.a, iota(0, split)); }
EtaleElem CorrespondencePair::a_second() const { return delta.alg.restrict(delta.a, iota(split, delta.alg.size())); }

ClassParam CorrespondencePair::delta_prime() const {
  auto idx = iota(0, split);
  return ClassParam{-1, ParamMode::Group, alg_prime(), a_prime(), delta.alg.restrict(delta.c, idx)};
}

ClassParam CorrespondencePair::delta_second() const {
  auto idx = iota(split, delta.alg.size());
  return ClassParam{-1, ParamMode::Group, alg_second(), a_second(), delta.alg.restrict(delta.c, idx)};
}

CorrespondencePair correspond(const HClassParam& gamma, const std::optional<EtaleElem>& c) {
  for (const ClassParam* g : {&gamma.prime, &gamma.second}) {
    if (g->alg.size() == 0) continue;
    if (g->epsilon != 1 || g->mode != ParamMode::Group)
      throw std::invalid_argument("gamma: H-side parameters must be group mode with epsilon = +1");
    g->validate();
  }
  require_same_place(gamma.prime.alg, gamma.second.alg);
  if (gamma.prime.alg.size() + gamma.second.alg.size() == 0) throw std::invalid_argument("gamma: empty datum");
  CorrespondencePair pair;
  pair.gamma = gamma;
  pair.split = gamma.prime.alg.size();
  EtaleAlg alg = EtaleAlg::product(gamma.prime.alg, gamma.second.alg);
  EtaleElem a = EtaleAlg::concat(gamma.prime.a, gamma.second.alg.neg(gamma.second.a));
  pair.delta = ClassParam{-1, ParamMode::Group, alg, a, c ? *c : alg.sqrt_d()};
  try {
    pair.delta.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("gamma: not G-regular (") + e.what() + ")");
  }
  return pair;
}

int delta0_data(const EtaleAlg& k1, const EtaleElem& a1, const EtaleAlg& k2, const EtaleElem& b2) {
  if (k1.size() == 0 || k2.size() == 0) return 1;
  require_same_place(k1, k2);
  const long n1 = static_cast<long>(half_dim(k1));
  const Rat n = k1.norm_to_F(k1.add(k1.one(), a1));
  if (n == 0) throw std::domain_error("delta': eigenvalue -1");
  EtaleElem v = k2.eval(k1.char_poly(a1), b2);
  if (!k2.is_invertible(v)) throw std::domain_error("P_{a'}(a'') is not invertible");
  v = k2.scale(k2.mul(v, k2.pow(k2.neg(b2), -n1)), n);
  if (!k2.is_tau_fixed(v)) throw std::logic_error("Delta_0 argument is not in K''#");
  return k2.sgn_char(v);
}

int delta0(const CorrespondencePair& pair) {
  return delta0_data(pair.alg_prime(), pair.a_prime(), pair.alg_second(), pair.a_second());
}

bool delta0_reciprocity_check(const CorrespondencePair& pair) {
  const EtaleAlg k1 = pair.alg_prime(), k2 = pair.alg_second();
  const EtaleElem a1 = pair.a_prime(), b2 = pair.a_second();
  return delta0_data(k1, a1, k2, b2) == delta0_data(k2, k2.neg(b2), k1, k1.neg(a1));
}

CorrespondencePair twist_pair(const CorrespondencePair& pair, const std::vector<int>& twist) {
  const EtaleAlg& A = pair.delta.alg;
  auto inert = A.inert_indices();
  if (twist.size() != inert.size()) throw std::invalid_argument("twist: expected one sign per inert factor");
  std::vector<Vec> t;
  for (const auto& f : A.factors()) t.push_back(f.ksharp->one());
  for (std::size_t j = 0; j < inert.size(); ++j) {
    if (twist[j] != 1 && twist[j] != -1) throw std::invalid_argument("twist: entries must be +1 or -1");
    if (twist[j] == -1) t[inert[j]] = A.non_norm(inert[j]);
  }
  CorrespondencePair out = pair;
  out.delta.c = A.mul(pair.delta.c, A.from_sharp(t));
  out.delta.validate();
  return out;
}

Mu8 gamma_cayley_param(const ClassParam& param) {
  if (param.alg.size() == 0) return Mu8::one();
  Realization r = matrix_realization(param);
  Mat C = cayley(r.op);
  return weil_index(QForm(param.alg.place(), C.transpose() * r.gram), PsiSpec(param.alg.place()));
}

TwistResult delta0_cocycle_twist(const CorrespondencePair& pair, const std::vector<int>& twist) {
  CorrespondencePair p1 = twist_pair(pair, twist);
  const EtaleAlg k2 = pair.alg_second();
  std::size_t n_first = 0;
  for (auto i : pair.delta.alg.inert_indices())
    if (i < pair.split) ++n_first;
  std::vector<int> first(twist.begin(), twist.begin() + static_cast<long>(n_first));
  std::vector<int> second(twist.begin() + static_cast<long>(n_first), twist.end());
  TwistResult r;
  r.kappa = kappa_pair(first, second);
  r.delta0_invariant = delta0(p1) == delta0(pair);
  ClassParam d2 = pair.delta_second(), d2t = p1.delta_second();
  r.gamma_ratio = gamma_cayley_param(d2t) * gamma_cayley_param(d2).inv();
  r.sgn_ratio = k2.size() ? k2.sgn_char(k2.mul(k2.inv(d2.c), d2t.c)) : 1;
  return r;
}

Mat realize_standard(const ClassParam& param) {
  param.validate();
  if (param.epsilon != -1 || param.mode != ParamMode::Group)
    throw std::invalid_argument("delta: expected a group-mode parameter with epsilon = -1");
  std::vector<Mat> blocks;
  for (std::size_t i = 0; i < param.alg.size(); ++i) {
    if (param.alg.factors()[i].ksharp->degree() != 1)
      throw std::invalid_argument("delta: lattice realization needs K_i# = F for every factor");
    std::vector<std::size_t> idx{i};
    ClassParam pi{-1, ParamMode::Group, param.alg.sub_algebra(idx), param.alg.restrict(param.a, idx),
                  param.alg.restrict(param.c, idx)};
    Realization r = matrix_realization(pi);
    const Rat g = r.gram(0, 1);
    Mat P = Mat::diag({Rat(1), 1 / g});
    Mat Pinv = Mat::diag({Rat(1), g});
    if (!(P.transpose() * r.gram * P == std_J(1))) throw std::logic_error("standard basis change failed");
    blocks.push_back(Pinv * r.op * P);
  }
  return sp_block_embed(blocks);
}

std::pair<Mat, Mat> sp_block_split(const Mat& x, std::size_t n1) {
  if (!x.square() || x.rows() % 2) throw std::invalid_argument("matrix: expected size 2n x 2n");
  const std::size_t n = x.rows() / 2;
  if (n1 > n) throw std::invalid_argument("splitting: n' exceeds n");
  std::vector<std::size_t> i1, i2;
  for (std::size_t k = 0; k < n; ++k) (k < n1 ? i1 : i2).push_back(k);
  for (std::size_t k = 0; k < n; ++k) (k < n1 ? i1 : i2).push_back(n + k);
  for (auto i : i1)
    for (auto j : i2)
      if (x(i, j) != 0 || x(j, i) != 0) throw std::invalid_argument("matrix: does not preserve the splitting W' + W''");
  auto sub = [&](const std::vector<std::size_t>& idx) {
    Mat b(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = x(idx[i], idx[j]);
    return b;
  };
  return {sub(i1), sub(i2)};
}

FullDelta full_delta(const CorrespondencePair& pair, const Mat& x, const LatticeModel& m) {
  const std::size_t n1 = half_dim(pair.alg_prime()), n2 = half_dim(pair.alg_second());
  if (m.n != n1 + n2 || x.rows() != 2 * m.n) throw std::invalid_argument("matrix: size does not match the pair");
  if (!(pair.delta.alg.place() == m.place)) throw std::invalid_argument("pair: place differs from the lattice model");
  if (!is_symplectic(x) || !in_K(x, m)) throw std::invalid_argument("matrix: not in the hyperspecial compact");
  auto [x1, x2] = sp_block_split(x, n1);
  if (n1 && !(charpoly(x1) == pair.alg_prime().char_poly(pair.a_prime())))
    throw std::invalid_argument("matrix: W' block does not have eigenvalue datum a'");
  if (n2 && !(charpoly(x2) == pair.alg_second().char_poly(pair.a_second())))
    throw std::invalid_argument("matrix: W'' block does not have eigenvalue datum -a''");
  const Mat I = Mat::identity(x.rows());
  if (det(x - I) == 0 || det(x + I) == 0) throw std::domain_error("matrix: eigenvalue 1 or -1");

  FullDelta out;
  out.delta0 = delta0(pair);
  ThetaVal th = theta_lattice(-x, m);
  out.theta = th.value;
  out.theta_abs2 = abs_square(th.value);
  const Int& p = m.p();
  const long k = out.theta_abs2 == 0 ? kValInf : vp(out.theta_abs2, p);
  if (k == kValInf || out.theta_abs2 != rpow(Rat(p), k))
    throw std::domain_error("|Theta(-delta)|^2 is not a power of p");
  out.gamma_second = n2 ? weil_index(q_of_X(cayley(x2), m.place), m.psi()) : Mu8::one();
  CycNum v = th.value * p_half_power(p, -k) * mu8_sign(out.delta0) * out.gamma_second;
  try {
    out.value = as_mu8(v);
  } catch (const std::exception&) {
    throw std::domain_error("transfer factor is not in mu8: " + v.str());
  }
  return out;
}

FullDelta full_delta(const CorrespondencePair& pair, const LatticeModel& m) {
  return full_delta(pair, realize_standard(pair.delta), m);
}

bool parabolic_descent_check(const CorrespondencePair& pair, const std::vector<Rat>& u_prime,
                             const std::vector<Rat>& u_second) {
  const EtaleAlg k1 = pair.alg_prime(), k2 = pair.alg_second();
  const EtaleElem a1 = pair.a_prime(), b2 = pair.a_second();
  const int core = delta0_data(k1, a1, k2, b2);
  auto base = LocalField::rationals(pair.delta.alg.place());
  auto extend = [&](const EtaleAlg& k, const EtaleElem& a, const std::vector<Rat>& us) {
    std::vector<EtaleFactor> fs;
    EtaleElem e;
    for (const Rat& u : us) {
      if (u == 0) throw std::invalid_argument("split block eigenvalue must be nonzero");
      fs.push_back(EtaleFactor::make_split(base));
      e.parts.emplace_back(Vec{u}, Vec{1 / u});
    }
    EtaleAlg extra(fs);
    return std::make_pair(EtaleAlg::product(k, extra), EtaleAlg::concat(a, e));
  };
  auto [k1x, a1x] = extend(k1, a1, u_prime);
  auto [k2x, b2x] = extend(k2, b2, u_second);
  return delta0_data(k1x, a1x, k2x, b2x) == core;
}

CalculQX calcul_qx(const ClassParam& param) {
  param.validate();
  if (param.epsilon != -1 || param.mode != ParamMode::Lie)
    throw std::invalid_argument("param: expected a Lie-mode parameter with epsilon = -1");
  const EtaleAlg& A = param.alg;
  const Place& pl = A.place();
  const PsiSpec psi(pl);
  Realization r = matrix_realization(param);
  CalculQX out;
  out.gram_side = weil_index(QForm(pl, r.op.transpose() * r.gram), psi);
  const std::size_t n = half_dim(A);
  const int s = A.sgn_char(A.mul(A.inv(param.c), A.deriv_eval(param.a)));
  out.closed_form = weil_index_rank1(Rat(n % 2 ? 1 : -1), psi) * weil_index_rank1(det(r.op), psi) * mu8_sign(s);
  return out;
}

int sign_from_gram(const ClassParam& param) {
  CalculQX c = calcul_qx(param);
  const PsiSpec psi(param.alg.place());
  const std::size_t n = half_dim(param.alg);
  Realization r = matrix_realization(param);
  Mu8 q = c.gram_side * (weil_index_rank1(Rat(n % 2 ? 1 : -1), psi) * weil_index_rank1(det(r.op), psi)).inv();
  if (q == Mu8(0)) return 1;
  if (q == Mu8(4)) return -1;
  throw std::logic_error("Gram route did not produce a sign");
}

namespace {

int descent_sign(const ClassParam& y, const Poly& px) {
  y.validate();
  const EtaleAlg& A = y.alg;
  EtaleElem v = A.eval(px.derivative(), y.a);
  if (!A.is_invertible(v)) throw std::domain_error("descent data not regular");
  EtaleElem t = A.mul(A.inv(y.c), v);
  if (!A.is_tau_fixed(t)) throw std::invalid_argument("descent argument is not in K#");
  return A.sgn_char(t);
}

LNum lmul(const QuadExt& L, const LNum& a, const LNum& b) { return {a.x * b.x + L.d * a.y * b.y, a.x * b.y + a.y * b.x}; }
LNum ladd(const LNum& a, const LNum& b) { return {a.x + b.x, a.y + b.y}; }

}  // namespace

int lie_descent_plus(const ClassParam& second, const Poly& p_x_plus) { return descent_sign(second, p_x_plus); }
int lie_descent_minus(const ClassParam& prime, const Poly& p_x_minus) { return descent_sign(prime, p_x_minus); }

std::vector<LNum> charpoly_over(const QuadExt& L, const std::vector<std::vector<LNum>>& X) {
  const std::size_t m = X.size();
  for (const auto& row : X)
    if (row.size() != m) throw std::invalid_argument("X_u: expected a square matrix");
  using LMat = std::vector<std::vector<LNum>>;
  auto mul = [&](const LMat& a, const LMat& b) {
    LMat c(m, std::vector<LNum>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) c[i][j] = ladd(c[i][j], lmul(L, a[i][k], b[k][j]));
    return c;
  };
  std::vector<LNum> coef(m + 1);
  coef[m] = {Rat(1), Rat(0)};
  LMat M(m, std::vector<LNum>(m));
  for (std::size_t k = 1; k <= m; ++k) {
    LMat AM = mul(X, M);
    for (std::size_t i = 0; i < m; ++i) AM[i][i] = ladd(AM[i][i], coef[m - k + 1]);
    M = AM;
    LMat AMk = mul(X, M);
    LNum tr;
    for (std::size_t i = 0; i < m; ++i) tr = ladd(tr, AMk[i][i]);
    coef[m - k] = {-tr.x / static_cast<long>(k), -tr.y / static_cast<long>(k)};
  }
  return coef;
}

int lie_descent_u(const ClassParam& second, const QuadExt& L, const std::vector<std::vector<LNum>>& x_u,
                  const std::optional<LNum>& gamma_u) {
  if (L.split) return 1;
  second.validate();
  const EtaleAlg& A = second.alg;
  for (const auto& f : A.factors()) {
    if (f.split || !(f.d == f.ksharp->from_rat(L.d)))
      throw std::invalid_argument("K'': every factor must be K''#(sqrt d_L)");
  }
  const std::size_t m = x_u.size();
  LNum g = gamma_u ? *gamma_u : (m % 2 ? LNum{Rat(0), Rat(1)} : LNum{Rat(1), Rat(0)});
  const int parity = m % 2 ? -1 : 1;
  if (g.x == 0 && g.y == 0) throw std::invalid_argument("gamma_u: must be nonzero");
  if (!(g.x == parity * g.x && -g.y == parity * g.y)) throw std::invalid_argument("gamma_u: tau(gamma_u) != (-1)^dim gamma_u");
  const EtaleElem s = A.sqrt_d();
  auto embed = [&](const LNum& z) { return A.add(A.from_rat(z.x), A.scale(s, z.y)); };
  std::vector<LNum> P = charpoly_over(L, x_u);
  auto eval_at = [&](const std::vector<LNum>& poly) {
    EtaleElem acc = A.zero();
    for (std::size_t i = poly.size(); i-- > 0;) acc = A.add(A.mul(acc, second.a), embed(poly[i]));
    return acc;
  };
  if (!(eval_at(P) == A.zero())) throw std::invalid_argument("x_u: a'' is not an eigenvalue datum of X_u");
  std::vector<LNum> dP;
  for (std::size_t i = 1; i < P.size(); ++i) dP.push_back({P[i].x * Rat(i), P[i].y * Rat(i)});
  EtaleElem acc = eval_at(dP);
  if (!A.is_invertible(acc)) throw std::domain_error("descent data not regular");
  EtaleElem t = A.mul(A.mul(embed(g), A.inv(second.c)), acc);
  if (!A.is_tau_fixed(t)) throw std::invalid_argument("descent argument is not in K''#");
  return A.sgn_char(t);
}

ReciprocityResult reciprocity_lie(const ClassParam& x1, const ClassParam& x2) {
  for (const ClassParam* x : {&x1, &x2}) {
    x->validate();
    if (x->epsilon != -1 || x->mode != ParamMode::Lie) throw std::invalid_argument("expected Lie parameters with epsilon = -1");
  }
  require_same_place(x1.alg, x2.alg);
  const EtaleAlg &k1 = x1.alg, &k2 = x2.alg;
  EtaleElem v1 = k1.eval(k2.char_poly(x2.a), x1.a);
  EtaleElem v2 = k2.eval(k1.char_poly(x1.a), x2.a);
  if (!k1.is_invertible(v1) || !k2.is_invertible(v2)) throw std::domain_error("spectra overlap");
  ReciprocityResult r;
  r.lhs = k1.sgn_char(v1) * k2.sgn_char(v2);
  const Place& pl = k1.place();
  r.rhs = hilbert_pow(pl, half_dim(k1) * half_dim(k2)) * hilbert(k1.norm_to_F(x1.a), k2.norm_to_F(x2.a), pl);
  return r;
}

ReciprocityResult reciprocity_group(const EtaleAlg& k1, const EtaleElem& a1, const EtaleAlg& k2, const EtaleElem& a2) {
  require_same_place(k1, k2);
  const long n1 = static_cast<long>(half_dim(k1)), n2 = static_cast<long>(half_dim(k2));
  auto side = [](const EtaleAlg& ka, const EtaleElem& a, const EtaleAlg& kb, const EtaleElem& b, long nb) {
    // sgn_{Ka}(P_b(a) (-a)^{-nb} det(delta_b - 1))
    EtaleElem v = ka.eval(kb.char_poly(b), a);
    if (!ka.is_invertible(v)) throw std::domain_error("spectra overlap");
    v = ka.mul(v, ka.pow(ka.neg(a), -nb));
    v = ka.scale(v, kb.norm_to_F(kb.sub(b, kb.one())));
    return ka.sgn_char(v);
  };
  ReciprocityResult r;
  r.lhs = side(k2, a2, k1, a1, n1) * side(k1, a1, k2, a2, n2);
  auto cay = [](const EtaleAlg& k, const EtaleElem& a) -> Rat {
    return k.norm_to_F(k.add(a, k.one())) / k.norm_to_F(k.sub(a, k.one()));
  };
  const Place& pl = k1.place();
  r.rhs = hilbert_pow(pl, static_cast<std::size_t>(n1 * n2)) * hilbert(cay(k1, a1), cay(k2, a2), pl);
  return r;
}

bool mobius_check(const Poly& p_z, const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  if (c == 0) throw std::invalid_argument("mobius: c must be nonzero");
  if (a * d - b * c == 0) throw std::invalid_argument("mobius: singular matrix");
  if (p_z.degree() < 1 || p_z.lead() != 1) throw std::invalid_argument("mobius: P_z must be monic of positive degree");
  const long m = p_z.degree();
  QAlgebra K = QAlgebra::monogenic(p_z);
  const Vec z = K.basis(1 % static_cast<std::size_t>(m));
  const Vec zz = m == 1 ? K.from_rat(-p_z.coeff(0)) : z;
  const Vec den = K.add(K.scale(zz, c), K.from_rat(d));
  const Vec w = K.mul(K.add(K.scale(zz, a), K.from_rat(b)), K.inv(den));
  const Poly pw = K.charpoly(w);
  // (cT+d)^m P_w((aT+b)/(cT+d)) = sum_j p_j (aT+b)^j (cT+d)^{m-j}
  const Poly num{b, a}, dd{d, c};
  Poly lhs;
  for (long j = 0; j <= m; ++j) {
    Poly term = Poly::constant(pw.coeff(static_cast<std::size_t>(j)));
    for (long i = 0; i < j; ++i) term = term * num;
    for (long i = j; i < m; ++i) term = term * dd;
    lhs = lhs + term;
  }
  const Rat k = rpow(c, m) * pw(a / c);
  if (!(lhs == p_z * k)) return false;
  const Vec left = K.scale(K.mul(K.pow(den, m - 2), K.eval(pw.derivative(), w)), a * d - b * c);
  const Vec right = K.scale(K.eval(p_z.derivative(), zz), k);
  return left == right;
}

int delta_R(const std::vector<CirclePoint>& w1, const std::vector<CirclePoint>& w2) {
  int s = 1;
  for (const auto& u : w1)
    for (const auto& v : w2) {
      const Rat diff = u.first - v.first;
      if (diff == 0) throw std::domain_error("Re(w') = Re(w''): not G-regular");
      s *= sign(diff);
    }
  return s;
}

int delta0_real(const std::vector<CirclePoint>& w1, const std::vector<CirclePoint>& w2, const std::vector<Rat>& split1,
                const std::vector<Rat>& split2) {
  auto R = LocalField::rationals(Place::real());
  auto build = [&](const std::vector<CirclePoint>& w, const std::vector<Rat>& us) {
    std::vector<EtaleFactor> fs;
    EtaleElem a;
    for (const auto& [re, im] : w) {
      if (re * re + im * im != 1 || im == 0) throw std::invalid_argument("circle point must satisfy re^2 + im^2 = 1, im != 0");
      fs.push_back(EtaleFactor::make_inert(R, Vec{Rat(-1)}));
      a.parts.emplace_back(Vec{re}, Vec{im});
    }
    for (const Rat& u : us) {
      if (u == 0 || u == 1 || u == -1) throw std::invalid_argument("split eigenvalue must differ from 0, 1, -1");
      fs.push_back(EtaleFactor::make_split(R));
      a.parts.emplace_back(Vec{u}, Vec{1 / u});
    }
    return std::make_pair(EtaleAlg(fs), a);
  };
  auto [k1, a1] = build(w1, split1);
  auto [k2, a2] = build(w2, split2);
  return delta0_data(k1, a1, k2, a2);
}

ProductFormula product_formula_delta0(const std::vector<RationalFactor>& prime, const std::vector<RationalFactor>& second) {
  auto alg = [](const RationalFactor& f) { return QAlgebra::monogenic(Poly{-f.d, Rat(0), Rat(1)}); };
  for (const auto* side : {&prime, &second})
    for (const auto& f : *side) {
      if (f.d == 0) throw std::invalid_argument("factor: d must be nonzero");
      if (f.x * f.x - f.d * f.y * f.y != 1) throw std::invalid_argument("factor: element must have norm 1");
    }
  ProductFormula out;
  const long n1 = static_cast<long>(prime.size());
  Rat nplus = 1;
  for (const auto& f : prime) nplus *= (1 + f.x) * (1 + f.x) - f.d * f.y * f.y;
  if (nplus == 0) throw std::domain_error("delta': eigenvalue -1");
  for (const auto& g : second) {
    QAlgebra A = alg(g);
    const Vec b{g.x, g.y};
    Vec v = A.one();
    for (const auto& f : prime) v = A.mul(v, A.eval(Poly{Rat(1), -2 * f.x, Rat(1)}, b));
    v = A.scale(A.mul(v, A.pow(A.neg(b), -n1)), nplus);
    Rat r;
    if (!A.is_rational(v, &r)) throw std::logic_error("alpha'' is not rational");
    if (r == 0) throw std::domain_error("not G-regular: alpha'' = 0");
    out.alpha.push_back(r);
  }
  auto support = [&](const std::vector<Rat>& alpha) {
    std::set<Int> ps;
    auto add = [&](const Rat& q) {
      for (const Int& z : {Int(q.get_num()), Int(q.get_den())})
        if (z != 0)
          for (const Int& p : prime_factors(z))
            if (p != 2) ps.insert(p);
    };
    for (const Rat& a : alpha) add(a);
    for (const auto& g : second) add(g.d);
    return ps;
  };
  auto local = [&](const std::vector<Rat>& alpha, const Place& pl) {
    int s = 1;
    for (std::size_t i = 0; i < second.size(); ++i) s *= hilbert(alpha[i], second[i].d, pl);
    return s;
  };
  auto complement = [&](const std::vector<Rat>& alpha, std::vector<std::pair<std::string, int>>* rec) {
    int prod = 1;
    const int r = local(alpha, Place::real());
    if (rec) rec->emplace_back("real", r);
    prod *= r;
    for (const Int& p : support(alpha)) {
      const int s = local(alpha, Place::padic(p));
      if (rec) rec->emplace_back(p.get_str(), s);
      prod *= s;
    }
    return prod;
  };
  out.complement_2 = complement(out.alpha, &out.local);
  out.stable = true;
  for (long q : {3L, 5L, 7L}) {
    std::vector<Rat> scaled = out.alpha;
    for (auto& a : scaled) a *= q * q;
    if (complement(scaled, nullptr) != out.complement_2) out.stable = false;
  }
  const auto supp = support(out.alpha);
  for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L})
    if (!supp.count(Int(q)) && local(out.alpha, Place::padic(Int(q))) != 1) out.stable = false;
  return out;
}

}  // namespace mtf
