// SPDX-License-Identifier: Apache-2.0
#include "mtf/etale.hpp"

#include <stdexcept>

namespace mtf {

EtaleFactor EtaleFactor::make_split(LocalFieldPtr k) {
  EtaleFactor f;
  f.ksharp = std::move(k);
  f.split = true;
  return f;
}

EtaleFactor EtaleFactor::make_inert(LocalFieldPtr k, LocalField::Elem d) {
  if (k->is_square(d)) throw std::invalid_argument("inert factor: d is a square in K#");
  EtaleFactor f;
  f.ksharp = std::move(k);
  f.split = false;
  f.d = std::move(d);
  return f;
}

EtaleAlg::EtaleAlg(std::vector<EtaleFactor> factors) : f_(std::move(factors)) {
  for (const auto& f : f_) {
    if (!f.ksharp) throw std::invalid_argument("etale factor without a base field");
    if (!(f.ksharp->place() == f_[0].ksharp->place())) throw std::invalid_argument("etale factors live at different places");
    if (!f.split) {
      if (f.d.size() != f.ksharp->degree()) throw std::invalid_argument("inert factor: d has the wrong size");
      if (f.ksharp->is_square(f.d)) throw std::invalid_argument("inert factor: d is a square in K#");
    }
  }
}

const Place& EtaleAlg::place() const {
  if (f_.empty()) throw std::logic_error("empty etale algebra has no place");
  return f_[0].ksharp->place();
}

std::size_t EtaleAlg::dim_F() const {
  std::size_t n = 0;
  for (const auto& f : f_) n += 2 * f.ksharp->degree();
  return n;
}

std::vector<std::size_t> EtaleAlg::inert_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f_.size(); ++i)
    if (!f_[i].split) out.push_back(i);
  return out;
}

EtaleElem EtaleAlg::zero() const {
  EtaleElem z;
  for (const auto& f : f_) z.parts.emplace_back(f.ksharp->zero(), f.ksharp->zero());
  return z;
}

EtaleElem EtaleAlg::from_rat(const Rat& r) const {
  EtaleElem z;
  for (const auto& f : f_) {
    if (f.split)
      z.parts.emplace_back(f.ksharp->from_rat(r), f.ksharp->from_rat(r));
    else
      z.parts.emplace_back(f.ksharp->from_rat(r), f.ksharp->zero());
  }
  return z;
}

EtaleElem EtaleAlg::one() const { return from_rat(Rat(1)); }

EtaleElem EtaleAlg::from_sharp(const std::vector<Vec>& t) const {
  if (t.size() != f_.size()) throw std::invalid_argument("from_sharp: wrong number of components");
  EtaleElem z;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (f_[i].split)
      z.parts.emplace_back(t[i], t[i]);
    else
      z.parts.emplace_back(t[i], f_[i].ksharp->zero());
  }
  return z;
}

EtaleElem EtaleAlg::sqrt_d() const {
  EtaleElem z;
  for (const auto& f : f_) {
    if (f.split)
      z.parts.emplace_back(f.ksharp->one(), f.ksharp->neg(f.ksharp->one()));
    else
      z.parts.emplace_back(f.ksharp->zero(), f.ksharp->one());
  }
  return z;
}

EtaleElem EtaleAlg::add(const EtaleElem& a, const EtaleElem& b) const {
  EtaleElem z;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto& K = *f_[i].ksharp;
    z.parts.emplace_back(K.add(a.parts[i].first, b.parts[i].first), K.add(a.parts[i].second, b.parts[i].second));
  }
  return z;
}

EtaleElem EtaleAlg::neg(const EtaleElem& a) const { return scale(a, Rat(-1)); }

EtaleElem EtaleAlg::sub(const EtaleElem& a, const EtaleElem& b) const { return add(a, neg(b)); }

EtaleElem EtaleAlg::scale(const EtaleElem& a, const Rat& s) const {
  EtaleElem z = a;
  for (auto& [x, y] : z.parts) {
    for (auto& c : x) c *= s;
    for (auto& c : y) c *= s;
  }
  return z;
}

EtaleElem EtaleAlg::mul(const EtaleElem& a, const EtaleElem& b) const {
  EtaleElem z;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto& K = *f_[i].ksharp;
    const auto& [x1, y1] = a.parts[i];
    const auto& [x2, y2] = b.parts[i];
    if (f_[i].split) {
      z.parts.emplace_back(K.mul(x1, x2), K.mul(y1, y2));
    } else {
      Vec x = K.add(K.mul(x1, x2), K.mul(f_[i].d, K.mul(y1, y2)));
      Vec y = K.add(K.mul(x1, y2), K.mul(x2, y1));
      z.parts.emplace_back(std::move(x), std::move(y));
    }
  }
  return z;
}

EtaleElem EtaleAlg::tau(const EtaleElem& a) const {
  EtaleElem z;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto& [x, y] = a.parts[i];
    if (f_[i].split)
      z.parts.emplace_back(y, x);
    else
      z.parts.emplace_back(x, f_[i].ksharp->neg(y));
  }
  return z;
}

std::vector<Vec> EtaleAlg::norm_to_sharp(const EtaleElem& a) const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto& K = *f_[i].ksharp;
    const auto& [x, y] = a.parts[i];
    if (f_[i].split)
      out.push_back(K.mul(x, y));
    else
      out.push_back(K.sub(K.mul(x, x), K.mul(f_[i].d, K.mul(y, y))));
  }
  return out;
}

std::vector<Vec> EtaleAlg::trace_to_sharp(const EtaleElem& a) const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto& K = *f_[i].ksharp;
    const auto& [x, y] = a.parts[i];
    out.push_back(f_[i].split ? K.add(x, y) : K.add(x, x));
  }
  return out;
}

bool EtaleAlg::is_invertible(const EtaleElem& a) const {
  auto n = norm_to_sharp(a);
  for (const auto& v : n)
    if (mtf::is_zero(v)) return false;
  return true;
}

EtaleElem EtaleAlg::inv(const EtaleElem& a) const {
  EtaleElem z;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    const auto& K = *f_[i].ksharp;
    const auto& [x, y] = a.parts[i];
    if (f_[i].split) {
      z.parts.emplace_back(K.inv(x), K.inv(y));
    } else {
      Vec n = K.sub(K.mul(x, x), K.mul(f_[i].d, K.mul(y, y)));
      Vec ni = K.inv(n);
      z.parts.emplace_back(K.mul(x, ni), K.neg(K.mul(y, ni)));
    }
  }
  return z;
}

EtaleElem EtaleAlg::pow(const EtaleElem& a, long e) const {
  EtaleElem b = e < 0 ? inv(a) : a;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  EtaleElem r = one();
  while (k) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

std::vector<Vec> EtaleAlg::sharp_part(const EtaleElem& a) const {
  if (!is_tau_fixed(a)) throw std::invalid_argument("element is not fixed by the involution");
  std::vector<Vec> out;
  for (const auto& pr : a.parts) out.push_back(pr.first);
  return out;
}

Rat EtaleAlg::trace_to_F(const EtaleElem& a) const {
  auto t = trace_to_sharp(a);
  Rat s = 0;
  for (std::size_t i = 0; i < f_.size(); ++i) s += f_[i].ksharp->trace(t[i]);
  return s;
}

Rat EtaleAlg::norm_to_F(const EtaleElem& a) const {
  auto n = norm_to_sharp(a);
  Rat s = 1;
  for (std::size_t i = 0; i < f_.size(); ++i) s *= f_[i].ksharp->norm(n[i]);
  return s;
}

Vec EtaleAlg::coords(const EtaleElem& a) const {
  Vec v;
  for (const auto& [x, y] : a.parts) {
    v.insert(v.end(), x.begin(), x.end());
    v.insert(v.end(), y.begin(), y.end());
  }
  return v;
}

EtaleElem EtaleAlg::from_coords(const Vec& v) const {
  if (v.size() != dim_F()) throw std::invalid_argument("coordinate vector has the wrong size");
  EtaleElem z;
  std::size_t pos = 0;
  for (const auto& f : f_) {
    const long n = static_cast<long>(f.ksharp->degree());
    Vec x(v.begin() + static_cast<long>(pos), v.begin() + static_cast<long>(pos) + n);
    Vec y(v.begin() + static_cast<long>(pos) + n, v.begin() + static_cast<long>(pos) + 2 * n);
    z.parts.emplace_back(std::move(x), std::move(y));
    pos += static_cast<std::size_t>(2 * n);
  }
  return z;
}

EtaleElem EtaleAlg::basis(std::size_t k) const {
  Vec v = zero_vec(dim_F());
  v[k] = 1;
  return from_coords(v);
}

Mat EtaleAlg::mult_matrix(const EtaleElem& a) const {
  const std::size_t n = dim_F();
  Mat m(n, n);
  for (std::size_t l = 0; l < n; ++l) m.set_col(l, coords(mul(a, basis(l))));
  return m;
}

Poly EtaleAlg::char_poly(const EtaleElem& a) const { return charpoly(mult_matrix(a)); }

EtaleElem EtaleAlg::eval(const Poly& f, const EtaleElem& a) const {
  EtaleElem acc = zero();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = add(mul(acc, a), from_rat(f.coeffs()[i]));
  return acc;
}

EtaleElem EtaleAlg::deriv_eval(const EtaleElem& a) const { return eval(char_poly(a).derivative(), a); }

int EtaleAlg::sgn_char(const EtaleElem& t) const {
  auto s = sharp_part(t);
  int r = 1;
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (f_[i].split) continue;
    if (mtf::is_zero(s[i])) throw std::domain_error("sgn of a non-invertible element");
    r *= f_[i].ksharp->hilbert(s[i], f_[i].d);
  }
  return r;
}

Vec EtaleAlg::non_norm(std::size_t i) const {
  const auto& f = f_.at(i);
  if (f.split) throw std::invalid_argument("split factors have no non-norms");
  const auto& K = *f.ksharp;
  if (K.kind() == LocalField::Kind::Real) return K.from_rat(Rat(-1));
  if (K.kind() == LocalField::Kind::Complex) throw std::logic_error("C has no quadratic extension");
  std::vector<Vec> cands{K.uniformizer()};
  const long p = static_cast<long>(K.place().p().get_si());
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < (K.f() > 1 ? p : 1); ++b) {
      Vec t = K.from_rat(Rat(a));
      if (K.f() > 1) t[1] += b;
      if (!mtf::is_zero(t)) cands.push_back(t);
    }
  const std::size_t base = cands.size();
  for (std::size_t j = 1; j < base; ++j) cands.push_back(K.mul(K.uniformizer(), cands[j]));
  for (const auto& t : cands)
    if (K.hilbert(t, f.d) == -1) return t;
  throw std::logic_error("no non-norm found");
}

EtaleAlg EtaleAlg::sub_algebra(const std::vector<std::size_t>& idx) const {
  std::vector<EtaleFactor> fs;
  for (auto i : idx) fs.push_back(f_.at(i));
  return EtaleAlg(std::move(fs));
}

EtaleElem EtaleAlg::restrict(const EtaleElem& a, const std::vector<std::size_t>& idx) const {
  EtaleElem z;
  for (auto i : idx) z.parts.push_back(a.parts.at(i));
  return z;
}

EtaleAlg EtaleAlg::product(const EtaleAlg& a, const EtaleAlg& b) {
  std::vector<EtaleFactor> fs = a.f_;
  fs.insert(fs.end(), b.f_.begin(), b.f_.end());
  return EtaleAlg(std::move(fs));
}

EtaleElem EtaleAlg::concat(const EtaleElem& a, const EtaleElem& b) {
  EtaleElem z = a;
  z.parts.insert(z.parts.end(), b.parts.begin(), b.parts.end());
  return z;
}

// ---------------------------------------------------------------- parameters

bool ClassParam::is_regular() const {
  try {
    return alg.is_invertible(alg.deriv_eval(a));
  } catch (const std::exception&) {
    return false;
  }
}

void ClassParam::validate() const {
  if (epsilon != 1 && epsilon != -1) throw std::invalid_argument("epsilon: must be +1 or -1");
  if (alg.size() == 0) throw std::invalid_argument("factors: empty algebra");
  if (a.parts.size() != alg.size()) throw std::invalid_argument("a: wrong number of factors");
  if (c.parts.size() != alg.size()) throw std::invalid_argument("c: wrong number of factors");
  for (std::size_t i = 0; i < alg.size(); ++i) {
    std::size_t n = alg.factors()[i].ksharp->degree();
    if (a.parts[i].first.size() != n || a.parts[i].second.size() != n) throw std::invalid_argument("a: wrong component size");
    if (c.parts[i].first.size() != n || c.parts[i].second.size() != n) throw std::invalid_argument("c: wrong component size");
  }
  if (!alg.is_invertible(a)) throw std::invalid_argument("a: not invertible");
  if (mode == ParamMode::Group) {
    if (!(alg.mul(alg.tau(a), a) == alg.one())) throw std::invalid_argument("a: tau(a) a != 1");
    for (std::size_t i = 0; i < alg.size(); ++i) {
      std::vector<std::size_t> idx{i};
      EtaleAlg ai = alg.sub_algebra(idx);
      EtaleElem x = alg.restrict(a, idx);
      if (x == ai.one() || x == ai.neg(ai.one())) throw std::invalid_argument("a: equals +1 or -1 in factor " + std::to_string(i));
    }
  } else {
    if (!(alg.tau(a) == alg.neg(a))) throw std::invalid_argument("a: tau(a) != -a");
  }
  if (!alg.is_invertible(c)) throw std::invalid_argument("c: not invertible");
  if (!(alg.tau(c) == alg.scale(c, Rat(epsilon)))) throw std::invalid_argument("c: tau(c) != epsilon c");
  if (!is_regular()) throw std::invalid_argument("a: not regular (P_a'(a) not invertible)");
}

Realization matrix_realization(const ClassParam& param) {
  param.validate();
  const EtaleAlg& A = param.alg;
  const std::size_t n = A.dim_F();
  std::vector<EtaleElem> b;
  for (std::size_t k = 0; k < n; ++k) b.push_back(A.basis(k));
  Mat G(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    EtaleElem ctk = A.mul(param.c, A.tau(b[k]));
    for (std::size_t l = 0; l < n; ++l) G(k, l) = A.trace_to_F(A.mul(ctk, b[l]));
  }
  return Realization{G, A.mult_matrix(param.a)};
}

QForm trace_form(const EtaleAlg& A, const EtaleElem& r) {
  if (!A.is_tau_fixed(r)) throw std::invalid_argument("trace_form: r is not in K#");
  if (!A.is_invertible(r)) throw std::invalid_argument("trace_form: r is not invertible");
  const std::size_t n = A.dim_F();
  Mat G(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    EtaleElem rk = A.mul(r, A.basis(k));
    for (std::size_t l = k; l < n; ++l) {
      G(k, l) = A.trace_to_F(A.mul(rk, A.tau(A.basis(l)))) / 2;
      G(l, k) = G(k, l);
    }
  }
  return QForm(A.place(), G);
}

bool class_exists(GroupKind kind, const ClassParam& param, const EtaleElem& c0) {
  if (c0.parts.size() != param.alg.size()) throw std::invalid_argument("class_exists: mismatched algebras");
  if (kind == GroupKind::Sp) return true;
  const EtaleAlg& A = param.alg;
  return A.sgn_char(A.mul(A.inv(c0), param.c)) == 1;
}

std::vector<ClassParam> stable_orbit(GroupKind kind, const ClassParam& param) {
  const EtaleAlg& A = param.alg;
  auto I = A.inert_indices();
  std::vector<Vec> nn;
  for (auto i : I) nn.push_back(A.non_norm(i));
  std::vector<ClassParam> out;
  const std::size_t count = std::size_t(1) << I.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    if (kind != GroupKind::Sp && __builtin_popcountll(mask) % 2) continue;
    std::vector<Vec> t;
    for (std::size_t i = 0; i < A.size(); ++i) t.push_back(A.factors()[i].ksharp->one());
    for (std::size_t j = 0; j < I.size(); ++j)
      if (mask >> j & 1) t[I[j]] = nn[j];
    ClassParam q = param;
    q.c = A.mul(param.c, A.from_sharp(t));
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<int> invariant_vector(const ClassParam& base, const ClassParam& other) {
  const EtaleAlg& A = base.alg;
  auto ratio = A.sharp_part(A.mul(A.inv(base.c), other.c));
  std::vector<int> v;
  for (auto i : A.inert_indices()) v.push_back(A.factors()[i].ksharp->hilbert(ratio[i], A.factors()[i].d));
  return v;
}

int kappa_pair(const std::vector<int>& /*inv_prime*/, const std::vector<int>& inv_second) {
  int s = 1;
  for (int t : inv_second) s *= t;
  return s;
}

EtaleElem c_to_waldspurger(const EtaleAlg& alg, const EtaleElem& c) {
  EtaleElem z = c;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    Rat k(static_cast<long>(2 * alg.factors()[i].ksharp->degree()));
    for (auto& x : z.parts[i].first) x /= k;
    for (auto& x : z.parts[i].second) x /= k;
  }
  return z;
}

EtaleElem c_from_waldspurger(const EtaleAlg& alg, const EtaleElem& c) {
  EtaleElem z = c;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    Rat k(static_cast<long>(2 * alg.factors()[i].ksharp->degree()));
    for (auto& x : z.parts[i].first) x *= k;
    for (auto& x : z.parts[i].second) x *= k;
  }
  return z;
}

}  // namespace mtf
