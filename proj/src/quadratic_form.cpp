// SPDX-License-Identifier: Apache-2.0
#include "mtf/quadratic_form.hpp"

#include <functional>
#include <stdexcept>

namespace mtf {

QForm::QForm(Place place, Mat gram) : place_(std::move(place)), gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix is not symmetric");
  if (gram_.rows() > 0 && det(gram_) == 0) throw std::invalid_argument("degenerate quadratic form");
}

QForm QForm::diagonal(Place place, const Vec& d) { return QForm(std::move(place), Mat::diag(d)); }

QForm QForm::hyperbolic(Place place, std::size_t copies) {
  Vec d;
  for (std::size_t i = 0; i < copies; ++i) {
    d.push_back(1);
    d.push_back(-1);
  }
  return diagonal(std::move(place), d);
}

QForm QForm::zero(Place place) { return QForm(std::move(place), Mat(0, 0)); }

QForm QForm::scaled(const Rat& t) const {
  if (t == 0) throw std::invalid_argument("scaling a form by zero");
  return QForm(place_, gram_ * t);
}

QForm QForm::operator+(const QForm& o) const {
  if (!(place_ == o.place_)) throw std::invalid_argument("forms live at different places");
  return QForm(place_, block_diag({gram_, o.gram_}));
}

std::string WittClass::str() const {
  std::string s = "{rank=" + std::to_string(rank) + ",det=" + to_string(det) + ",hasse=" + std::to_string(hasse);
  if (place.is_real()) s += ",signature=" + std::to_string(signature);
  return s + "}";
}

Vec diagonalize(const QForm& q) {
  Mat g = q.gram();
  const std::size_t n = g.rows();
  auto swap_idx = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < n; ++k) std::swap(g(i, k), g(j, k));
    for (std::size_t k = 0; k < n; ++k) std::swap(g(k, i), g(k, j));
  };
  Vec d;
  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && g(j, j) == 0) ++j;
      if (j < n) {
        swap_idx(i, j);
      } else {
        j = i + 1;
        while (j < n && g(i, j) == 0) ++j;
        if (j == n) throw std::invalid_argument("degenerate quadratic form");
        // e_i <- e_i + e_j
        for (std::size_t k = 0; k < n; ++k) g(i, k) += g(j, k);
        for (std::size_t k = 0; k < n; ++k) g(k, i) += g(k, j);
      }
    }
    const Rat piv = g(i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (g(j, i) == 0) continue;
      Rat f = g(j, i) / piv;
      for (std::size_t k = i; k < n; ++k) g(j, k) -= f * g(i, k);
      for (std::size_t k = i; k < n; ++k) g(k, j) -= f * g(k, i);
    }
    d.push_back(piv);
  }
  return d;
}

Rat square_class(const Rat& x, const Place& pl) {
  if (x == 0) throw std::domain_error("square class of zero");
  if (pl.is_real()) return x > 0 ? Rat(1) : Rat(-1);
  long v = valuation(x, pl);
  Rat rep = (v % 2 != 0) ? Rat(pl.p()) : Rat(1);
  if (legendre(residue_unit(x, pl), pl.p()) == -1) rep *= Rat(least_nonresidue(pl.p()));
  return rep;
}

std::vector<Rat> square_class_reps(const Place& pl) {
  if (pl.is_real()) return {Rat(1), Rat(-1)};
  Rat u(least_nonresidue(pl.p()));
  Rat p(pl.p());
  return {Rat(1), u, p, p * u};
}

Rat det_class(const QForm& q) { return square_class(det(q.gram()), q.place()); }

int hasse_of_diag(const Vec& d, const Place& pl) {
  int s = 1;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) s *= hilbert(d[i], d[j], pl);
  return s;
}

int hasse(const QForm& q) { return hasse_of_diag(diagonalize(q), q.place()); }

int signature(const QForm& q) {
  if (!q.place().is_real()) throw std::logic_error("signature is defined at the real place");
  int s = 0;
  for (const auto& a : diagonalize(q)) s += a > 0 ? 1 : -1;
  return s;
}

Mu8 weil_index_diag(const Vec& d, const PsiSpec& psi) {
  if (d.empty()) return Mu8::one();
  Rat prod = 1;
  for (const auto& a : d) prod *= a;
  Mu8 g1 = weil_index_rank1(Rat(1), psi);
  return g1.pow(static_cast<long>(d.size()) - 1) * weil_index_rank1(prod, psi) *
         Mu8::from_sign(hasse_of_diag(d, psi.place));
}

Mu8 weil_index(const QForm& q, const PsiSpec& psi) {
  if (!(q.place() == psi.place)) throw std::invalid_argument("form and character live at different places");
  return weil_index_diag(diagonalize(q), psi);
}

bool is_hyperbolic(const QForm& q) {
  const Place& pl = q.place();
  if (q.rank() % 2 != 0) return false;
  if (q.rank() == 0) return true;
  if (pl.is_real()) return signature(q) == 0;
  const std::size_t m = q.rank() / 2;
  Vec d = diagonalize(q);
  Rat prod = 1;
  for (const auto& a : d) prod *= a;
  if (square_class(prod, pl) != square_class(Rat(m % 2 ? -1 : 1), pl)) return false;
  Vec h;
  for (std::size_t i = 0; i < m; ++i) {
    h.push_back(1);
    h.push_back(-1);
  }
  return hasse_of_diag(d, pl) == hasse_of_diag(h, pl);
}

bool witt_equal(const QForm& a, const QForm& b) {
  if (!(a.place() == b.place())) throw std::invalid_argument("forms live at different places");
  return is_hyperbolic(a + b.negated());
}

bool isometric(const QForm& a, const QForm& b) { return a.rank() == b.rank() && witt_equal(a, b); }

WittClass witt_class(const QForm& q) {
  const Place& pl = q.place();
  WittClass w{pl};
  if (pl.is_real()) {
    int s = signature(q);
    int r = s < 0 ? -s : s;
    w.signature = s;
    w.rank = r;
    w.det = (s < 0 && r % 2) ? Rat(-1) : Rat(1);
    w.hasse = (s < 0 && (r * (r - 1) / 2) % 2) ? -1 : 1;
    return w;
  }
  const auto reps = square_class_reps(pl);
  for (std::size_t r = q.rank() % 2; r <= 4; r += 2) {
    Vec cand(r);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) -> bool {
      if (pos == r) {
        QForm c = QForm::diagonal(pl, cand);
        if (!witt_equal(q, c)) return false;
        w.rank = static_cast<int>(r);
        w.det = r ? det_class(c) : Rat(1);
        w.hasse = hasse_of_diag(cand, pl);
        return true;
      }
      for (std::size_t i = start; i < reps.size(); ++i) {
        cand[pos] = reps[i];
        if (rec(pos + 1, i)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return w;
  }
  throw std::logic_error("no anisotropic kernel of rank <= 4 found");
}

Mat trace_gram(const QAlgebra& A, const Vec& r) {
  const std::size_t n = A.dim();
  Mat g(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec rk = A.mul(r, A.basis(k));
    for (std::size_t l = k; l < n; ++l) {
      g(k, l) = A.trace(A.mul(rk, A.basis(l)));
      g(l, k) = g(k, l);
    }
  }
  return g;
}

std::vector<Vec> dual_basis_traces(const QAlgebra& A, const Vec& b, const Poly& Pb) {
  const long n = Pb.degree();
  if (n < 1 || static_cast<std::size_t>(n) != A.dim()) throw std::invalid_argument("b does not generate the algebra");
  if (gcd(Pb, Pb.derivative()).degree() != 0) throw std::invalid_argument("characteristic polynomial of b is not separable");
  std::vector<Vec> g;
  for (long k = 0; k < n; ++k) {
    Vec acc = zero_vec(A.dim());
    Vec bp = A.one();
    for (long j = k + 1; j <= n; ++j) {
      acc = A.add(acc, A.scale(bp, Pb.coeff(static_cast<std::size_t>(j))));
      bp = A.mul(bp, b);
    }
    g.push_back(acc);
  }
  return g;
}

std::pair<QForm, QForm> q1_q2_classes(const Place& pl, const QAlgebra& A, const Vec& b) {
  Poly Pb = A.charpoly(b);
  if (gcd(Pb, Pb.derivative()).degree() != 0) throw std::invalid_argument("b does not generate a separable algebra");
  Vec dP = A.eval(Pb.derivative(), b);
  Vec r1 = A.inv(dP);
  Vec r2 = A.mul(r1, A.inv(b));
  return {QForm(pl, trace_gram(A, r1)), QForm(pl, trace_gram(A, r2))};
}

}  // namespace mtf
