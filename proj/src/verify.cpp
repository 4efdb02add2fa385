// SPDX-License-Identifier: Apache-2.0
#include "mtf/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "mtf/generators.hpp"
#include "mtf/oracles.hpp"

namespace mtf::verify {
using mtf::to_json;
namespace {

struct Miss {
  std::string message;
  Json witness;
};
using Verdict = std::optional<Miss>;
using Body = std::function<Verdict(Rng&, std::size_t)>;

Verdict fail(std::string msg, Json witness = Json::object()) { return Miss{std::move(msg), std::move(witness)}; }

std::uint64_t name_id(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
  return h;
}

struct Ctx {
  std::string suite, name, anchor;
  const RunConfig* cfg;
};

CheckResult run_trials(const Ctx& ctx, std::size_t n, const Body& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Verdict> out(n);
  std::atomic<std::size_t> next{0};
  const std::uint64_t id = name_id(ctx.suite + "/" + ctx.name);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      Rng rng = Rng::trial(ctx.cfg->seed, id, i);
      try {
        out[i] = body(rng, i);
      } catch (const std::exception& e) {
        out[i] = fail(std::string("exception: ") + e.what());
      }
    }
  };
  unsigned th = ctx.cfg->threads ? ctx.cfg->threads : std::max(1u, std::thread::hardware_concurrency());
  th = static_cast<unsigned>(std::min<std::size_t>(th, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < th; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  CheckResult r;
  r.suite = ctx.suite;
  r.name = ctx.name;
  r.anchor = ctx.anchor;
  r.trials = n;
  for (std::size_t i = 0; i < n; ++i)
    if (out[i]) r.failures.push_back({i, out[i]->message, out[i]->witness});
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Retries a draw whose random data may violate a precondition.
template <class F>
auto draw(F&& f) -> decltype(f()) {
  for (int k = 0; k < 500; ++k) {
    try {
      return f();
    } catch (const std::invalid_argument&) {
    } catch (const std::domain_error&) {
    }
  }
  throw std::logic_error("no admissible sample in 500 draws");
}

Place padic(long p) { return Place::padic(Int(p)); }

const std::vector<Place>& all_places() {
  static const std::vector<Place> v{padic(3), padic(5), padic(7), padic(11), Place::real()};
  return v;
}

Json place_json(const Place& pl) { return pl.is_real() ? Json("real") : Json(pl.p().get_si()); }

const std::vector<long> kPrimes{3, 5, 7, 11};

Rat local_rat(Rng& rng, const Place& pl) {
  Rat r = rng.rat(50, 20);
  if (!pl.is_real() && rng.coin()) r *= rpow(Rat(pl.p()), rng.uniform(-2, 3));
  return r;
}

QForm random_form(Rng& rng, const Place& pl, std::size_t max_rank, long bound) {
  const std::size_t r = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(max_rank)));
  if (rng.coin()) {
    Vec d;
    for (std::size_t i = 0; i < r; ++i) d.push_back(rng.rat(bound, bound));
    return QForm::diagonal(pl, d);
  }
  while (true) {
    Mat g(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) g(i, j) = g(j, i) = rng.rat(bound, 3, false);
    if (det(g) != 0) return QForm(pl, g);
  }
}

Mat random_unimodular_ish(Rng& rng, std::size_t r) {
  while (true) {
    Mat P(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) P(i, j) = Rat(rng.uniform(-3, 3));
    if (det(P) != 0) return P;
  }
}

QForm hyp(const Place& pl, std::size_t k) { return k ? QForm::hyperbolic(pl, k) : QForm::zero(pl); }

Json form_json(const QForm& q) {
  Json j = to_json(q);
  j["place"] = place_json(q.place());
  return j;
}

std::vector<Int> odd_support(const std::vector<Rat>& xs) {
  std::set<Int> ps;
  for (const Rat& q : xs)
    for (const Int& z : {Int(q.get_num()), Int(q.get_den())})
      for (const Int& p : prime_factors(z))
        if (p != 2) ps.insert(p);
  return {ps.begin(), ps.end()};
}

std::vector<long> off_support(const std::vector<Int>& supp, std::size_t count) {
  std::vector<long> out;
  for (long q = 3; out.size() < count; q += 2)
    if (is_prime(Int(q)) && std::find(supp.begin(), supp.end(), Int(q)) == supp.end()) out.push_back(q);
  return out;
}

// Monic separable polynomial of the given degree with small integer coefficients.
Poly random_separable(Rng& rng, long degree) {
  while (true) {
    Vec c;
    for (long i = 0; i < degree; ++i) c.push_back(Rat(rng.uniform(-5, 5)));
    c.push_back(Rat(1));
    Poly P(c);
    QAlgebra A = QAlgebra::monogenic(P);
    Vec b = A.basis(std::min<std::size_t>(1, A.dim() - 1));
    if (degree == 1) return P;
    if (A.norm(A.eval(P.derivative(), b)) != 0) return P;
  }
}

int pow_sign(long e) { return e % 2 ? -1 : 1; }

// ---------------------------------------------------------------- hilbert

CheckResult hilbert_conic(const Ctx& c) {
  const std::size_t T = c.cfg->trials, block = 16 + T;
  return run_trials(c, kPrimes.size() * block, [&](Rng& rng, std::size_t i) -> Verdict {
    const long p = kPrimes[i / block];
    const std::size_t j = i % block;
    const Place pl = padic(p);
    Rat a, b;
    if (j < 16) {
      const Rat n0(least_nonresidue(Int(p)));
      const Rat reps[4] = {Rat(1), n0, Rat(p), Rat(p) * n0};
      a = reps[j / 4];
      b = reps[j % 4];
    } else {
      a = local_rat(rng, pl);
      b = local_rat(rng, pl);
    }
    const int got = hilbert(a, b, pl), want = oracle::hilbert_conic(a, b, p);
    if (got != want)
      return fail("hilbert disagrees with conic solvability mod p^3",
                  {{"p", p}, {"a", to_json(a)}, {"b", to_json(b)}, {"hilbert", got}, {"conic", want}});
    return std::nullopt;
  });
}

// Random K# at the place (Q_p, or a tower of degree <= 3 half the time).
LocalFieldPtr field_at(Rng& rng, const Place& pl) {
  if (!pl.is_real() && rng.coin()) return random_ksharp(rng, pl, 3);
  return LocalField::rationals(pl);
}

CheckResult hilbert_bimultiplicative(const Ctx& c) {
  const std::size_t T = c.cfg->trials;
  return run_trials(c, all_places().size() * T, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i / T];
    auto k = field_at(rng, pl);
    auto a = random_element(rng, *k), b = random_element(rng, *k), d = random_element(rng, *k);
    const bool ok = k->hilbert(k->mul(a, b), d) == k->hilbert(a, d) * k->hilbert(b, d) &&
                    k->hilbert(a, b) == k->hilbert(b, a);
    if (!ok) return fail("(ab,c) != (a,c)(b,c) or (a,b) != (b,a)", {{"field", to_json(*k)}, {"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(d)}});
    return std::nullopt;
  });
}

CheckResult hilbert_norm_residue(const Ctx& c) {
  const std::size_t T = c.cfg->trials;
  return run_trials(c, all_places().size() * T, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i / T];
    auto k = field_at(rng, pl);
    auto a = random_element(rng, *k);
    bool ok = k->hilbert(a, k->neg(a)) == 1;
    auto one_minus = k->sub(k->one(), a);
    if (!is_zero(one_minus)) ok = ok && k->hilbert(a, one_minus) == 1;
    if (!ok) return fail("(a,-a) or (a,1-a) is not +1", {{"field", to_json(*k)}, {"a", to_json(a)}});
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- weil

CheckResult weil_gauss(const Ctx& c) {
  const std::size_t T = c.cfg->trials, block = 4 + T;
  return run_trials(c, kPrimes.size() * block, [&](Rng& rng, std::size_t i) -> Verdict {
    const long p = kPrimes[i / block];
    const std::size_t j = i % block;
    const Place pl = padic(p);
    Rat a;
    if (j < 4) {
      const Rat n0(least_nonresidue(Int(p)));
      const Rat reps[4] = {Rat(1), n0, Rat(p), Rat(p) * n0};
      a = reps[j];
    } else {
      a = local_rat(rng, pl);
    }
    const Mu8 got = weil_index_rank1(a, PsiSpec(pl)), want = oracle::weil_index_gauss(a, p);
    if (!(got == want))
      return fail("rank-one Weil index differs from the normalized Gauss sum",
                  {{"p", p}, {"a", to_json(a)}, {"closed_form", to_json(got)}, {"gauss_sum", to_json(want)}});
    return std::nullopt;
  });
}

CheckResult weil_witt_invariance(const Ctx& c) {
  const std::size_t T = c.cfg->trials;
  return run_trials(c, all_places().size() * T, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i / T];
    const PsiSpec psi(pl);
    QForm q = random_form(rng, pl, 4, 12);
    Mat P = random_unimodular_ish(rng, q.rank());
    const Rat t = rng.rat(12, 12);
    QForm q2 = QForm(pl, P.transpose() * q.gram() * P) + QForm::diagonal(pl, {t, -t});
    if (!witt_equal(q, q2)) return fail("q and P^T q P + <t,-t> are not Witt equivalent", {{"q", form_json(q)}, {"q2", form_json(q2)}});
    if (!(weil_index(q, psi) == weil_index(q2, psi)))
      return fail("Weil index differs on Witt-equivalent forms", {{"q", form_json(q)}, {"q2", form_json(q2)}});
    return std::nullopt;
  });
}

CheckResult weil_additivity(const Ctx& c) {
  const std::size_t T = c.cfg->trials;
  return run_trials(c, all_places().size() * T, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i / T];
    const PsiSpec psi(pl);
    QForm q1 = random_form(rng, pl, 3, 20), q2 = random_form(rng, pl, 3, 20);
    if (!(weil_index(q1 + q2, psi) == weil_index(q1, psi) * weil_index(q2, psi)))
      return fail("gamma(q1 + q2) != gamma(q1) gamma(q2)", {{"q1", form_json(q1)}, {"q2", form_json(q2)}});
    return std::nullopt;
  });
}

CheckResult weil_hyperbolic(const Ctx& c) {
  const std::size_t T = c.cfg->trials;
  return run_trials(c, all_places().size() * T, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i / T];
    const PsiSpec psi(pl);
    const Rat a = local_rat(rng, pl);
    QForm q = random_form(rng, pl, 3, 20);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
    const bool ok = weil_index(QForm::hyperbolic(pl, k), psi) == Mu8::one() &&
                    weil_index(QForm::diagonal(pl, {a, -a}), psi) == Mu8::one() &&
                    weil_index(q + q.negated(), psi) == Mu8::one();
    if (!ok) return fail("a hyperbolic form has Weil index != 1", {{"a", to_json(a)}, {"q", form_json(q)}, {"copies", k}});
    return std::nullopt;
  });
}

CheckResult weil_product_rule(const Ctx& c) {
  const std::size_t T = c.cfg->trials;
  return run_trials(c, all_places().size() * T, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i / T];
    const PsiSpec psi(pl);
    const Rat a = local_rat(rng, pl), b = local_rat(rng, pl), u = rng.rat(30, 30);
    const Mu8 lhs = weil_index_rank1(a * b, psi) * weil_index_rank1(Rat(1), psi);
    const Mu8 rhs = weil_index_rank1(a, psi) * weil_index_rank1(b, psi) * Mu8::from_sign(hilbert(a, b, pl));
    if (!(lhs == rhs))
      return fail("gamma(ab) gamma(1) != gamma(a) gamma(b) (a,b)", {{"place", place_json(pl)}, {"a", to_json(a)}, {"b", to_json(b)}});
    if (!(weil_index_rank1(a * u * u, psi) == weil_index_rank1(a, psi)))
      return fail("gamma(a u^2) != gamma(a)", {{"place", place_json(pl)}, {"a", to_json(a)}, {"u", to_json(u)}});
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- global

CheckResult global_hilbert(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    const Rat a = rng.rat(30, 30), b = rng.rat(30, 30);
    auto complement = [](const Rat& x, const Rat& y) {
      int s = hilbert(x, y, Place::real());
      for (const Int& p : odd_support({x, y})) s *= hilbert(x, y, Place::padic(p));
      return s;
    };
    const int comp = complement(a, b);
    const int two = oracle::hilbert2(a, b);
    Json w{{"a", to_json(a)}, {"b", to_json(b)}, {"complement_2", comp}, {"hilbert_2", two}};
    if (comp != two) return fail("product over odd places and infinity differs from the 2-adic symbol", w);
    for (long q : {3L, 5L, 7L})
      if (complement(a * q * q, b) != comp) return fail("complement changed under rescaling by an odd square", w);
    for (long q : off_support(odd_support({a, b}), 5))
      if (hilbert(a, b, padic(q)) != 1) return fail("nontrivial symbol off the support", w);
    return std::nullopt;
  });
}

CheckResult global_weil(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    QForm q = random_form(rng, Place::real(), 6, 30);
    Vec d = diagonalize(q);
    auto complement = [](const Vec& diag) {
      Mu8 g = weil_index_diag(diag, PsiSpec(Place::real()));
      for (const Int& p : odd_support(diag)) g *= weil_index_diag(diag, PsiSpec(Place::padic(p)));
      return g;
    };
    const Mu8 comp = complement(d);
    const Mu8 two = oracle::weil_index2(q);
    Json w{{"q", form_json(q)}, {"complement", to_json(comp)}, {"gamma_2", to_json(two)}};
    if (!(comp * two == Mu8::one())) return fail("product of local Weil indices is not 1", w);
    for (long s : {3L, 5L, 7L}) {
      Vec d2 = d;
      d2[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(d2.size()) - 1))] *= s * s;
      if (!(complement(d2) == comp)) return fail("complement changed under rescaling by an odd square", w);
    }
    for (long p : off_support(odd_support(d), 5))
      if (!(weil_index_diag(d, PsiSpec(padic(p))) == Mu8::one())) return fail("nontrivial Weil index off the support", w);
    return std::nullopt;
  });
}

RationalFactor random_rational_factor(Rng& rng, bool allow_split) {
  RationalFactor f;
  if (allow_split && rng.uniform(0, 3) == 0) {
    const Rat u = rng.rat(9, 5);
    f.d = 1;
    f.x = (u + 1 / u) / 2;
    f.y = (u - 1 / u) / 2;
    return f;
  }
  Rat d;
  do {
    d = Rat(rng.uniform(-30, 30));
  } while (d == 0 || (d > 0 && is_square(d, Place::real()) && [&] {
             Int r = sqrt(d.get_num());
             return r * r == d.get_num();
           }()));
  const Rat s = rng.rat(9, 5, false);
  f.d = d;
  const Rat den = s * s - d;
  f.x = (s * s + d) / den;
  f.y = 2 * s / den;
  return f;
}

CheckResult delta0_product(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    auto [f1, f2, pf] = draw([&] {
      std::vector<RationalFactor> a, b;
      const long n1 = rng.uniform(0, 2), n2 = rng.uniform(1, 2);
      for (long k = 0; k < n1; ++k) a.push_back(random_rational_factor(rng, true));
      for (long k = 0; k < n2; ++k) b.push_back(random_rational_factor(rng, true));
      return std::make_tuple(a, b, product_formula_delta0(a, b));
    });
    int two = 1;
    for (std::size_t k = 0; k < f2.size(); ++k) two *= oracle::hilbert2(pf.alpha[k], f2[k].d);
    auto fj = [](const std::vector<RationalFactor>& fs) {
      Json a = Json::array();
      for (const auto& f : fs) a.push_back({{"d", to_json(f.d)}, {"x", to_json(f.x)}, {"y", to_json(f.y)}});
      return a;
    };
    Json w{{"prime", fj(f1)}, {"second", fj(f2)}, {"complement_2", pf.complement_2}, {"sgn_2", two}};
    if (pf.complement_2 != two) return fail("product of local Delta_0 signs is not +1", w);
    if (!pf.stable) return fail("complement unstable or nontrivial off the support", w);
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- maslov

struct Tuple {
  Place pl;
  std::size_t n;
  std::vector<Lagrangian> ls;
};

Tuple random_tuple(Rng& rng, long m_lo, long m_hi) {
  static const std::vector<Place> places{padic(3), padic(5), Place::real()};
  Tuple t{rng.pick(places), static_cast<std::size_t>(rng.uniform(1, 2)), {}};
  t.ls = random_lagrangians(rng, t.n, static_cast<std::size_t>(rng.uniform(m_lo, m_hi)));
  return t;
}

Json tuple_json(const Tuple& t) {
  Json a = Json::array();
  for (const auto& l : t.ls) a.push_back(to_json(l));
  return {{"place", place_json(t.pl)}, {"n", t.n}, {"lagrangians", a}};
}

CheckResult maslov_dimension(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    Tuple t = random_tuple(rng, 3, 5);
    const Mat om = std_J(t.n);
    const long closed = maslov_dim(t.ls, om);
    const QForm tau = maslov_form(t.ls, om, t.pl);
    Json w = tuple_json(t);
    w["formula"] = closed;
    w["rank"] = tau.rank();
    if (closed != static_cast<long>(tau.rank())) return fail("dimension formula differs from the rank of tau", w);
    if (t.ls.size() == 3 && !witt_equal(kashiwara_form(t.ls[0], t.ls[1], t.ls[2], om, t.pl), tau))
      return fail("tau(l_1,l_2,l_3) not Witt equivalent to the Kashiwara form", w);
    return std::nullopt;
  });
}

CheckResult maslov_dihedral(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    Tuple t = random_tuple(rng, 3, 5);
    const Mat om = std_J(t.n);
    std::vector<Lagrangian> rot(t.ls.begin() + 1, t.ls.end());
    rot.push_back(t.ls.front());
    std::vector<Lagrangian> rev(t.ls.rbegin(), t.ls.rend());
    const QForm base = maslov_form(t.ls, om, t.pl);
    if (!isometric(maslov_form(rot, om, t.pl), base)) return fail("tau not isometric under rotation", tuple_json(t));
    if (!witt_equal(maslov_form(rev, om, t.pl), base.negated())) return fail("reversal does not negate [tau]", tuple_json(t));
    if (!(maslov_witt(rot, om, t.pl) == maslov_witt(t.ls, om, t.pl)) ||
        !(maslov_witt(rev, om, t.pl) == witt_class(base.negated())))
      return fail("Kashiwara-chain class not dihedral", tuple_json(t));
    return std::nullopt;
  });
}

CheckResult maslov_chain(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    Tuple t = random_tuple(rng, 3, 5);
    const Mat om = std_J(t.n);
    const QForm whole = maslov_form(t.ls, om, t.pl);
    if (!(maslov_witt(t.ls, om, t.pl) == witt_class(whole)))
      return fail("Kashiwara-chain Witt class differs from [tau]", tuple_json(t));
    for (std::size_t k = 3; k < t.ls.size(); ++k) {
      std::vector<Lagrangian> head(t.ls.begin(), t.ls.begin() + static_cast<long>(k));
      std::vector<Lagrangian> tail{t.ls.front()};
      tail.insert(tail.end(), t.ls.begin() + static_cast<long>(k) - 1, t.ls.end());
      if (!witt_equal(maslov_form(head, om, t.pl) + maslov_form(tail, om, t.pl), whole)) {
        Json w = tuple_json(t);
        w["k"] = k;
        return fail("chain condition fails for tau", w);
      }
    }
    return std::nullopt;
  });
}

Mat random_sp_rational(Rng& rng, std::size_t n) {
  Mat g = random_sp_integral(rng, n, 3);
  Mat d = Mat::identity(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rat t = rng.rat(4, 4);
    d(i, i) = t;
    d(n + i, n + i) = 1 / t;
  }
  return g * d;
}

CheckResult maslov_cocycle(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    const std::size_t n = 2;
    const PsiSpec psi(padic(3));
    Mat g1 = random_sp_rational(rng, n), g2 = random_sp_rational(rng, n), g3 = random_sp_rational(rng, n);
    Lagrangian l = random_lagrangians(rng, n, 1)[0];
    const Mu8 lhs = cocycle_value(g1, g2, l, psi) * cocycle_value(g1 * g2, g3, l, psi);
    const Mu8 rhs = cocycle_value(g1, g2 * g3, l, psi) * cocycle_value(g2, g3, l, psi);
    if (!(lhs == rhs))
      return fail("c(g,g')c(gg',g'') != c(g,g'g'')c(g',g'')",
                  {{"g", to_json(g1)}, {"g1", to_json(g2)}, {"g2", to_json(g3)}, {"l", to_json(l)}});
    return std::nullopt;
  });
}

CheckResult maslov_invariance(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    Tuple t = random_tuple(rng, 3, 3);
    const Mat om = std_J(t.n);
    Mat g = random_sp_rational(rng, t.n);
    QForm q = kashiwara_form(t.ls[0], t.ls[1], t.ls[2], om, t.pl);
    QForm qg = kashiwara_form(apply(g, t.ls[0]), apply(g, t.ls[1]), apply(g, t.ls[2]), om, t.pl);
    if (!isometric(q, qg)) return fail("triple form not invariant under Sp", tuple_json(t));
    Tuple s = random_tuple(rng, 3, 3);
    s.pl = t.pl;
    std::vector<Lagrangian> sum;
    for (std::size_t k = 0; k < 3; ++k) sum.push_back(direct_sum(t.ls[k], s.ls[k]));
    const Mat om2 = block_diag({om, std_J(s.n)});
    QForm qs = kashiwara_form(s.ls[0], s.ls[1], s.ls[2], std_J(s.n), t.pl);
    if (!isometric(kashiwara_form(sum[0], sum[1], sum[2], om2, t.pl), q + qs))
      return fail("triple form not additive on direct sums", {{"first", tuple_json(t)}, {"second", tuple_json(s)}});
    return std::nullopt;
  });
}

CheckResult cayley_exp(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const long p = i % 2 ? 5 : 3;
    const std::size_t n = 1 + (i / 2) % 2;
    const Place pl = padic(p);
    Mat X = draw([&] {
      Mat Y = random_sp_lie_integral(rng, n, 2);
      if (det(Y) == 0 || vp(det(Y), Int(p)) > 2) throw std::domain_error("resample");
      return Y * Rat(p);
    });
    Mat x = exp_truncated(X, 24);
    Mat C = cayley(x);
    Mat S = C.transpose() * std_J(n);
    S = (S + S.transpose()) * Rat(1, 2);
    if (!isometric(QForm(pl, S), q_of_X(X, pl))) return fail("q[C_exp(X)] not isometric to q[X]", {{"p", p}, {"X", to_json(X)}});
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- theta

struct ThetaCase {
  long p;
  std::size_t n;
};

ThetaCase theta_case(std::size_t i, const std::vector<long>& primes) {
  return {primes[i % primes.size()], 1 + (i / primes.size()) % 2};
}

Json theta_json(const ThetaCase& tc, const Mat& x) { return {{"p", tc.p}, {"n", tc.n}, {"x", to_json(x)}}; }

bool is_one(const CycNum& z) { return z == CycNum(Rat(1)); }

// x in K with det(x-1) != 0 and bounded valuations of det(x-1), det(x+1).
Mat random_k_element(Rng& rng, const ThetaCase& tc, long vmax) {
  const Int P(tc.p);
  return draw([&] {
    Mat x = random_sp_integral(rng, tc.n, static_cast<int>(rng.uniform(2, 4)));
    const Mat I = Mat::identity(2 * tc.n);
    const Rat dm = det(x - I), dp = det(x + I);
    if (dm == 0 || dp == 0 || vp(dm, P) > vmax || vp(dp, P) > vmax) throw std::domain_error("resample");
    return x;
  });
}

CheckResult theta_unimodular(const Ctx& c) {
  static const std::vector<long> ps{3, 5, 7};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const ThetaCase tc = theta_case(i, ps);
    Mat x = random_k_element(rng, tc, 0);
    if (!is_one(theta_lattice(x, LatticeModel(Int(tc.p), tc.n)).value)) return fail("Theta(x) != 1 with (x-1)L = L", theta_json(tc, x));
    return std::nullopt;
  });
}

CheckResult theta_minus_one(const Ctx& c) {
  return run_trials(c, 9, [&](Rng&, std::size_t i) -> Verdict {
    const long p = std::vector<long>{3, 5, 7}[i % 3];
    const std::size_t n = 1 + i / 3;
    Mat x = Mat::identity(2 * n) * Rat(-1);
    if (!is_one(theta_lattice(x, LatticeModel(Int(p), n)).value)) return fail("Theta(-1) != 1", {{"p", p}, {"n", n}});
    return std::nullopt;
  });
}

CheckResult theta_regular(const Ctx& c) {
  static const std::vector<long> ps{3, 5, 7};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const ThetaCase tc = theta_case(i, ps);
    const LatticeModel m(Int(tc.p), tc.n);
    Mat x = random_regular_reduction(rng, Int(tc.p), tc.n);
    if (!is_one(theta_lattice(x, m).value) || !is_one(theta_lattice(x * Rat(-1), m).value))
      return fail("Theta(x) or Theta(-x) != 1 for regular reduction", theta_json(tc, x));
    return std::nullopt;
  });
}

CheckResult theta_keystone(const Ctx& c) {
  static const std::vector<long> ps{3, 5};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const ThetaCase tc = theta_case(i, ps);
    const LatticeModel m(Int(tc.p), tc.n);
    Mat x = random_top_unipotent(rng, Int(tc.p), tc.n, 4);
    ThetaVal a = theta_lattice(x, m), b = theta_via_cayley(x, m);
    Json w = theta_json(tc, x);
    w["det_minus_val"] = a.det_minus_val;
    w["terms"] = a.terms;
    if (!(a.value == b.value)) {
      w["lattice"] = to_json(a.value);
      w["cayley"] = to_json(b.value);
      return fail("lattice sum differs from p^{v/2} gamma(q[C_x])", w);
    }
    if (!is_one(theta_lattice(x * Rat(-1), m).value)) return fail("Theta(-x) != 1 for topologically unipotent x", w);
    return std::nullopt;
  });
}

CheckResult theta_brute(const Ctx& c) {
  static const std::vector<long> ps{3, 5};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const ThetaCase tc = theta_case(i, ps);
    const long vmax = tc.p == 3 ? (tc.n == 1 ? 4 : 2) : (tc.n == 1 ? 2 : 1);
    const LatticeModel m(Int(tc.p), tc.n);
    Mat x = rng.coin() ? random_top_unipotent(rng, Int(tc.p), tc.n, vmax) : draw([&] {
      Mat y = random_k_element(rng, tc, 12);
      if (vp(det(y - Mat::identity(2 * tc.n)), Int(tc.p)) > vmax) throw std::domain_error("resample");
      return y;
    });
    ThetaVal a = theta_lattice(x, m);
    Json w = theta_json(tc, x);
    if (a.terms != static_cast<std::uint64_t>(ipow(Int(tc.p), static_cast<unsigned long>(a.det_minus_val)).get_ui()))
      return fail("number of summands != p^v", w);
    if (!(oracle::theta_brute(x, m) == a.value)) return fail("Smith-form enumeration differs from the direct scan", w);
    return std::nullopt;
  });
}

CheckResult theta_ratio(const Ctx& c) {
  static const std::vector<long> ps{3, 5};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const ThetaCase tc = theta_case(i, ps);
    Mat x = random_k_element(rng, tc, tc.p == 3 ? 4 : 3);
    if (!theta_ratio_check(x, LatticeModel(Int(tc.p), tc.n)))
      return fail("Theta(x) != gamma(q[C_x]) |det(x+1)/det(x-1)|^{1/2} Theta(-x)", theta_json(tc, x));
    return std::nullopt;
  });
}

CheckResult theta_decompose_check(const Ctx& c) {
  static const std::vector<long> ps{3, 5};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const long p = ps[i % 2];
    std::vector<Mat> blocks;
    const long count = rng.uniform(2, 3);
    for (long k = 0; k < count; ++k) blocks.push_back(random_k_element(rng, {p, 1}, p == 3 ? 2 : 1));
    if (!theta_decompose(blocks, Int(p))) {
      Json b = Json::array();
      for (const auto& x : blocks) b.push_back(to_json(x));
      return fail("Theta of a block sum != product of block values", {{"p", p}, {"blocks", b}});
    }
    return std::nullopt;
  });
}

CheckResult theta_conjugation(const Ctx& c) {
  static const std::vector<long> ps{3, 5};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const ThetaCase tc = theta_case(i, ps);
    const LatticeModel m(Int(tc.p), tc.n);
    Mat x = random_k_element(rng, tc, tc.p == 3 ? 3 : 2);
    Mat g = random_sp_integral(rng, tc.n, 3);
    Mat y = g * x * sp_inverse(g);
    if (!(theta_lattice(x, m).value == theta_lattice(y, m).value)) {
      Json w = theta_json(tc, x);
      w["g"] = to_json(g);
      return fail("Theta not invariant under conjugation by K", w);
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- calcul-qx

CheckResult trace_dual_basis(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    const long n = rng.uniform(2, 5);
    Poly P = random_separable(rng, n);
    QAlgebra A = QAlgebra::monogenic(P);
    Vec b = A.basis(1);
    auto g = dual_basis_traces(A, b, P);
    Vec dinv = A.inv(A.eval(P.derivative(), b));
    Json w{{"P", to_json(P.coeffs())}};
    if (g.size() != static_cast<std::size_t>(n) || !(g.back() == A.one())) return fail("g_{n-1} != 1", w);
    for (long k = 0; k < n; ++k)
      for (long s = 0; s < n; ++s) {
        Rat t = A.trace(A.mul(A.mul(dinv, g[static_cast<std::size_t>(k)]), A.pow(b, s)));
        if (t != (k == s ? 1 : 0)) return fail("tr(P'(b)^{-1} g_k b^s) != delta_{k,s}", w);
      }
    return std::nullopt;
  });
}

CheckResult trace_q1_q2(const Ctx& c) {
  static const std::vector<Place> places{padic(3), padic(5), padic(7)};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = places[i % places.size()];
    const long n = rng.uniform(2, 5);
    Poly P = random_separable(rng, n);
    if (P.coeff(0) == 0) P = P + Poly::constant(Rat(1));
    QAlgebra A = QAlgebra::monogenic(P);
    Vec b = A.basis(1);
    if (A.norm(b) == 0 || A.norm(A.eval(P.derivative(), b)) == 0) return std::nullopt;
    auto [q1, q2] = q1_q2_classes(pl, A, b);
    const Rat N = A.norm(b);
    const std::size_t m = static_cast<std::size_t>(n / 2);
    QForm c1 = n % 2 ? hyp(pl, m) + QForm::diagonal(pl, {Rat(1)}) : hyp(pl, m);
    QForm c2 = n % 2 ? hyp(pl, m) + QForm::diagonal(pl, {N}) : hyp(pl, m - 1) + QForm::diagonal(pl, {Rat(1), -N});
    QForm cq = hyp(pl, static_cast<std::size_t>(n - 1)) + QForm::diagonal(pl, {Rat(pow_sign(n - 1)), Rat(-pow_sign(n - 1)) * N});
    Json w{{"place", place_json(pl)}, {"P", to_json(P.coeffs())}};
    if (!isometric(q1, c1)) return fail("q1 not isometric to its closed form", w);
    if (!isometric(q2, c2)) return fail("q2 not isometric to its closed form", w);
    if (!isometric(q1 + q2.negated(), cq)) return fail("q1 - q2 not isometric to (n-1)H + (-1)^{n-1}<1, -N(b)>", w);
    return std::nullopt;
  });
}

ClassParam random_lie_at(Rng& rng, const Place& pl, int total_degree) {
  return draw([&] { return random_lie_param(rng, random_etale(rng, pl, random_degrees(rng, pl, total_degree))); });
}

CheckResult qx_keystone(const Ctx& c, bool real) {
  static const std::vector<Place> places{padic(3), padic(5), padic(7)};
  return run_trials(c, c.cfg->trials, [&, real](Rng& rng, std::size_t i) -> Verdict {
    const Place pl = real ? Place::real() : places[i % places.size()];
    ClassParam q = random_lie_at(rng, pl, static_cast<int>(rng.uniform(1, 3)));
    CalculQX r = calcul_qx(q);
    if (!r.holds())
      return fail("gamma(q[X]) from the Gram differs from the closed form",
                  {{"param", to_json(q)}, {"gram_side", to_json(r.gram_side)}, {"closed_form", to_json(r.closed_form)}});
    return std::nullopt;
  });
}

CheckResult qx_sign_change(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i % all_places().size()];
    EtaleAlg A = random_etale(rng, pl, random_degrees(rng, pl, static_cast<int>(rng.uniform(1, 3))));
    auto unit = [&] {
      return draw([&] {
        EtaleElem r = random_hermitian(rng, A);
        if (!A.is_invertible(r)) throw std::domain_error("resample");
        return r;
      });
    };
    EtaleElem r = unit(), r2 = unit();
    const PsiSpec psi(pl);
    const Mu8 g1 = weil_index(trace_form(A, r), psi), g2 = weil_index(trace_form(A, r2), psi);
    const int s = A.sgn_char(A.mul(r, A.inv(r2)));
    if (!(g2 == g1 * Mu8::from_sign(s)))
      return fail("gamma(q(r')) != gamma(q(r)) sgn(r/r')", {{"factors", to_json(A)}, {"r", to_json(r)}, {"r1", to_json(r2)}});
    return std::nullopt;
  });
}

ClassParam random_param_any(Rng& rng, const EtaleAlg& A, int eps, ParamMode mode) {
  if (mode == ParamMode::Group) return random_group_param(rng, A, eps);
  if (eps == -1) return random_lie_param(rng, A);
  return draw([&] {
    ClassParam q{1, ParamMode::Lie, A, random_antihermitian(rng, A), random_hermitian(rng, A)};
    q.validate();
    return q;
  });
}

CheckResult etale_realization(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i % all_places().size()];
    const int eps = rng.coin() ? 1 : -1;
    const ParamMode mode = rng.coin() ? ParamMode::Group : ParamMode::Lie;
    ClassParam q = draw([&] {
      return random_param_any(rng, random_etale(rng, pl, random_degrees(rng, pl, static_cast<int>(rng.uniform(1, 3)))), eps, mode);
    });
    Realization r = matrix_realization(q);
    const Mat& G = r.gram;
    const Mat& M = r.op;
    Json w{{"param", to_json(q)}};
    if (det(G) == 0) return fail("degenerate form", w);
    if (eps == 1 ? !G.is_symmetric() : !G.is_antisymmetric()) return fail("form has the wrong symmetry", w);
    if (mode == ParamMode::Group ? !(M.transpose() * G * M == G) : !(M.transpose() * G + G * M).is_zero())
      return fail("operator does not preserve the form", w);
    if (!(charpoly(M) == q.alg.char_poly(q.a))) return fail("charpoly(M) != P_a", w);
    return std::nullopt;
  });
}

ClassParam random_so_even_lie(Rng& rng, const Place& pl) {
  return draw([&] {
    return random_param_any(rng, random_etale(rng, pl, random_degrees(rng, pl, static_cast<int>(rng.uniform(1, 3)))), 1, ParamMode::Lie);
  });
}

CheckResult etale_so_even_sign(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i % all_places().size()];
    ClassParam q = random_so_even_lie(rng, pl);
    Realization r = matrix_realization(q);
    const long half = static_cast<long>(q.alg.dim_F() / 2);
    const Rat t = local_rat(rng, pl);
    const int lhs = q.alg.sgn_char(q.alg.from_rat(t));
    const int rhs = hilbert(t, Rat(pow_sign(half)) * det(r.gram), pl);
    if (lhs != rhs) return fail("sgn(t) != (t, (-1)^{dim/2} det q)", {{"param", to_json(q)}, {"t", to_json(t)}, {"lhs", lhs}, {"rhs", rhs}});
    return std::nullopt;
  });
}

CheckResult etale_pfaffian(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i % all_places().size()];
    ClassParam q = random_so_even_lie(rng, pl);
    Realization r = matrix_realization(q);
    const Rat dm = det(r.op);
    if (dm == 0) return std::nullopt;
    if (!is_square(dm / det(r.gram), pl)) return fail("det Y not in det q . squares", {{"param", to_json(q)}});
    return std::nullopt;
  });
}

CheckResult etale_sign_char(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i % all_places().size()];
    EtaleAlg A = random_etale(rng, pl, random_degrees(rng, pl, static_cast<int>(rng.uniform(1, 3))));
    EtaleElem x = random_unit(rng, A);
    EtaleElem t1 = draw([&] {
      EtaleElem t = random_hermitian(rng, A);
      if (!A.is_invertible(t)) throw std::domain_error("resample");
      return t;
    });
    EtaleElem t2 = A.mul(t1, t1);
    t2 = A.add(t2, A.one());
    if (!A.is_invertible(t2)) t2 = A.one();
    Json w{{"factors", to_json(A)}, {"x", to_json(x)}, {"t", to_json(t1)}};
    if (A.sgn_char(A.mul(x, A.tau(x))) != 1) return fail("sgn of a norm is not +1", w);
    if (A.sgn_char(A.mul(t1, t2)) != A.sgn_char(t1) * A.sgn_char(t2)) return fail("sgn is not multiplicative", w);
    return std::nullopt;
  });
}

CheckResult etale_stable_orbit(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = all_places()[i % all_places().size()];
    EtaleAlg A = random_etale(rng, pl, random_degrees(rng, pl, static_cast<int>(rng.uniform(1, 3))));
    const std::size_t istar = A.inert_indices().size();
    const bool sp = rng.coin();
    ClassParam q = draw([&] { return random_group_param(rng, A, sp ? -1 : 1); });
    const GroupKind kind = sp ? GroupKind::Sp : (rng.coin() ? GroupKind::SOodd : GroupKind::SOeven);
    auto orbit = stable_orbit(kind, q);
    const std::size_t want = sp ? (std::size_t{1} << istar) : (std::size_t{1} << (istar ? istar - 1 : 0));
    Json w{{"param", to_json(q)}, {"sp", sp}, {"orbit", orbit.size()}};
    if (orbit.size() != want) return fail("stable orbit has the wrong size", w);
    std::set<std::vector<int>> seen;
    for (const auto& o : orbit) seen.insert(invariant_vector(q, o));
    if (seen.size() != orbit.size()) return fail("stable orbit repeats an invariant", w);
    EtaleElem z = random_unit(rng, A);
    ClassParam q2 = q;
    q2.c = A.mul(q.c, A.mul(z, A.tau(z)));
    for (const auto& o : orbit)
      if (class_exists(kind, o, q.c) != class_exists(kind, o, q2.c)) return fail("class existence not constant on norm cosets", w);
    if (sp)
      for (const auto& o : orbit)
        if (!class_exists(kind, o, q.c)) return fail("symplectic class reported missing", w);
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- reciprocity

const std::vector<Place>& recip_places() {
  static const std::vector<Place> v{padic(3), padic(5), padic(7), Place::real()};
  return v;
}

CheckResult recip_lie(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    auto [x1, x2] = draw([&] {
      ClassParam a = random_lie_at(rng, pl, static_cast<int>(rng.uniform(1, 2)));
      ClassParam b = random_lie_at(rng, pl, static_cast<int>(rng.uniform(1, 2)));
      reciprocity_lie(a, b);
      return std::make_pair(a, b);
    });
    ReciprocityResult r = reciprocity_lie(x1, x2);
    if (!r.holds())
      return fail("sgn(P_{X''}(a')) sgn(P_{X'}(a'')) != (-1,-1)^{n'n''} (det X', det X'')",
                  {{"prime", to_json(x1)}, {"second", to_json(x2)}, {"lhs", r.lhs}, {"rhs", r.rhs}});
    return std::nullopt;
  });
}

CheckResult recip_group(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    auto [x1, x2] = draw([&] {
      auto gen = [&] {
        return random_group_param(rng, random_etale(rng, pl, random_degrees(rng, pl, static_cast<int>(rng.uniform(1, 2)))), -1);
      };
      ClassParam a = gen(), b = gen();
      reciprocity_group(a.alg, a.a, b.alg, b.a);
      return std::make_pair(a, b);
    });
    ReciprocityResult r = reciprocity_group(x1.alg, x1.a, x2.alg, x2.a);
    if (!r.holds())
      return fail("group reciprocity identity fails", {{"prime", to_json(x1)}, {"second", to_json(x2)}, {"lhs", r.lhs}, {"rhs", r.rhs}});
    return std::nullopt;
  });
}

CheckResult recip_mobius(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    const long m = rng.uniform(1, 5);
    Poly P = random_separable(rng, m);
    const Rat a = rng.rat(6, 3, false), b = rng.rat(6, 3, false), cc = rng.rat(6, 3), d = rng.rat(6, 3, false);
    if (a * d - b * cc == 0) return std::nullopt;
    bool ok;
    try {
      ok = mobius_check(P, a, b, cc, d);
    } catch (const std::domain_error&) {
      return std::nullopt;  // cz + d not invertible
    }
    if (!ok)
      return fail("fractional-linear characteristic polynomial identity fails",
                  {{"P", to_json(P.coeffs())}, {"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(cc)}, {"d", to_json(d)}});
    return std::nullopt;
  });
}

CheckResult descent_pm(const Ctx& c, bool plus) {
  return run_trials(c, c.cfg->trials, [&, plus](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    auto [x1, x2] = draw([&] {
      ClassParam a = random_lie_at(rng, pl, static_cast<int>(rng.uniform(1, 2)));
      ClassParam b = random_lie_at(rng, pl, static_cast<int>(rng.uniform(1, 2)));
      if (!b.alg.is_invertible(b.alg.eval(a.alg.char_poly(a.a), b.a))) throw std::domain_error("resample");
      if (!a.alg.is_invertible(a.alg.eval(b.alg.char_poly(b.a), a.a))) throw std::domain_error("resample");
      return std::make_pair(a, b);
    });
    const ClassParam& self = plus ? x2 : x1;
    const ClassParam& other = plus ? x1 : x2;
    const Poly P = x1.alg.char_poly(x1.a) * x2.alg.char_poly(x2.a);
    const int got = plus ? lie_descent_plus(x2, P) : lie_descent_minus(x1, P);
    const int want = self.alg.sgn_char(self.alg.eval(other.alg.char_poly(other.a), self.a)) * sign_from_gram(self);
    Json w{{"prime", to_json(x1)}, {"second", to_json(x2)}, {"got", got}, {"want", want}};
    if (got != want) return fail("descent sign differs from the Gram-side evaluation", w);
    if (self.alg.inert_indices().empty() && got != 1) return fail("descent sign != 1 with all factors split", w);
    const Rat lam = rng.rat(5, 5);
    ClassParam s2 = self;
    s2.a = self.alg.scale(self.a, lam * lam);
    Poly P2;
    {
      Vec co = P.coeffs();
      Rat f = 1;
      for (std::size_t k = co.size(); k-- > 0;) {
        co[k] *= f;
        f *= lam * lam;
      }
      P2 = Poly(co);
    }
    if ((plus ? lie_descent_plus(s2, P2) : lie_descent_minus(s2, P2)) != got) return fail("descent sign not invariant under X -> lambda^2 X", w);
    return std::nullopt;
  });
}

CheckResult descent_u(const Ctx& c) {
  static const std::vector<long> ps{3, 5, 7};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const long p = ps[i % ps.size()];
    const Place pl = padic(p);
    auto Qp = LocalField::rationals(pl);
    const Rat dL = rng.coin() ? Rat(least_nonresidue(Int(p))) : Rat(p);
    const QuadExt L{dL, false};
    // X_u = U diag(y_1 sqrt d, ..., y_m sqrt d) U^{-1}; K'' takes the first r eigenvalues.
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 4)), r = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(m)));
    std::vector<Rat> ys;
    while (ys.size() < m) {
      Rat y = rng.rat(6, 3);
      if (std::find(ys.begin(), ys.end(), y) == ys.end() && std::find(ys.begin(), ys.end(), Rat(-y)) == ys.end()) ys.push_back(y);
    }
    Mat U = Mat::identity(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) U(a, b) = Rat(rng.uniform(-2, 2));
    const Mat Ui = inverse(U);
    std::vector<std::vector<LNum>> X(m, std::vector<LNum>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        Rat y = 0;
        for (std::size_t k = 0; k < m; ++k) y += U(a, k) * ys[k] * Ui(k, b);
        X[a][b] = {Rat(0), y};
      }
    std::vector<EtaleFactor> fs;
    for (std::size_t k = 0; k < r; ++k) fs.push_back(EtaleFactor::make_inert(Qp, Vec{dL}));
    EtaleAlg A(fs);
    EtaleElem a2 = A.zero(), c2 = A.zero();
    std::vector<Rat> zs;
    for (std::size_t k = 0; k < r; ++k) {
      zs.push_back(rng.rat(6, 3));
      a2.parts[k] = {Vec{Rat(0)}, Vec{ys[k]}};
      c2.parts[k] = {Vec{Rat(0)}, Vec{zs[k]}};
    }
    ClassParam second{-1, ParamMode::Lie, A, a2, c2};
    second.validate();
    const int s = lie_descent_u(second, L, X);
    // Direct evaluation: P'(y_k sqrt d) = prod_{j != k} (y_k - y_j) sqrt d, gamma_u = sqrt d^{m mod 2}.
    int want = 1;
    for (std::size_t k = 0; k < r; ++k) {
      Rat t = 1;
      for (std::size_t j = 0; j < m; ++j)
        if (j != k) t *= ys[k] - ys[j];
      const std::size_t e = (m - 1) + (m % 2) - 1;  // power of sqrt d after dividing by z_k sqrt d
      t = t / zs[k] * rpow(dL, static_cast<long>(e / 2));
      want *= hilbert(t, dL, pl);
    }
    Json xs = Json::array();
    for (const auto& y : ys) xs.push_back(to_json(y));
    Json w{{"second", to_json(second)}, {"d_L", to_json(dL)}, {"eigen_y", xs}, {"U", to_json(U)}, {"got", s}, {"want", want}};
    if (s != want) return fail("Delta_u differs from the product over eigenvalue differences", w);
    const Rat lam = rng.rat(5, 5);
    ClassParam s2 = second;
    s2.a = second.alg.scale(second.a, lam * lam);
    auto X2 = X;
    for (auto& row : X2)
      for (auto& e : row) e = {e.x * lam * lam, e.y * lam * lam};
    if (lie_descent_u(s2, L, X2) != s) return fail("Delta_u not invariant under lambda^2 scaling", w);
    if (lie_descent_u(second, QuadExt{Rat(1), true}, X) != 1) return fail("Delta_u != 1 for split L", w);
    const LNum wrong = m % 2 ? LNum{Rat(1), Rat(0)} : LNum{Rat(0), Rat(1)};
    try {
      lie_descent_u(second, L, X, wrong);
      return fail("gamma_u with the wrong parity was accepted", w);
    } catch (const std::invalid_argument&) {
    }
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- delta0

CheckResult d0_reciprocity(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    CorrespondencePair pair = random_pair(rng, pl, static_cast<int>(rng.uniform(1, 3)), static_cast<int>(rng.uniform(1, 3)));
    if (!delta0_reciprocity_check(pair)) return fail("Delta_0(d', d'') != Delta_0(-d'', -d')", to_json(pair));
    return std::nullopt;
  });
}

CheckResult d0_trivial(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    const int deg = static_cast<int>(rng.uniform(1, 3));
    CorrespondencePair pair = rng.coin() ? random_pair(rng, pl, deg, 0) : random_pair(rng, pl, 0, deg);
    if (delta0(pair) != 1) return fail("Delta_0 != 1 with n'n'' = 0", to_json(pair));
    return std::nullopt;
  });
}

CheckResult d0_parabolic(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    auto [pair, u1, u2] = draw([&] {
      CorrespondencePair pr = random_pair(rng, pl, static_cast<int>(rng.uniform(1, 2)), static_cast<int>(rng.uniform(1, 2)));
      std::vector<Rat> a, b;
      for (long k = rng.uniform(0, 2); k > 0; --k) a.push_back(rng.rat(9, 5));
      for (long k = rng.uniform(a.empty() ? 1 : 0, 2); k > 0; --k) b.push_back(rng.rat(9, 5));
      parabolic_descent_check(pr, a, b);
      return std::make_tuple(pr, a, b);
    });
    if (!parabolic_descent_check(pair, u1, u2)) {
      Json w = to_json(pair);
      w["append_prime"] = to_json(u1);
      w["append_second"] = to_json(u2);
      return fail("Delta_0 changed after appending split blocks", w);
    }
    return std::nullopt;
  });
}

CheckResult d0_real(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t) -> Verdict {
    auto [w1, w2] = draw([&] {
      std::vector<CirclePoint> a, b;
      for (long k = rng.uniform(0, 3); k > 0; --k) a.push_back(random_circle_point(rng));
      for (long k = rng.uniform(0, 3); k > 0; --k) b.push_back(random_circle_point(rng));
      delta_R(a, b);
      delta0_real(a, b);
      return std::make_pair(a, b);
    });
    const int r = delta_R(w1, w2), d = delta0_real(w1, w2);
    if (r != d) {
      auto pj = [](const std::vector<CirclePoint>& v) {
        Json a = Json::array();
        for (const auto& [x, y] : v) a.push_back(Json::array({to_json(x), to_json(y)}));
        return a;
      };
      return fail("Delta_0 != Delta_R", {{"w_prime", pj(w1)}, {"w_second", pj(w2)}, {"delta_R", r}, {"delta0", d}});
    }
    return std::nullopt;
  });
}

std::vector<int> random_twist(Rng& rng, std::size_t size) {
  std::vector<int> t(size);
  for (auto& s : t) s = rng.coin() ? -1 : 1;
  return t;
}

CheckResult d0_twist(const Ctx& c) {
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Place& pl = recip_places()[i % recip_places().size()];
    CorrespondencePair pair = random_pair(rng, pl, static_cast<int>(rng.uniform(1, 2)), static_cast<int>(rng.uniform(1, 2)));
    auto tw = random_twist(rng, pair.delta.alg.inert_indices().size());
    TwistResult r = delta0_cocycle_twist(pair, tw);
    if (!r.consistent()) {
      Json w = to_json(pair);
      w["twist"] = tw;
      w["kappa"] = r.kappa;
      w["gamma_ratio"] = to_json(r.gamma_ratio);
      return fail("twist ratio does not match kappa", w);
    }
    return std::nullopt;
  });
}

CheckResult transfer_normalization(const Ctx& c) {
  struct Case {
    long p;
    std::size_t n1, n2;
  };
  static const std::vector<Case> cases{{3, 1, 0}, {3, 0, 1}, {5, 1, 1}, {5, 2, 1}, {5, 1, 2}, {7, 1, 1}, {7, 2, 1}, {7, 2, 2}};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Case k = cases[i % cases.size()];
    CorrespondencePair pair = regular_reduction_pair(rng, Int(k.p), k.n1, k.n2);
    FullDelta fd = full_delta(pair, LatticeModel(Int(k.p), k.n1 + k.n2));
    if (!(fd.value == Mu8::one())) {
      Json w = to_json(pair);
      w["p"] = k.p;
      w["value"] = to_json(fd.value);
      return fail("Delta != 1 at a regular-reduction pair", w);
    }
    return std::nullopt;
  });
}

CheckResult transfer_compact(const Ctx& c) {
  struct Case {
    long p;
    std::size_t n1, n2;
  };
  static const std::vector<Case> cases{{3, 1, 1}, {5, 1, 1}, {3, 2, 1}, {5, 2, 1}, {3, 1, 2}};
  return run_trials(c, c.cfg->trials, [&](Rng& rng, std::size_t i) -> Verdict {
    const Case k = cases[i % cases.size()];
    const LatticeModel m(Int(k.p), k.n1 + k.n2);
    CorrespondencePair pair = compact_pair(rng, Int(k.p), k.n1, k.n2);
    FullDelta fd = full_delta(pair, m);
    auto tw = random_twist(rng, pair.delta.alg.inert_indices().size());
    TwistResult r = delta0_cocycle_twist(pair, tw);
    Json w = to_json(pair);
    w["p"] = k.p;
    w["twist"] = tw;
    w["value"] = to_json(fd.value);
    if (!r.consistent()) return fail("twist ratio does not match kappa", w);
    CorrespondencePair twisted = twist_pair(pair, tw);
    std::optional<Mat> x;
    try {
      x = realize_standard(twisted.delta);
    } catch (const std::invalid_argument&) {
    }
    if (x && in_K(*x, m)) full_delta(twisted, *x, m);  // throws unless the value lies in mu_8
    return std::nullopt;
  });
}

// ---------------------------------------------------------------- registry

struct Entry {
  const char* suite;
  const char* name;
  const char* anchor;
  std::function<CheckResult(const Ctx&)> fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r{
      {"hilbert", "conic-oracle", "(a,b)_p = +1 iff z^2 = a x^2 + b y^2 has a primitive solution", hilbert_conic},
      {"hilbert", "bimultiplicative", "(ab,c) = (a,c)(b,c), (a,b) = (b,a)", hilbert_bimultiplicative},
      {"hilbert", "norm-residue", "(a,-a) = (a,1-a) = +1", hilbert_norm_residue},
      {"weil", "gauss-sum", "gamma(<a>) = normalized sum of psi(a x^2 / 2)", weil_gauss},
      {"weil", "witt-invariance", "gamma factors through the Witt group", weil_witt_invariance},
      {"weil", "additivity", "gamma(q + q') = gamma(q) gamma(q')", weil_additivity},
      {"weil", "hyperbolic", "gamma(H) = 1", weil_hyperbolic},
      {"weil", "product-rule", "gamma(ab) gamma(1) = gamma(a) gamma(b) (a,b)", weil_product_rule},
      {"maslov", "dimension", "dim tau = (m-2) dim W / 2 - sum dim(l_i cap l_{i+1}) + 2 dim(cap l_i)", maslov_dimension},
      {"maslov", "dihedral", "[tau(l_2..l_m,l_1)] = [tau(l_1..l_m)] = -[tau(l_m..l_1)]", maslov_dihedral},
      {"maslov", "chain", "[tau(l_1..l_m)] = [tau(l_1..l_k)] + [tau(l_1,l_k..l_m)]", maslov_chain},
      {"maslov", "cocycle", "c(g,g')c(gg',g'') = c(g,g'g'')c(g',g''), c = gamma(tau(l,gl,gg'l))", maslov_cocycle},
      {"maslov", "invariance", "tau(gl_i) = tau(l_i), tau additive on direct sums", maslov_invariance},
      {"maslov", "cayley-exp", "q[C_exp(X)] = q[X] for topologically nilpotent X", cayley_exp},
      {"theta", "unimodular", "Theta(x) = 1 when (x-1)L = L", theta_unimodular},
      {"theta", "minus-one", "Theta(-1) = |2|^n = 1", theta_minus_one},
      {"theta", "regular-reduction", "Theta(x) = Theta(-x) = 1 for regular semisimple reduction", theta_regular},
      {"theta", "keystone", "sum over (x-1)^{-1}L/L of psi(<xw|w>/2) = |det(x-1)|^{-1/2} gamma(q[C_x])", theta_keystone},
      {"theta", "enumeration", "Smith-form sum equals direct scan; p^v summands", theta_brute},
      {"theta", "ratio", "Theta(x) = gamma(q[C_x]) |det(x+1)/det(x-1)|^{1/2} Theta(-x)", theta_ratio},
      {"theta", "decompose", "Theta(x_1 + ... + x_r) = prod Theta(x_k)", theta_decompose_check},
      {"theta", "conjugation", "Theta(g x g^{-1}) = Theta(x) for g in K", theta_conjugation},
      {"calcul-qx", "dual-basis", "tr(P'(b)^{-1} g_k b^s) = delta_{k,s}", trace_dual_basis},
      {"calcul-qx", "trace-forms", "q1 = mH (+<1>), q2 = (m-1)H + <1,-N(b)> or mH + <N(b)>", trace_q1_q2},
      {"calcul-qx", "keystone", "gamma(q[X]) = gamma((-1)^{n-1}) gamma(det X) sgn(c^{-1} P'_X(a)), p-adic",
       [](const Ctx& c) { return qx_keystone(c, false); }},
      {"calcul-qx", "keystone-real", "gamma(q[X]) = gamma((-1)^{n-1}) gamma(det X) sgn(c^{-1} P'_X(a)), real",
       [](const Ctx& c) { return qx_keystone(c, true); }},
      {"calcul-qx", "sign-change", "gamma(q(r')) = gamma(q(r)) sgn(r/r')", qx_sign_change},
      {"calcul-qx", "realization", "h(x,y) = tr(c tau(x) y) is preserved by a, charpoly = P_a", etale_realization},
      {"calcul-qx", "sign-character", "sgn kills norms and is multiplicative", etale_sign_char},
      {"calcul-qx", "so-even-sign", "sgn(t) = (t, (-1)^{dim V/2} det q) when the class lives in SO(V,q)", etale_so_even_sign},
      {"calcul-qx", "pfaffian", "det Y in det q . F^x2 for invertible Y in so(V,q), dim V even", etale_pfaffian},
      {"calcul-qx", "stable-orbit", "stable class = mu_2^{I*} (Sp) or (mu_2)_0^{I*}", etale_stable_orbit},
      {"reciprocity", "lie", "sgn(P_{X''}(a')) sgn(P_{X'}(a'')) = (-1,-1)^{n'n''} (det X', det X'')", recip_lie},
      {"reciprocity", "group", "group-level reciprocity of sgn(P_{a''}(a')) and sgn(P_{a'}(a''))", recip_group},
      {"reciprocity", "mobius", "(cT+d)^m P_w((aT+b)/(cT+d)) = c^m P_w(a/c) P_z(T)", recip_mobius},
      {"reciprocity", "descent-plus", "sgn(c''^{-1} P'_{X+}(a''))", [](const Ctx& c) { return descent_pm(c, true); }},
      {"reciprocity", "descent-minus", "sgn(c'^{-1} P'_{X-}(a'))", [](const Ctx& c) { return descent_pm(c, false); }},
      {"reciprocity", "descent-u", "sgn(gamma_u c''^{-1} P'_{X_u|L}(a''))", descent_u},
      {"delta0", "reciprocity", "Delta_0(d', d'') = Delta_0(-d'', -d')", d0_reciprocity},
      {"delta0", "trivial", "Delta_0 = 1 when n'n'' = 0", d0_trivial},
      {"delta0", "parabolic", "Delta_0 unchanged by split GL blocks", d0_parabolic},
      {"delta0", "real", "Delta_0 = prod sgn(Re w' - Re w'')", d0_real},
      {"delta0", "twist", "Delta_0 twist-invariant, gamma(q[C_d'']) ratio = kappa", d0_twist},
      {"delta0", "normalization", "Delta(gamma, delta) = 1 for regular reduction", transfer_normalization},
      {"delta0", "compact", "Delta in mu_8 on compact pairs, twist ratio = kappa", transfer_compact},
      {"product-formula", "hilbert", "prod_v (a,b)_v = 1", global_hilbert},
      {"product-formula", "weil", "prod_v gamma_v(q) = 1", global_weil},
      {"product-formula", "delta0", "prod_v sgn_v(alpha'') = 1", delta0_product},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> s{"hilbert", "weil", "maslov", "theta", "calcul-qx", "reciprocity", "delta0", "product-formula"};
  return s;
}

std::vector<std::string> check_names(const std::string& suite) {
  std::vector<std::string> out;
  for (const auto& e : registry())
    if (suite == "all" || suite == e.suite) out.push_back(std::string(e.suite) + "/" + e.name);
  return out;
}

CheckResult run_check(const std::string& name, const RunConfig& cfg) {
  for (const auto& e : registry())
    if (name == std::string(e.suite) + "/" + e.name) return e.fn(Ctx{e.suite, e.name, e.anchor, &cfg});
  throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw std::invalid_argument("unknown suite: " + suite);
  std::vector<CheckResult> out;
  for (const auto& name : check_names(suite)) out.push_back(run_check(name, cfg));
  return out;
}

Json to_json(const CheckResult& r, bool timing) {
  Json f = Json::array();
  for (const auto& x : r.failures) f.push_back({{"trial", x.trial}, {"message", x.message}, {"witness", x.witness}});
  Json j{{"suite", r.suite}, {"check", r.name}, {"anchor", r.anchor}, {"trials", r.trials}, {"status", r.passed() ? "pass" : "fail"}, {"failures", f}};
  if (timing) j["wall_ms"] = r.wall_ms;
  return j;
}

std::string table_line(const CheckResult& r, bool timing) {
  std::ostringstream os;
  os << (r.passed() ? "PASS " : "FAIL ") << r.suite << "/" << r.name << "  trials=" << r.trials << " failures=" << r.failures.size();
  if (timing) os << " ms=" << static_cast<long>(r.wall_ms);
  os << "  [" << r.anchor << "]";
  return os.str();
}

}  // namespace mtf::verify
