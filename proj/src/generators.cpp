// SPDX-License-Identifier: Apache-2.0
#include "mtf/generators.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mtf/weil_character.hpp"

namespace mtf {
namespace {

constexpr int kRetries = 2000;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

long pl_p(const Place& pl) { return static_cast<long>(pl.p().get_si()); }

LocalFieldPtr cached(const std::string& key, const std::function<LocalFieldPtr()>& make) {
  static std::mutex mu;
  static std::map<std::string, LocalFieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache[key] = make();
}

std::vector<Int> irreducible_cubic(long p) {
  for (long b = 0; b < p; ++b)
    for (long c = 1; c < p; ++c) {
      std::vector<Int> g{Int(c), Int(b), Int(0), Int(1)};
      if (FqField::irreducible(Int(p), g)) return g;
    }
  throw std::logic_error("no irreducible cubic");
}

}  // namespace

Rng Rng::trial(std::uint64_t seed, std::uint64_t check, std::uint64_t index) {
  return Rng(splitmix(splitmix(seed) ^ splitmix(check * 0x100000001b3ull + 7) ^ splitmix(index + 0x51ed27)));
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(g_() % span);
}

Rat Rng::rat(long num_bound, long den_bound, bool nonzero) {
  long n = uniform(-num_bound, num_bound);
  while (nonzero && n == 0) n = uniform(-num_bound, num_bound);
  Rat r(n, uniform(1, den_bound));
  r.canonicalize();
  return r;
}

const std::vector<long>& small_primes() {
  static const std::vector<long> v{3, 5, 7, 11};
  return v;
}

LocalFieldPtr ksharp_of_degree(Rng& rng, const Place& pl, int degree) {
  if (pl.is_real()) {
    if (degree != 1) throw std::invalid_argument("real place: K# must be R");
    return cached("R", [] { return LocalField::rationals(Place::real()); });
  }
  const long p = pl_p(pl);
  const std::string ps = std::to_string(p);
  const Int n0 = least_nonresidue(Int(p));
  switch (degree) {
    case 1:
      return cached("Q" + ps, [&] { return LocalField::rationals(pl); });
    case 2:
      if (rng.coin())
        return cached("U2_" + ps, [&] {
          return LocalField::tower(Int(p), {Int(-n0), Int(0), Int(1)}, {Vec{Rat(-p)}, Vec{Rat(1)}});
        });
      else {
        const bool twist = rng.coin();
        return cached("R2_" + ps + (twist ? "n" : ""), [&] {
          Rat c = Rat(-p) * (twist ? Rat(n0) : Rat(1));
          return LocalField::tower(Int(p), {Int(0), Int(1)}, {Vec{c}, Vec{Rat(0)}, Vec{Rat(1)}});
        });
      }
    case 3:
      if (p == 3 || rng.coin())
        return cached("U3_" + ps, [&] { return LocalField::tower(Int(p), irreducible_cubic(p), {Vec{Rat(-p)}, Vec{Rat(1)}}); });
      return cached("R3_" + ps, [&] {
        return LocalField::tower(Int(p), {Int(0), Int(1)}, {Vec{Rat(-p)}, Vec{Rat(0)}, Vec{Rat(0)}, Vec{Rat(1)}});
      });
    default:
      throw std::invalid_argument("K# degree must be 1, 2 or 3");
  }
}

LocalFieldPtr random_ksharp(Rng& rng, const Place& pl, int max_degree) {
  if (pl.is_real()) return ksharp_of_degree(rng, pl, 1);
  return ksharp_of_degree(rng, pl, static_cast<int>(rng.uniform(1, max_degree)));
}

LocalField::Elem random_element(Rng& rng, const LocalField& k, bool nonzero) {
  while (true) {
    LocalField::Elem x;
    if (k.kind() != LocalField::Kind::Padic) {
      x = k.zero();
      for (auto& c : x) c = rng.rat(9, 4, false);
    } else {
      const long p = pl_p(k.place());
      x = k.zero();
      for (auto& c : x) c = Rat(rng.uniform(-p, p));
      const long shift = rng.uniform(-1, 2);
      if (shift != 0) x = k.mul(x, k.pow(k.uniformizer(), shift));
    }
    if (!nonzero || !is_zero(x)) return x;
  }
}

LocalField::Elem random_nonsquare(Rng& rng, const LocalField& k) {
  if (k.kind() == LocalField::Kind::Real) return k.from_rat(-Rat(rng.uniform(1, 9), rng.uniform(1, 4)));
  for (int i = 0; i < kRetries; ++i) {
    auto x = random_element(rng, k);
    if (!k.is_square(x)) return x;
  }
  throw std::logic_error("no nonsquare found");
}

std::vector<int> random_degrees(Rng& rng, const Place& pl, int total) {
  std::vector<int> out;
  while (total > 0) {
    int d = pl.is_real() ? 1 : static_cast<int>(rng.uniform(1, std::min(total, 3)));
    out.push_back(d);
    total -= d;
  }
  return out;
}

EtaleAlg random_etale(Rng& rng, const Place& pl, const std::vector<int>& degrees, FactorKinds kinds) {
  std::vector<EtaleFactor> fs;
  for (int deg : degrees) {
    auto k = ksharp_of_degree(rng, pl, deg);
    const bool inert = kinds == FactorKinds::Inert || (kinds == FactorKinds::Mixed && rng.uniform(0, 2) > 0);
    if (inert)
      fs.push_back(EtaleFactor::make_inert(k, random_nonsquare(rng, *k)));
    else
      fs.push_back(EtaleFactor::make_split(k));
  }
  return EtaleAlg(std::move(fs));
}

EtaleElem random_unit(Rng& rng, const EtaleAlg& A) {
  while (true) {
    EtaleElem z;
    for (const auto& f : A.factors()) z.parts.emplace_back(random_element(rng, *f.ksharp, false), random_element(rng, *f.ksharp, false));
    if (A.is_invertible(z)) return z;
  }
}

EtaleElem random_hermitian(Rng& rng, const EtaleAlg& A) {
  EtaleElem z;
  for (const auto& f : A.factors()) {
    auto x = random_element(rng, *f.ksharp);
    z.parts.emplace_back(x, f.split ? x : f.ksharp->zero());
  }
  return z;
}

EtaleElem random_antihermitian(Rng& rng, const EtaleAlg& A) {
  EtaleElem z;
  for (const auto& f : A.factors()) {
    auto x = random_element(rng, *f.ksharp);
    if (f.split)
      z.parts.emplace_back(x, f.ksharp->neg(x));
    else
      z.parts.emplace_back(f.ksharp->zero(), x);
  }
  return z;
}

EtaleElem random_norm_one(Rng& rng, const EtaleAlg& A) {
  EtaleElem z = random_unit(rng, A);
  return A.mul(z, A.inv(A.tau(z)));
}

ClassParam random_lie_param(Rng& rng, const EtaleAlg& A) {
  for (int i = 0; i < kRetries; ++i) {
    ClassParam q{-1, ParamMode::Lie, A, random_antihermitian(rng, A), random_antihermitian(rng, A)};
    try {
      q.validate();
      return q;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::logic_error("could not draw a regular Lie parameter");
}

ClassParam random_group_param(Rng& rng, const EtaleAlg& A, int epsilon) {
  for (int i = 0; i < kRetries; ++i) {
    ClassParam q{epsilon, ParamMode::Group, A, random_norm_one(rng, A),
                 epsilon == 1 ? random_hermitian(rng, A) : random_antihermitian(rng, A)};
    try {
      q.validate();
      return q;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::logic_error("could not draw a regular group parameter");
}

namespace {

Mat random_symmetric(Rng& rng, std::size_t n, long bound) {
  Mat S(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) S(i, j) = S(j, i) = Rat(rng.uniform(-bound, bound));
  return S;
}

}  // namespace

Mat random_sp_integral(Rng& rng, std::size_t n, int steps) {
  Mat x = Mat::identity(2 * n);
  const Mat I = Mat::identity(n);
  for (int s = 0; s < steps; ++s) {
    Mat g = Mat::identity(2 * n);
    const long kind = rng.uniform(0, 2);
    if (kind == 0) {
      g.set_block(0, n, random_symmetric(rng, n, 2));
    } else if (kind == 1) {
      g.set_block(n, 0, random_symmetric(rng, n, 2));
    } else {
      Mat A = I;
      if (n > 1) {
        std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
        if (j >= i) ++j;
        A(i, j) = Rat(rng.uniform(-2, 2));
      } else {
        A(0, 0) = rng.coin() ? 1 : -1;
      }
      g.set_block(0, 0, A);
      g.set_block(n, n, inverse(A).transpose());
    }
    x = x * g;
  }
  return x;
}

Mat random_sp_lie_integral(Rng& rng, std::size_t n, long bound) {
  Mat X(2 * n, 2 * n);
  Mat A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = Rat(rng.uniform(-bound, bound));
  X.set_block(0, 0, A);
  X.set_block(0, n, random_symmetric(rng, n, bound));
  X.set_block(n, 0, random_symmetric(rng, n, bound));
  X.set_block(n, n, -A.transpose());
  return X;
}

Mat random_top_unipotent(Rng& rng, const Int& p, std::size_t n, long vmax) {
  const LatticeModel m(p, n);
  for (int t = 0; t < kRetries; ++t) {
    Mat X0(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        X0(i, j) = Rat(rng.uniform(-2, 2));
        X0(n + j, n + i) = -X0(i, j);
      }
    X0.set_block(0, n, random_symmetric(rng, n, 2));
    Mat X = X0 + random_sp_lie_integral(rng, n, 2) * Rat(p);
    if (det(X) == 0) continue;
    Mat g = random_sp_integral(rng, n, 2);
    Mat x = g * cayley_inv(X) * sp_inverse(g);
    const long v = vp(det(x - Mat::identity(2 * n)), p);
    if (v >= 1 && v <= vmax && top_unipotent(x, m)) return x;
  }
  throw std::logic_error("could not draw a topologically unipotent element");
}

Mat random_regular_reduction(Rng& rng, const Int& p, std::size_t n) {
  const LatticeModel m(p, n);
  for (int t = 0; t < kRetries; ++t) {
    Mat x = random_sp_integral(rng, n, 2 + static_cast<int>(rng.uniform(0, 3)));
    if (reduction_regular(x, m)) return x;
  }
  throw std::logic_error("could not draw an element with regular reduction");
}

std::vector<Lagrangian> random_lagrangians(Rng& rng, std::size_t n, std::size_t count) {
  Mat base(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) base(i, i) = 1;
  std::vector<Lagrangian> out;
  for (std::size_t k = 0; k < count; ++k) {
    if (!out.empty() && rng.uniform(0, 5) == 0)
      out.push_back(out[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(out.size()) - 1))]);
    else
      out.push_back(apply(random_sp_integral(rng, n, 1 + static_cast<int>(rng.uniform(0, 2))), Lagrangian{base}));
  }
  return out;
}

CorrespondencePair random_pair(Rng& rng, const Place& pl, int deg1, int deg2) {
  for (int t = 0; t < kRetries; ++t) {
    try {
      HClassParam g;
      if (deg1 > 0) g.prime = random_group_param(rng, random_etale(rng, pl, random_degrees(rng, pl, deg1)), 1);
      if (deg2 > 0) g.second = random_group_param(rng, random_etale(rng, pl, random_degrees(rng, pl, deg2)), 1);
      EtaleAlg all = EtaleAlg::product(g.prime.alg, g.second.alg);
      return correspond(g, random_antihermitian(rng, all));
    } catch (const std::invalid_argument&) {
    } catch (const std::domain_error&) {
    }
  }
  throw std::logic_error("could not draw a corresponding pair");
}

namespace {

// One Sp(2)-block factor over Q_p with eigenvalue datum a.
struct Block {
  EtaleFactor f;
  std::pair<Vec, Vec> a;
};

Block norm_one_block(const LocalFieldPtr& Qp, const Rat& d, const Rat& s_num, const Rat& s_den) {
  // (s_den + s_num sqrt d) / (s_den - s_num sqrt d)
  const Rat n = s_den * s_den - s_num * s_num * d;
  Block b{EtaleFactor::make_inert(Qp, Vec{d}), {Vec{(s_den * s_den + s_num * s_num * d) / n}, Vec{2 * s_num * s_den / n}}};
  return b;
}

CorrespondencePair assemble(const std::vector<Block>& b1, const std::vector<Block>& b2) {
  HClassParam g;
  auto side = [](const std::vector<Block>& bs, bool negate) {
    std::vector<EtaleFactor> fs;
    EtaleElem a, c;
    for (const auto& b : bs) {
      fs.push_back(b.f);
      auto [x, y] = b.a;
      if (negate) {
        x = b.f.ksharp->neg(x);
        y = b.f.ksharp->neg(y);
      }
      a.parts.emplace_back(x, y);
      c.parts.emplace_back(b.f.ksharp->one(), b.f.split ? b.f.ksharp->one() : b.f.ksharp->zero());
    }
    return ClassParam{1, ParamMode::Group, EtaleAlg(fs), a, c};
  };
  if (!b1.empty()) g.prime = side(b1, false);
  if (!b2.empty()) g.second = side(b2, true);  // H side carries -b''
  return correspond(g);
}

}  // namespace

CorrespondencePair regular_reduction_pair(Rng& rng, const Int& p, std::size_t n1, std::size_t n2) {
  const long pp = static_cast<long>(p.get_si());
  auto Qp = LocalField::rationals(Place::padic(p));
  const Rat n0(least_nonresidue(p));
  const LatticeModel m(p, n1 + n2);
  for (int t = 0; t < kRetries; ++t) {
    auto draw = [&]() {
      if (pp > 3 && rng.uniform(0, 2) == 0) {
        const Rat u(rng.uniform(2, pp - 2) + pp * rng.uniform(-2, 2));
        return Block{EtaleFactor::make_split(Qp), {Vec{u}, Vec{1 / u}}};
      }
      const Rat d = n0 + Rat(pp * rng.uniform(-1, 1));
      return norm_one_block(Qp, d, Rat(1), Rat(rng.uniform(1, pp - 1) + pp * rng.uniform(-1, 1)));
    };
    std::vector<Block> b1, b2;
    for (std::size_t i = 0; i < n1; ++i) b1.push_back(draw());
    for (std::size_t i = 0; i < n2; ++i) b2.push_back(draw());
    try {
      CorrespondencePair pair = assemble(b1, b2);
      if (reduction_regular(realize_standard(pair.delta), m)) return pair;
    } catch (const std::invalid_argument&) {
    } catch (const std::domain_error&) {
    }
  }
  throw std::logic_error("could not draw a regular-reduction pair");
}

CorrespondencePair compact_pair(Rng& rng, const Int& p, std::size_t n1, std::size_t n2) {
  const long pp = static_cast<long>(p.get_si());
  auto Qp = LocalField::rationals(Place::padic(p));
  const Rat n0(least_nonresidue(p));
  const LatticeModel m(p, n1 + n2);
  for (int t = 0; t < kRetries; ++t) {
    // Residue +1 on W', -1 on W'' (G side).
    auto draw = [&](bool second) {
      Block b;
      const long k = rng.uniform(1, pp - 1) * (rng.coin() ? 1 : -1);
      const long kind = rng.uniform(0, 2);
      if (kind == 0) {
        const Rat u(1 + pp * k);
        b = Block{EtaleFactor::make_split(Qp), {Vec{u}, Vec{1 / u}}};
      } else {
        const Rat d = kind == 1 ? Rat(n0 + Rat(pp * rng.uniform(-1, 1))) : Rat(Rat(pp) * (rng.coin() ? n0 : Rat(1)));
        b = norm_one_block(Qp, d, Rat(pp * k), Rat(1));
      }
      if (second) {
        b.a.first = Qp->neg(b.a.first);
        b.a.second = Qp->neg(b.a.second);
      }
      return b;
    };
    std::vector<Block> b1, b2;
    for (std::size_t i = 0; i < n1; ++i) b1.push_back(draw(false));
    for (std::size_t i = 0; i < n2; ++i) b2.push_back(draw(true));
    try {
      CorrespondencePair pair = assemble(b1, b2);
      Mat x = realize_standard(pair.delta);
      if (in_K(x, m)) return pair;
    } catch (const std::invalid_argument&) {
    } catch (const std::domain_error&) {
    }
  }
  throw std::logic_error("could not draw a compact pair");
}

CirclePoint random_circle_point(Rng& rng) {
  const Rat t = rng.rat(9, 9);
  const Rat den = 1 + t * t;
  return {(1 - t * t) / den, 2 * t / den};
}

}  // namespace mtf
