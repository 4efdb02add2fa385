// SPDX-License-Identifier: Apache-2.0
// Acceptance gate: one line per criterion, exit status 0 iff all pass.
#include <cstdio>
#include <string>
#include <vector>

#include "mtf/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Item {
  const char* check;
  std::size_t trials;
};

struct Criterion {
  int id;
  const char* title;
  std::vector<Item> items;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {1, "Hilbert symbol vs conic solvability mod p^3, p in {3,5,7,11}",
       {{"hilbert/conic-oracle", 200}}},
      {2, "Weil index axioms in mu8 at 3, 5, 7, 11 and R",
       {{"weil/witt-invariance", 200}, {"weil/additivity", 200}, {"weil/hyperbolic", 200}, {"weil/product-rule", 200}}},
      {3, "global reciprocity of Hilbert symbols and Weil indices",
       {{"product-formula/hilbert", 100}, {"product-formula/weil", 100}}},
      {4, "trace lemmas: dual basis and closed forms of q1, q2",
       {{"calcul-qx/dual-basis", 100}, {"calcul-qx/trace-forms", 150}}},
      {5, "gamma(q[X]) from the Gram matrix equals the closed form",
       {{"calcul-qx/keystone", 100}, {"calcul-qx/keystone-real", 50}}},
      {6, "lattice character: unimodular, -1, regular reduction, keystone",
       {{"theta/unimodular", 50},
        {"theta/minus-one", 9},
        {"theta/regular-reduction", 50},
        {"theta/keystone", 50},
        {"theta/enumeration", 50}}},
      {7, "Maslov dimension, dihedral and chain coherence, Sp(4,Q_3) cocycle",
       {{"maslov/dimension", 100}, {"maslov/dihedral", 100}, {"maslov/chain", 100}, {"maslov/cocycle", 100}}},
      {8, "Delta_0: reciprocity, triviality, parabolic descent, Delta_R, product formula",
       {{"delta0/reciprocity", 100},
        {"delta0/trivial", 50},
        {"delta0/parabolic", 50},
        {"delta0/real", 50},
        {"product-formula/delta0", 50}}},
      {9, "reciprocity lemmas (Lie, group) and the Mobius identity",
       {{"reciprocity/lie", 100}, {"reciprocity/group", 100}, {"reciprocity/mobius", 100}}},
      {10, "normalization on regular reduction, kappa on compact c''-twists",
       {{"delta0/normalization", 24}, {"delta0/compact", 24}}},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  bool verbose = argc > 1 && std::string(argv[1]) == "-v";
  int red = 0;
  for (const auto& cr : criteria()) {
    bool ok = true;
    std::string detail;
    for (const auto& it : cr.items) {
      mtf::verify::RunConfig cfg;
      cfg.seed = kSeed;
      cfg.trials = it.trials;
      const auto r = mtf::verify::run_check(it.check, cfg);
      ok = ok && r.passed();
      detail += " " + std::string(it.check) + " trials=" + std::to_string(r.trials) +
                " failures=" + std::to_string(r.failures.size()) + ";";
      if (verbose || !r.passed()) {
        for (const auto& f : r.failures) std::fprintf(stderr, "  %s trial %zu: %s\n", it.check, f.trial, f.message.c_str());
      }
    }
    if (!ok) ++red;
    std::printf("%s criterion %d: %s [%s ]\n", ok ? "PASS" : "FAIL", cr.id, cr.title, detail.c_str());
    std::fflush(stdout);
  }
  return red == 0 ? 0 : 1;
}
