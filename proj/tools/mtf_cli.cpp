// SPDX-License-Identifier: Apache-2.0
// mtf: command-line front end. Every command prints JSON lines on stdout.
// Exit codes: 0 ok, 1 a verification check failed, 2 malformed input,
// 3 precondition violation.
#include <CLI11.hpp>
#include <iostream>

#include "mtf/json_io.hpp"
#include "mtf/symplectic.hpp"
#include "mtf/transfer.hpp"
#include "mtf/verify.hpp"
#include "mtf/weil_character.hpp"

using namespace mtf;

namespace {

Json scalar_arg(const std::string& s) {
  if (!s.empty() && s[0] == '@') return load_json_arg(s, "");
  return Json(s);
}

Place parse_place(const std::string& s, const std::string& path) {
  if (s == "real") return Place::real();
  Int p = int_from_json(Json(s), path);
  if (!p.fits_slong_p()) throw SchemaError(path, "prime too large");
  return place_from_json(Json(p.get_si()), path);
}

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

int run_verify(const std::string& suite, const verify::RunConfig& cfg, bool json) {
  bool ok = true;
  for (const auto& name : verify::check_names(suite)) {
    verify::CheckResult r = verify::run_check(name, cfg);
    ok = ok && r.passed();
    if (json)
      emit(verify::to_json(r, cfg.timing));
    else
      std::cout << verify::table_line(r, cfg.timing) << '\n';
    std::cout.flush();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact local invariants for metaplectic transfer factors"};
  app.require_subcommand(1);

  std::string p_s, a_s, b_s, form_s, matrix_s, pair_s, param_s, lag_s, mode = "lattice";
  std::size_t n = 1;

  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v over Q_v");
  hil->add_option("--p", p_s, "odd prime or 'real'")->required();
  hil->add_option("--a", a_s)->required();
  hil->add_option("--b", b_s)->required();

  auto* weil = app.add_subcommand("weil", "Weil index and Witt class of a quadratic form");
  weil->add_option("--p", p_s, "odd prime or 'real'")->required();
  weil->add_option("--form", form_s, "{\"diag\":[...]} or {\"gram\":[[...]]}, inline or @file")->required();

  auto* mas = app.add_subcommand("maslov", "Maslov form of a tuple of lagrangians in the standard symplectic space");
  mas->add_option("--p", p_s, "odd prime or 'real'")->required();
  mas->add_option("--lagrangians", lag_s, "[basis, ...], each a 2n x n matrix")->required();

  auto* th = app.add_subcommand("theta", "lattice-model character Theta(x) for x in Sp(2n, Z_p)");
  th->add_option("--p", p_s)->required();
  th->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  th->add_option("--matrix", matrix_s)->required();
  th->add_option("--mode", mode)->check(CLI::IsMember({"lattice", "cayley", "ratio"}));

  auto* qx = app.add_subcommand("qx", "Weil index of q[X] from the Gram matrix and the closed form");
  qx->add_option("--param", param_s, "Lie parameter with epsilon = -1")->required();

  auto* d0 = app.add_subcommand("delta0", "elementary sign Delta_0 of a corresponding pair");
  d0->add_option("--pair", pair_s)->required();

  auto* tr = app.add_subcommand("transfer", "Delta = Delta_0 Delta' Delta'' in the lattice model");
  tr->add_option("--p", p_s)->required();
  tr->add_option("--pair", pair_s)->required();
  tr->add_option("--matrix", matrix_s, "element of K realizing the pair; default block realization");

  std::string suite;
  verify::RunConfig cfg;
  bool json = false;
  auto* ver = app.add_subcommand("verify", "seeded verification suites");
  std::vector<std::string> suites = verify::suite_names();
  suites.push_back("all");
  ver->add_option("suite", suite)->required()->check(CLI::IsMember(suites));
  ver->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  ver->add_option("--seed", cfg.seed);
  ver->add_option("--threads", cfg.threads, "0: hardware concurrency");
  ver->add_flag("--json", json, "JSON lines instead of a table");
  ver->add_flag("--timing", cfg.timing, "include wall time (reports are then not byte-stable)");

  auto* list = app.add_subcommand("list", "list checks of a suite");
  std::string list_suite = "all";
  list->add_option("suite", list_suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*hil) {
      const Place pl = parse_place(p_s, "p");
      const Rat a = rat_from_json(scalar_arg(a_s), "a"), b = rat_from_json(scalar_arg(b_s), "b");
      if (a == 0) throw PreconditionError("a", "must be nonzero");
      if (b == 0) throw PreconditionError("b", "must be nonzero");
      emit({{"value", hilbert(a, b, pl)}});
    } else if (*weil) {
      const Place pl = parse_place(p_s, "p");
      QForm q = qform_from_json(load_json_arg(form_s, "form"), pl, "form");
      emit({{"gamma", to_json(weil_index(q, PsiSpec(pl)))}, {"witt", to_json(witt_class(q))}});
    } else if (*mas) {
      const Place pl = parse_place(p_s, "p");
      Json arr = load_json_arg(lag_s, "lagrangians");
      if (!arr.is_array() || arr.size() < 3) throw SchemaError("lagrangians", "expected an array of at least 3 bases");
      std::vector<Lagrangian> ls;
      Mat omega;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "lagrangians[" + std::to_string(i) + "]";
        Mat basis = mat_from_json(arr[i], path);
        if (i == 0) omega = std_J(basis.rows() / 2);
        if (basis.rows() != omega.rows() || basis.rows() % 2) throw PreconditionError(path, "expected a 2n x n matrix");
        try {
          ls.push_back(lagrangian_from(basis, omega));
        } catch (const std::invalid_argument& e) {
          throw PreconditionError(path, e.what());
        }
      }
      QForm q = maslov_form(ls, omega, pl);
      emit({{"form", to_json(q)}, {"witt", to_json(witt_class(q))}, {"dim", maslov_dim(ls, omega)}});
    } else if (*th) {
      const Place pl = parse_place(p_s, "p");
      if (pl.is_real()) throw PreconditionError("p", "the lattice model needs an odd prime");
      Mat x = mat_from_json(load_json_arg(matrix_s, "matrix"), "matrix");
      if (x.rows() != 2 * n || x.cols() != 2 * n) throw PreconditionError("matrix", "expected a 2n x 2n matrix");
      const LatticeModel m(pl.p(), n);
      try {
        if (mode == "ratio") {
          emit({{"holds", theta_ratio_check(x, m)}});
        } else {
          ThetaVal v = mode == "cayley" ? theta_via_cayley(x, m) : theta_lattice(x, m);
          emit({{"value", to_json(v.value)}, {"terms", v.terms}, {"det_minus_val", v.det_minus_val}});
        }
      } catch (const std::invalid_argument& e) {
        throw PreconditionError("matrix", e.what());
      } catch (const std::domain_error& e) {
        throw PreconditionError("matrix", e.what());
      }
    } else if (*qx) {
      ClassParam q = param_from_json(load_json_arg(param_s, "param"), "param");
      CalculQX r;
      try {
        r = calcul_qx(q);
      } catch (const std::invalid_argument& e) {
        throw PreconditionError("param", e.what());
      }
      emit({{"gram_side", to_json(r.gram_side)}, {"closed_form", to_json(r.closed_form)}, {"holds", r.holds()}});
    } else if (*d0) {
      CorrespondencePair pair = pair_from_json(load_json_arg(pair_s, "pair"), "pair");
      int v;
      try {
        v = delta0(pair);
      } catch (const std::domain_error& e) {
        throw PreconditionError("pair", e.what());
      }
      emit({{"value", v}});
    } else if (*tr) {
      const Place pl = parse_place(p_s, "p");
      if (pl.is_real()) throw PreconditionError("p", "the lattice model needs an odd prime");
      CorrespondencePair pair = pair_from_json(load_json_arg(pair_s, "pair"), "pair");
      const LatticeModel m(pl.p(), pair.gamma.datum().n1 + pair.gamma.datum().n2);
      FullDelta fd;
      try {
        if (matrix_s.empty())
          fd = full_delta(pair, m);
        else
          fd = full_delta(pair, mat_from_json(load_json_arg(matrix_s, "matrix"), "matrix"), m);
      } catch (const std::invalid_argument& e) {
        throw PreconditionError(matrix_s.empty() ? "pair" : "matrix", e.what());
      } catch (const std::domain_error& e) {
        throw PreconditionError(matrix_s.empty() ? "pair" : "matrix", e.what());
      }
      emit({{"value", to_json(fd.value)},
            {"delta0", fd.delta0},
            {"theta", to_json(fd.theta)},
            {"theta_abs2", to_json(fd.theta_abs2)},
            {"gamma_second", to_json(fd.gamma_second)}});
    } else if (*ver) {
      return run_verify(suite, cfg, json);
    } else if (*list) {
      for (const auto& c : verify::check_names(list_suite)) std::cout << c << '\n';
    }
  } catch (const SchemaError& e) {
    std::cerr << Json{{"error", "schema"}, {"path", e.path()}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << Json{{"error", "precondition"}, {"path", e.path()}, {"message", e.what()}}.dump() << '\n';
    return 3;
  }
  return 0;
}
