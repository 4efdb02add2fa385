// SPDX-License-Identifier: Apache-2.0
#include "mtf/json_io.hpp"

#include <fstream>
#include <sstream>

namespace mtf {
namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(path, key), "missing");
  return *it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

// Runs f, turning invalid_argument / domain_error into a PreconditionError.
// Messages of the form "field: text" extend the path by that field.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    auto colon = msg.find(": ");
    if (colon != std::string::npos && msg.find(' ') > colon && colon > 0)
      throw PreconditionError(at(path, msg.substr(0, colon)), msg.substr(colon + 2));
    throw PreconditionError(path, msg);
  } catch (const std::domain_error& e) {
    throw PreconditionError(path, e.what());
  }
}

Json int_json(const Int& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

}  // namespace

Json load_json_arg(const std::string& arg, const std::string& path) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw SchemaError(path, "cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path, std::string("malformed JSON: ") + e.what());
  }
}

Rat rat_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (!j.is_string()) throw SchemaError(path, "expected an integer or a \"num/den\" string");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

Int int_from_json(const Json& j, const std::string& path) {
  Rat r = rat_from_json(j, path);
  if (r.get_den() != 1) throw SchemaError(path, "expected an integer");
  return r.get_num();
}

Vec vec_from_json(const Json& j, const std::string& path) {
  Vec v;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) v.push_back(rat_from_json(j[i], at(path, i)));
  return v;
}

Mat mat_from_json(const Json& j, const std::string& path) {
  array(j, path);
  if (j.empty()) throw SchemaError(path, "empty matrix");
  const std::size_t cols = array(j[0], at(path, 0)).size();
  Mat m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    Vec row = vec_from_json(j[i], at(path, i));
    if (row.size() != cols) throw SchemaError(at(path, i), "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
  }
  return m;
}

Place place_from_json(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "real") return Place::real();
  Int p = int_from_json(j, path);
  return guarded(path, [&] { return Place::padic(p); });
}

QForm qform_from_json(const Json& j, const Place& place, const std::string& path) {
  if (j.is_object() && j.contains("diag")) {
    Vec d = vec_from_json(j["diag"], at(path, "diag"));
    return guarded(at(path, "diag"), [&] { return QForm::diagonal(place, d); });
  }
  if (j.is_object() && j.contains("gram")) {
    Mat g = mat_from_json(j["gram"], at(path, "gram"));
    return guarded(at(path, "gram"), [&] { return QForm(place, g); });
  }
  throw SchemaError(path, "expected {\"diag\": [...]} or {\"gram\": [[...]]}");
}

LocalFieldPtr ksharp_from_json(const Json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "real") return LocalField::rationals(Place::real());
  const Place pl = place_from_json(member(j, "p", path), at(path, "p"));
  if (!j.contains("f_poly") && !j.contains("e_poly")) return LocalField::rationals(pl);
  std::vector<Int> f;
  const Json& fj = member(j, "f_poly", path);
  for (std::size_t i = 0; i < array(fj, at(path, "f_poly")).size(); ++i) f.push_back(int_from_json(fj[i], at(at(path, "f_poly"), i)));
  std::vector<Vec> e;
  const Json& ej = member(j, "e_poly", path);
  for (std::size_t i = 0; i < array(ej, at(path, "e_poly")).size(); ++i) {
    const std::string pi = at(at(path, "e_poly"), i);
    e.push_back(ej[i].is_array() ? vec_from_json(ej[i], pi) : Vec{rat_from_json(ej[i], pi)});
  }
  return guarded(path, [&] { return LocalField::tower(pl.p(), f, e); });
}

namespace {

LocalField::Elem sharp_from_json(const Json& j, const LocalField& k, const std::string& path) {
  if (!j.is_array()) {
    if (k.degree() != 1) throw SchemaError(path, "expected " + std::to_string(k.degree()) + " coordinates");
    return k.from_rat(rat_from_json(j, path));
  }
  Vec v = vec_from_json(j, path);
  if (v.size() != k.degree()) throw SchemaError(path, "expected " + std::to_string(k.degree()) + " coordinates");
  return v;
}

}  // namespace

EtaleAlg etale_from_json(const Json& factors, const std::string& path) {
  std::vector<EtaleFactor> fs;
  for (std::size_t i = 0; i < array(factors, path).size(); ++i) {
    const std::string fp = at(path, i);
    const Json& fj = factors[i];
    LocalFieldPtr k = ksharp_from_json(member(fj, "ksharp", fp), at(fp, "ksharp"));
    const Json& kind = member(fj, "kind", fp);
    if (kind.is_string() && kind.get<std::string>() == "split") {
      fs.push_back(EtaleFactor::make_split(k));
    } else if (kind.is_object() && kind.contains("inert")) {
      auto d = sharp_from_json(kind["inert"], *k, at(at(fp, "kind"), "inert"));
      fs.push_back(guarded(at(at(fp, "kind"), "inert"), [&] { return EtaleFactor::make_inert(k, d); }));
    } else {
      throw SchemaError(at(fp, "kind"), "expected \"split\" or {\"inert\": d}");
    }
  }
  return guarded(path, [&] { return EtaleAlg(std::move(fs)); });
}

EtaleElem etale_elem_from_json(const Json& j, const EtaleAlg& alg, const std::string& path) {
  array(j, path);
  if (j.size() != alg.size()) throw SchemaError(path, "expected " + std::to_string(alg.size()) + " factor entries");
  EtaleElem z;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ip = at(path, i);
    if (!j[i].is_array() || j[i].size() != 2) throw SchemaError(ip, "expected a pair [first, second]");
    const LocalField& k = *alg.factors()[i].ksharp;
    z.parts.emplace_back(sharp_from_json(j[i][0], k, at(ip, 0)), sharp_from_json(j[i][1], k, at(ip, 1)));
  }
  return z;
}

ClassParam param_from_json(const Json& j, const std::string& path) {
  ClassParam q;
  const Json& eps = member(j, "epsilon", path);
  if (!eps.is_number_integer()) throw SchemaError(at(path, "epsilon"), "expected +1 or -1");
  q.epsilon = eps.get<int>();
  const Json& mode = member(j, "mode", path);
  if (mode == "group")
    q.mode = ParamMode::Group;
  else if (mode == "lie")
    q.mode = ParamMode::Lie;
  else
    throw SchemaError(at(path, "mode"), "expected \"group\" or \"lie\"");
  q.alg = etale_from_json(member(j, "factors", path), at(path, "factors"));
  q.a = etale_elem_from_json(member(j, "a", path), q.alg, at(path, "a"));
  q.c = etale_elem_from_json(member(j, "c", path), q.alg, at(path, "c"));
  guarded(path, [&] {
    q.validate();
    return 0;
  });
  return q;
}

CorrespondencePair pair_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  HClassParam g;
  if (j.contains("prime") && !j["prime"].is_null()) g.prime = param_from_json(j["prime"], at(path, "prime"));
  if (j.contains("second") && !j["second"].is_null()) g.second = param_from_json(j["second"], at(path, "second"));
  if (g.prime.alg.size() == 0 && g.second.alg.size() == 0) throw SchemaError(path, "both sides empty");
  std::optional<EtaleElem> c;
  if (j.contains("c")) c = etale_elem_from_json(j["c"], EtaleAlg::product(g.prime.alg, g.second.alg), at(path, "c"));
  return guarded(path, [&] { return correspond(g, c); });
}

Json to_json(const Rat& r) { return Json(to_string(r)); }

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const Mat& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const QForm& q) { return Json{{"gram", to_json(q.gram())}}; }

Json to_json(const WittClass& w) {
  Json j{{"rank", w.rank}, {"det", to_string(w.det)}, {"hasse", w.hasse}};
  if (w.place.is_real()) j["signature"] = w.signature;
  return j;
}

Json to_json(const CycNum& z) {
  Rat r;
  if (z.level() != 1 && z.is_rational(&r)) return to_json(CycNum(r));
  Json coeffs = Json::object();
  for (std::size_t k = 0; k < z.coeffs().size(); ++k)
    if (z.coeffs()[k] != 0) coeffs[std::to_string(k)] = to_string(z.coeffs()[k]);
  return Json{{"level", z.level()}, {"coeffs", coeffs}};
}

Json to_json(Mu8 m) { return Json{{"zeta8", m.k}}; }

Json to_json(const LocalField& k) {
  switch (k.kind()) {
    case LocalField::Kind::Real: return "real";
    case LocalField::Kind::Complex: return "complex";
    case LocalField::Kind::Padic: break;
  }
  Json j{{"p", int_json(k.place().p())}};
  if (k.degree() > 1) {
    Json f = Json::array();
    for (const auto& c : k.unram_poly()) f.push_back(int_json(c));
    Json e = Json::array();
    for (const auto& c : k.eisenstein_poly()) e.push_back(to_json(c));
    j["f_poly"] = f;
    j["e_poly"] = e;
  }
  return j;
}

namespace {

Json sharp_json(const Vec& v) { return v.size() == 1 ? to_json(v[0]) : to_json(v); }

}  // namespace

Json to_json(const EtaleAlg& alg) {
  Json a = Json::array();
  for (const auto& f : alg.factors()) {
    Json kind = f.split ? Json("split") : Json{{"inert", sharp_json(f.d)}};
    a.push_back(Json{{"ksharp", to_json(*f.ksharp)}, {"kind", kind}});
  }
  return a;
}

Json to_json(const EtaleElem& z) {
  Json a = Json::array();
  for (const auto& [u, v] : z.parts) a.push_back(Json::array({sharp_json(u), sharp_json(v)}));
  return a;
}

Json to_json(const ClassParam& q) {
  return Json{{"epsilon", q.epsilon},
              {"mode", q.mode == ParamMode::Group ? "group" : "lie"},
              {"factors", to_json(q.alg)},
              {"a", to_json(q.a)},
              {"c", to_json(q.c)}};
}

Json to_json(const CorrespondencePair& pair) {
  Json j;
  j["prime"] = pair.gamma.prime.alg.size() ? to_json(pair.gamma.prime) : Json(nullptr);
  j["second"] = pair.gamma.second.alg.size() ? to_json(pair.gamma.second) : Json(nullptr);
  j["c"] = to_json(pair.delta.c);
  return j;
}

Json to_json(const Lagrangian& l) { return to_json(l.basis); }

}  // namespace mtf
