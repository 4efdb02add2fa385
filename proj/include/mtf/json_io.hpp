// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mtf/cyclotomic.hpp"
#include "mtf/quadratic_form.hpp"
#include "mtf/symplectic.hpp"
#include "mtf/transfer.hpp"
#include "mtf/weil_character.hpp"

namespace mtf {

using Json = nlohmann::ordered_json;

// Malformed input (CLI exit code 2).
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& msg) : std::runtime_error(path + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Well-formed input violating a mathematical precondition (exit code 3).
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// "@file" reads and parses a file, anything else is parsed as a literal.
Json load_json_arg(const std::string& arg, const std::string& path);

Rat rat_from_json(const Json& j, const std::string& path);
Int int_from_json(const Json& j, const std::string& path);
Vec vec_from_json(const Json& j, const std::string& path);
Mat mat_from_json(const Json& j, const std::string& path);
Place place_from_json(const Json& j, const std::string& path);
QForm qform_from_json(const Json& j, const Place& place, const std::string& path);
LocalFieldPtr ksharp_from_json(const Json& j, const std::string& path);
EtaleAlg etale_from_json(const Json& factors, const std::string& path);
EtaleElem etale_elem_from_json(const Json& j, const EtaleAlg& alg, const std::string& path);
ClassParam param_from_json(const Json& j, const std::string& path);
// {"prime": param | null, "second": param | null, "c": [...]}; "second" holds
// the SO(2n''+1) parameter (eigenvalue datum a'').
CorrespondencePair pair_from_json(const Json& j, const std::string& path);

Json to_json(const Rat& r);
Json to_json(const Vec& v);
Json to_json(const Mat& m);
Json to_json(const QForm& q);
Json to_json(const WittClass& w);
Json to_json(const CycNum& z);
Json to_json(Mu8 m);
Json to_json(const LocalField& k);
Json to_json(const EtaleAlg& alg);
Json to_json(const EtaleElem& a);
Json to_json(const ClassParam& q);
Json to_json(const CorrespondencePair& pair);
Json to_json(const Lagrangian& l);

}  // namespace mtf
