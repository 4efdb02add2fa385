// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "mtf/base_field.hpp"
#include "mtf/quadratic_form.hpp"

namespace mtf {

// One factor K_i of an etale algebra with involution: K_i^# x K_i^# with the
// swap (Split), or K_i^#(sqrt d) with sqrt d -> -sqrt d (Inert).
struct EtaleFactor {
  LocalFieldPtr ksharp;
  bool split = true;
  LocalField::Elem d;  // Inert only; a nonsquare of K_i^#

  static EtaleFactor make_split(LocalFieldPtr k);
  static EtaleFactor make_inert(LocalFieldPtr k, LocalField::Elem d);
};

// Per factor: Split -> (u, v); Inert -> (x, y) meaning x + y sqrt d.
struct EtaleElem {
  std::vector<std::pair<Vec, Vec>> parts;
  bool operator==(const EtaleElem& o) const { return parts == o.parts; }
};

class EtaleAlg {
 public:
  EtaleAlg() = default;
  explicit EtaleAlg(std::vector<EtaleFactor> factors);

  const std::vector<EtaleFactor>& factors() const { return f_; }
  std::size_t size() const { return f_.size(); }
  const Place& place() const;
  std::size_t dim_F() const;
  std::vector<std::size_t> inert_indices() const;  // I*

  EtaleElem zero() const;
  EtaleElem one() const;
  EtaleElem from_rat(const Rat& r) const;
  // Embed a tuple of K^#-elements.
  EtaleElem from_sharp(const std::vector<Vec>& t) const;
  EtaleElem sqrt_d() const;  // sqrt d_i in inert factors, (1,-1) in split ones

  EtaleElem add(const EtaleElem& a, const EtaleElem& b) const;
  EtaleElem sub(const EtaleElem& a, const EtaleElem& b) const;
  EtaleElem neg(const EtaleElem& a) const;
  EtaleElem mul(const EtaleElem& a, const EtaleElem& b) const;
  EtaleElem scale(const EtaleElem& a, const Rat& s) const;
  EtaleElem inv(const EtaleElem& a) const;
  EtaleElem pow(const EtaleElem& a, long e) const;
  EtaleElem tau(const EtaleElem& a) const;
  bool is_tau_fixed(const EtaleElem& a) const { return tau(a) == a; }
  bool is_invertible(const EtaleElem& a) const;

  std::vector<Vec> norm_to_sharp(const EtaleElem& a) const;
  std::vector<Vec> trace_to_sharp(const EtaleElem& a) const;
  // K^#-components of a tau-fixed element; throws otherwise.
  std::vector<Vec> sharp_part(const EtaleElem& a) const;
  Rat trace_to_F(const EtaleElem& a) const;
  Rat norm_to_F(const EtaleElem& a) const;

  // Coordinates on the F-basis: per factor, first slot then second slot.
  Vec coords(const EtaleElem& a) const;
  EtaleElem from_coords(const Vec& v) const;
  EtaleElem basis(std::size_t k) const;
  Mat mult_matrix(const EtaleElem& a) const;
  Poly char_poly(const EtaleElem& a) const;
  EtaleElem eval(const Poly& f, const EtaleElem& a) const;
  EtaleElem deriv_eval(const EtaleElem& a) const;  // P_a'(a)

  // prod over inert factors of (t_i, d_i) in K_i^#.
  int sgn_char(const EtaleElem& t) const;
  // A non-norm of K_i/K_i^# (element of K_i^#), for an inert factor.
  Vec non_norm(std::size_t i) const;

  // Restriction to a sub-list of factors.
  EtaleAlg sub_algebra(const std::vector<std::size_t>& idx) const;
  EtaleElem restrict(const EtaleElem& a, const std::vector<std::size_t>& idx) const;
  static EtaleAlg product(const EtaleAlg& a, const EtaleAlg& b);
  static EtaleElem concat(const EtaleElem& a, const EtaleElem& b);

 private:
  std::vector<EtaleFactor> f_;
};

enum class ParamMode { Group, Lie };

// Parameter (K/K^#, a, c) of a regular semisimple class.
struct ClassParam {
  int epsilon = -1;
  ParamMode mode = ParamMode::Group;
  EtaleAlg alg;
  EtaleElem a;
  EtaleElem c;

  void validate() const;  // throws std::invalid_argument with the failing field
  bool is_regular() const;
};

struct Realization {
  Mat gram;  // h(b_k, b_l) = tr_{K/F}(c tau(b_k) b_l)
  Mat op;    // multiplication by a
};

Realization matrix_realization(const ClassParam& param);

// Gram of x -> tr_{K^#/F}(r N_{K/K^#}(x)) on K, r a tau-fixed unit.
QForm trace_form(const EtaleAlg& alg, const EtaleElem& r);

enum class GroupKind { Sp, SOodd, SOeven, U };

bool class_exists(GroupKind kind, const ClassParam& param, const EtaleElem& c0);
std::vector<ClassParam> stable_orbit(GroupKind kind, const ClassParam& param);
// Sign vector over I* realized by c'/c for two members of one stable class.
std::vector<int> invariant_vector(const ClassParam& base, const ClassParam& other);
int kappa_pair(const std::vector<int>& inv_prime, const std::vector<int>& inv_second);

// Waldspurger normalization c_i / [K_i : F]; parameters here store c_i unscaled.
EtaleElem c_to_waldspurger(const EtaleAlg& alg, const EtaleElem& c);
EtaleElem c_from_waldspurger(const EtaleAlg& alg, const EtaleElem& c);

}  // namespace mtf
