// Copyright 2026 The Everett Simulator Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "everett/scenario.hpp"

namespace everett {

/// Width at or below which a truth value counts as a point.
inline constexpr double kPointTol = 1e-12;
/// Outward rounding applied to computed interval bounds so containment
/// invariants survive float error.
inline constexpr double kOutwardRounding = 1e-15;

/// A closed subinterval of [0,1]. A point when exact; [0,1] when the truth
/// of a statement is undetermined by its context.
class TruthValue {
 public:
  static TruthValue point(double v);
  static TruthValue interval(double lo, double hi);
  static TruthValue undetermined() { return interval(0.0, 1.0); }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_point() const { return hi_ - lo_ <= kPointTol; }
  double value() const { return 0.5 * (lo_ + hi_); }

  bool contains(const TruthValue& inner) const {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }

  friend bool operator==(const TruthValue& a, const TruthValue& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  TruthValue(double lo, double hi) : lo_(lo), hi_(hi) {}
  double lo_ = 0.0;
  double hi_ = 1.0;
};

/// Complement: [1-hi, 1-lo].
TruthValue truth_not(const TruthValue& a);
/// Frechet bounds for a conjunction: [max(0, lo_a+lo_b-1), min(hi_a, hi_b)],
/// computed bounds rounded outward.
TruthValue truth_and(const TruthValue& a, const TruthValue& b);
/// Frechet bounds for a disjunction: [max(lo_a, lo_b), min(1, hi_a+hi_b)].
TruthValue truth_or(const TruthValue& a, const TruthValue& b);

/// Immutable AST of experience atoms and NOT/AND/OR connectives.
class Proposition {
 public:
  enum class Kind { atom, negation, conjunction, disjunction };

  static Proposition atom(std::string label, double time);
  static Proposition negation(Proposition p);
  static Proposition conjunction(Proposition lhs, Proposition rhs);
  static Proposition disjunction(Proposition lhs, Proposition rhs);

  Kind kind() const;
  const std::string& label() const;  // atom only
  double time() const;               // atom only
  const Proposition& child() const;  // negation only
  const Proposition& left() const;   // conjunction/disjunction
  const Proposition& right() const;

  friend bool operator==(const Proposition& a, const Proposition& b);

 private:
  struct Node;
  explicit Proposition(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Concrete syntax:
///   prop  := or
///   or    := and ("OR" and)*
///   and   := unary ("AND" unary)*
///   unary := "NOT" unary | "(" prop ")" | atom
///   atom  := "X" "(" label "," time ")"
/// NOT binds tighter than AND, AND tighter than OR; AND/OR associate left.
/// Labels are bare identifiers ([A-Za-z_][A-Za-z0-9_@]*) or double-quoted
/// strings; times are decimal literals. Throws SyntaxError with a 1-based
/// column on malformed or empty input.
Proposition parse_proposition(const std::string& text);

/// Canonical text form; parses back to an equal AST.
std::string to_string(const Proposition& p);

/// Who is speaking and when: the branch the utterer experiences, and the
/// utterance time.
struct Context {
  std::string branch_label;
  double t = 0.0;
};

/// Degree-of-truth evaluation.
///  - Atom with s > t: the point transition probability from the context.
///  - Atom with s <= t: 0/1 point via the scenario's record map, or [0,1]
///    when no records exist.
///  - Connectives: Frechet intervals, except that same-time atoms with
///    distinct labels (mutually exclusive outcomes) combine exactly.
/// The context branch must be live at t.
TruthValue evaluate(const Proposition& p, const Scenario& sc, const Context& ctx);

/// evaluate() at each utterance time, fixed proposition and branch; output
/// aligned with `times`.
std::vector<TruthValue> truth_profile(const Proposition& p, const Scenario& sc,
                                      const std::string& branch,
                                      const std::vector<double>& times);

}  // namespace everett
