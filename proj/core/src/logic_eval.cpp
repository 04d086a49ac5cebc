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

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "everett/logic.hpp"
#include "everett/parallel.hpp"
#include "everett/transition.hpp"

namespace everett {

TruthValue TruthValue::point(double v) {
  if (!std::isfinite(v)) {
    throw Error("truth values must be finite");
  }
  v = std::clamp(v, 0.0, 1.0);
  return TruthValue(v, v);
}

TruthValue TruthValue::interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error("truth values must be finite");
  }
  lo = std::clamp(lo, 0.0, 1.0);
  hi = std::clamp(hi, 0.0, 1.0);
  if (lo > hi) {
    throw Error("inverted truth interval");
  }
  return TruthValue(lo, hi);
}

TruthValue truth_not(const TruthValue& a) {
  return TruthValue::interval(1.0 - a.hi(), 1.0 - a.lo());
}

namespace {

// Outward rounding for bounds that went through float arithmetic.
double round_down(double x) { return std::max(0.0, x - kOutwardRounding); }
double round_up(double x) { return std::min(1.0, x + kOutwardRounding); }

}  // namespace

TruthValue truth_and(const TruthValue& a, const TruthValue& b) {
  const double lo = round_down(std::max(0.0, a.lo() + b.lo() - 1.0));
  const double hi = std::min(a.hi(), b.hi());
  return TruthValue::interval(lo, hi);
}

TruthValue truth_or(const TruthValue& a, const TruthValue& b) {
  const double lo = std::max(a.lo(), b.lo());
  const double hi = round_up(std::min(1.0, a.hi() + b.hi()));
  return TruthValue::interval(lo, hi);
}

namespace {

// Negation normal form: NOT is pushed onto the atoms, so double negation and
// De Morgan identities hold exactly rather than up to float rounding.
struct Literal {
  std::string label;
  double time = 0.0;
  bool positive = true;
};

struct NnfNode {
  enum class Kind { literal, conjunction, disjunction };
  Kind kind = Kind::literal;
  Literal literal;
  std::unique_ptr<NnfNode> lhs;
  std::unique_ptr<NnfNode> rhs;
};

std::unique_ptr<NnfNode> to_nnf(const Proposition& p, bool negated) {
  auto node = std::make_unique<NnfNode>();
  switch (p.kind()) {
    case Proposition::Kind::atom:
      node->kind = NnfNode::Kind::literal;
      node->literal = Literal{p.label(), p.time(), !negated};
      return node;
    case Proposition::Kind::negation:
      return to_nnf(p.child(), !negated);
    case Proposition::Kind::conjunction:
      node->kind = negated ? NnfNode::Kind::disjunction : NnfNode::Kind::conjunction;
      break;
    case Proposition::Kind::disjunction:
      node->kind = negated ? NnfNode::Kind::conjunction : NnfNode::Kind::disjunction;
      break;
  }
  node->lhs = to_nnf(p.left(), negated);
  node->rhs = to_nnf(p.right(), negated);
  return node;
}

class Evaluator {
 public:
  Evaluator(const Scenario& sc, const Context& ctx) : sc_(sc), ctx_(ctx) {}

  TruthValue eval(const NnfNode& node) const {
    if (node.kind == NnfNode::Kind::literal) {
      return eval_literal(node.literal);
    }
    const TruthValue a = eval(*node.lhs);
    const TruthValue b = eval(*node.rhs);
    const bool conjunction = node.kind == NnfNode::Kind::conjunction;

    // Same-time literals with distinct labels are mutually exclusive
    // outcomes; with point operands the compound is exact, not an interval.
    if (node.lhs->kind == NnfNode::Kind::literal &&
        node.rhs->kind == NnfNode::Kind::literal) {
      const Literal& p = node.lhs->literal;
      const Literal& q = node.rhs->literal;
      if (p.time == q.time && p.label != q.label && p.positive == q.positive &&
          a.is_point() && b.is_point()) {
        if (p.positive) {
          return conjunction ? TruthValue::point(0.0)
                             : TruthValue::point(std::min(1.0, a.value() + b.value()));
        }
        return conjunction ? TruthValue::point(std::max(0.0, a.value() + b.value() - 1.0))
                           : TruthValue::point(1.0);
      }
    }
    return conjunction ? truth_and(a, b) : truth_or(a, b);
  }

 private:
  TruthValue eval_literal(const Literal& lit) const {
    if (!sc_.basis().index_of(lit.label)) {
      throw EvaluationError("unknown experience label '" + lit.label + "'");
    }
    if (lit.time > ctx_.t) {
      const double p =
          transition_probability(sc_, {ctx_.branch_label, ctx_.t, lit.label, lit.time});
      return TruthValue::point(lit.positive ? p : 1.0 - p);
    }
    // Past or present: fixed by records when the scenario keeps them,
    // undetermined otherwise.
    sc_.check_time(lit.time);
    if (sc_.is_circuit() && sc_.has_records()) {
      const std::size_t j = sc_.grid_index(lit.time);
      if (auto implied = sc_.recorded_label(ctx_.branch_label, j)) {
        const double p = (*implied == lit.label) ? 1.0 : 0.0;
        return TruthValue::point(lit.positive ? p : 1.0 - p);
      }
    }
    return TruthValue::undetermined();
  }

  const Scenario& sc_;
  const Context& ctx_;
};

void require_live_context(const Scenario& sc, const std::string& branch, double t) {
  const auto idx = sc.basis().index_of(branch);
  if (!idx) {
    throw EvaluationError("unknown context branch '" + branch + "'");
  }
  const BranchDecomposition d = branches_at(sc, t);
  if (d.entry(*idx).weight <= kBranchEpsilon) {
    throw EvaluationError("dead context branch: '" + branch + "' has no weight at t = " +
                          std::to_string(t));
  }
}

}  // namespace

TruthValue evaluate(const Proposition& p, const Scenario& sc, const Context& ctx) {
  require_live_context(sc, ctx.branch_label, ctx.t);
  const auto nnf = to_nnf(p, false);
  return Evaluator(sc, ctx).eval(*nnf);
}

std::vector<TruthValue> truth_profile(const Proposition& p, const Scenario& sc,
                                      const std::string& branch,
                                      const std::vector<double>& times) {
  for (double t : times) {
    require_live_context(sc, branch, t);
  }
  std::vector<TruthValue> out(times.size(), TruthValue::undetermined());
  parallel_for(times.size(), [&](std::size_t i) {
    out[i] = evaluate(p, sc, Context{branch, times[i]});
  });
  return out;
}

}  // namespace everett
