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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "everett/scenario.hpp"

namespace everett {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw ValidationError("schema", path + ": " + message);
}

const json& require(const json& node, const char* key, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  auto it = node.find(key);
  if (it == node.end()) schema_error(path, "missing field '" + std::string(key) + "'");
  return *it;
}

double read_number(const json& node, const std::string& path) {
  if (!node.is_number()) schema_error(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) {
    throw ValidationError("finiteness", path + ": NaN/Inf is not accepted");
  }
  return v;
}

Complex read_complex(const json& node, const std::string& path) {
  if (!node.is_array() || node.size() != 2) {
    schema_error(path, "expected a [re, im] pair");
  }
  return Complex(read_number(node[0], path + "[0]"), read_number(node[1], path + "[1]"));
}

Eigen::VectorXcd read_complex_vector(const json& node, Index expected, const std::string& path) {
  if (!node.is_array()) schema_error(path, "expected an array of [re, im] pairs");
  if (static_cast<Index>(node.size()) != expected) {
    schema_error(path, "expected " + std::to_string(expected) + " entries, got " +
                           std::to_string(node.size()));
  }
  Eigen::VectorXcd v(expected);
  for (Index i = 0; i < expected; ++i) {
    v(i) = read_complex(node[static_cast<std::size_t>(i)],
                        path + "[" + std::to_string(i) + "]");
  }
  return v;
}

// Flat row-major [re, im] list of length dim*dim.
Eigen::MatrixXcd read_complex_matrix(const json& node, Index dim, const std::string& path) {
  Eigen::VectorXcd flat = read_complex_vector(node, dim * dim, path);
  Eigen::MatrixXcd m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      m(r, c) = flat(r * dim + c);
    }
  }
  return m;
}

std::vector<Index> read_dims(const json& node, const std::string& path) {
  if (!node.is_array() || node.empty()) {
    schema_error(path, "expected a nonempty array of positive integers");
  }
  std::vector<Index> dims;
  dims.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    const json& d = node[i];
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      schema_error(path + "[" + std::to_string(i) + "]", "expected a positive integer");
    }
    dims.push_back(static_cast<Index>(d.get<long long>()));
  }
  return dims;
}

Dynamics read_dynamics(const json& node, const std::vector<Index>& dims, Index total) {
  if (!node.is_object()) schema_error("dynamics", "expected an object");
  const bool has_h = node.contains("hamiltonian");
  const bool has_steps = node.contains("steps");
  if (has_h == has_steps) {
    schema_error("dynamics", "exactly one of 'hamiltonian' or 'steps' is required");
  }
  if (has_h) {
    return HamiltonianDynamics{
        HermitianOperator(read_complex_matrix(node["hamiltonian"], total, "dynamics.hamiltonian"))};
  }

  CircuitDynamics circuit;
  circuit.dt = read_number(require(node, "dt", "dynamics"), "dynamics.dt");
  const json& steps = node["steps"];
  if (!steps.is_array()) schema_error("dynamics.steps", "expected an array");
  circuit.steps.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string path = "dynamics.steps[" + std::to_string(i) + "]";
    const json& step = steps[i];
    const json& targets_node = require(step, "targets", path);
    if (!targets_node.is_array() || targets_node.empty()) {
      schema_error(path + ".targets", "expected a nonempty array of factor indices");
    }
    std::vector<int> targets;
    Index gate_dim = 1;
    for (std::size_t j = 0; j < targets_node.size(); ++j) {
      const json& t = targets_node[j];
      if (!t.is_number_integer()) {
        schema_error(path + ".targets[" + std::to_string(j) + "]", "expected an integer");
      }
      const long long f = t.get<long long>();
      if (f < 0 || f >= static_cast<long long>(dims.size())) {
        schema_error(path + ".targets[" + std::to_string(j) + "]",
                     "factor index out of range");
      }
      targets.push_back(static_cast<int>(f));
      gate_dim *= dims[static_cast<std::size_t>(f)];
    }
    Eigen::MatrixXcd u = read_complex_matrix(require(step, "unitary", path), gate_dim,
                                             path + ".unitary");
    circuit.steps.push_back(DenseGate{std::move(u), std::move(targets)});
  }
  return circuit;
}

ExperienceBasis read_basis(const json& node, Index dim_s) {
  const json& labels_node = require(node, "labels", "basis");
  if (!labels_node.is_array()) schema_error("basis.labels", "expected an array of strings");
  if (static_cast<Index>(labels_node.size()) != dim_s) {
    schema_error("basis.labels", "expected " + std::to_string(dim_s) + " labels, got " +
                                     std::to_string(labels_node.size()));
  }
  std::vector<std::string> labels;
  labels.reserve(labels_node.size());
  for (std::size_t i = 0; i < labels_node.size(); ++i) {
    if (!labels_node[i].is_string()) {
      schema_error("basis.labels[" + std::to_string(i) + "]", "expected a string");
    }
    labels.push_back(labels_node[i].get<std::string>());
  }
  if (!node.contains("vectors")) {
    return ExperienceBasis::computational(std::move(labels));
  }
  const json& vectors_node = node["vectors"];
  if (!vectors_node.is_array() || static_cast<Index>(vectors_node.size()) != dim_s) {
    schema_error("basis.vectors", "expected one vector per label");
  }
  Eigen::MatrixXcd vectors(dim_s, dim_s);
  for (Index n = 0; n < dim_s; ++n) {
    vectors.col(n) = read_complex_vector(vectors_node[static_cast<std::size_t>(n)], dim_s,
                                         "basis.vectors[" + std::to_string(n) + "]");
  }
  return ExperienceBasis::with_vectors(std::move(labels), std::move(vectors));
}

}  // namespace

Scenario load_scenario(const std::string& config_text) {
  json doc;
  try {
    doc = json::parse(config_text);
  } catch (const json::parse_error& e) {
    // Map the byte offset onto a 1-based line/column pair.
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    if (byte > config_text.size()) byte = config_text.size();
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (config_text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigParseError(line, column, e.what());
  } catch (const json::exception& e) {
    // e.g. number overflow: a literal the double range cannot hold.
    throw ValidationError("finiteness", e.what());
  }

  if (!doc.is_object()) schema_error("$", "expected a JSON object");
  const json& name_node = require(doc, "name", "$");
  if (!name_node.is_string()) schema_error("name", "expected a string");

  std::vector<Index> dims = read_dims(require(doc, "dims", "$"), "dims");
  Index total = 1;
  for (Index d : dims) {
    if (total > dimension_cap() / d) {
      throw CapacityError("scenario dimension exceeds the cap of " +
                          std::to_string(dimension_cap()));
    }
    total *= d;
  }

  std::vector<Index> observer_dims = read_dims(require(doc, "observer_dims", "$"), "observer_dims");
  if (observer_dims.size() > dims.size()) {
    throw ValidationError("factorization", "observer_dims has more factors than dims");
  }
  Index dim_s = 1;
  for (std::size_t i = 0; i < observer_dims.size(); ++i) {
    if (observer_dims[i] != dims[i]) {
      throw ValidationError("factorization",
                            "observer_dims must be a prefix of dims (observer factors come first)");
    }
    dim_s *= observer_dims[i];
  }
  const Index dim_e = total / dim_s;

  try {
    StateVector initial(dims,
                        read_complex_vector(require(doc, "initial", "$"), total, "initial"));
    Dynamics dynamics = read_dynamics(require(doc, "dynamics", "$"), dims, total);
    ExperienceBasis basis = read_basis(require(doc, "basis", "$"), dim_s);
    return Scenario(name_node.get<std::string>(), std::move(initial),
                    Factorization{dim_s, dim_e}, std::move(basis), std::move(dynamics));
  } catch (const json::exception& e) {
    throw ValidationError("schema", e.what());
  }
}

}  // namespace everett
