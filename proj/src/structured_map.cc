// Copyright 2026 The ccbandit Authors. All rights reserved.
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

#include "ccbandit/structured_map.h"

#include <cmath>
#include <sstream>

namespace ccb {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckOutcome(const Eigen::VectorXd& v, int outcome_dim, OutcomeKind kind,
                  const std::string& label,
                  std::vector<std::string>& violations) {
  if (v.size() != outcome_dim) {
    violations.push_back(label + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(outcome_dim));
    return;
  }
  if (!v.allFinite()) {
    violations.push_back(label + " is not finite");
    return;
  }
  if (kind == OutcomeKind::kScalar) {
    if (v[0] < 0.0 || v[0] > 1.0) {
      std::ostringstream os;
      os << label << " = " << v[0] << " lies outside [0,1]";
      violations.push_back(os.str());
    }
    return;
  }
  if (v.minCoeff() < 0.0) {
    violations.push_back(label + " has a negative entry");
  }
  const double sum = v.sum();
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << label << " sums to " << sum << ", expected 1";
    violations.push_back(os.str());
  }
}

double Prob(std::span<const double> probs, int j, int x) {
  return x == 1 ? probs[j] : 1.0 - probs[j];
}

}  // namespace

std::string VariantName(const StructuredMap& map) {
  return std::visit(Overloaded{[](const LinearMix&) { return "LinearMix"; },
                               [](const FirstOne&) { return "FirstOne"; },
                               [](const Lookup&) { return "Lookup"; }},
                    map);
}

void CheckMap(const StructuredMap& map, int n, int outcome_dim,
              OutcomeKind kind, const std::string& label,
              std::vector<std::string>& violations) {
  std::visit(
      Overloaded{
          [&](const LinearMix& m) {
            if (static_cast<int>(m.weights.size()) != n) {
              violations.push_back(label + ".weights has length " +
                                   std::to_string(m.weights.size()) +
                                   ", expected " + std::to_string(n));
            } else {
              double sum = 0.0;
              bool negative = false;
              for (double w : m.weights) {
                negative |= !(w >= 0.0);
                sum += w;
              }
              if (negative) {
                violations.push_back(label + ".weights has a negative entry");
              }
              if (std::abs(sum - 1.0) > kNormalizationTolerance) {
                std::ostringstream os;
                os.precision(17);
                os << label << ".weights sums to " << sum << ", expected 1";
                violations.push_back(os.str());
              }
            }
            if (static_cast<int>(m.tables.size()) != n) {
              violations.push_back(label + ".tables has length " +
                                   std::to_string(m.tables.size()) +
                                   ", expected " + std::to_string(n));
              return;
            }
            for (int j = 0; j < n; ++j) {
              for (int x = 0; x < 2; ++x) {
                CheckOutcome(m.tables[j][x], outcome_dim, kind,
                             label + ".tables[" + std::to_string(j) + "][" +
                                 std::to_string(x) + "]",
                             violations);
              }
            }
          },
          [&](const FirstOne& m) {
            if (static_cast<int>(m.outcomes.size()) != n) {
              violations.push_back(label + ".outcomes has length " +
                                   std::to_string(m.outcomes.size()) +
                                   ", expected " + std::to_string(n));
            } else {
              for (int j = 0; j < n; ++j) {
                CheckOutcome(m.outcomes[j], outcome_dim, kind,
                             label + ".outcomes[" + std::to_string(j) + "]",
                             violations);
              }
            }
            CheckOutcome(m.fallback, outcome_dim, kind, label + ".default",
                         violations);
          },
          [&](const Lookup& m) {
            const int s = static_cast<int>(m.variables.size());
            if (s > kMaxLookupVariables) {
              violations.push_back(label + ".variables has " +
                                   std::to_string(s) + " entries, at most " +
                                   std::to_string(kMaxLookupVariables) +
                                   " allowed");
              return;
            }
            std::vector<bool> seen(n, false);
            for (int v : m.variables) {
              if (v < 0 || v >= n) {
                violations.push_back(label + ".variables contains " +
                                     std::to_string(v) + ", out of range");
              } else if (seen[v]) {
                violations.push_back(label + ".variables repeats " +
                                     std::to_string(v));
              } else {
                seen[v] = true;
              }
            }
            if (m.table.size() != (size_t{1} << s)) {
              violations.push_back(label + ".table has " +
                                   std::to_string(m.table.size()) +
                                   " entries, expected " +
                                   std::to_string(size_t{1} << s));
              return;
            }
            for (size_t r = 0; r < m.table.size(); ++r) {
              CheckOutcome(m.table[r], outcome_dim, kind,
                           label + ".table[" + std::to_string(r) + "]",
                           violations);
            }
          }},
      map);
}

Eigen::VectorXd ExpectedOutcome(const StructuredMap& map,
                                std::span<const double> probs,
                                int outcome_dim) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(outcome_dim);
  std::visit(
      Overloaded{
          [&](const LinearMix& m) {
            for (size_t j = 0; j < m.weights.size(); ++j) {
              if (m.weights[j] == 0.0) continue;
              out += m.weights[j] * (probs[j] * m.tables[j][1] +
                                     (1.0 - probs[j]) * m.tables[j][0]);
            }
          },
          [&](const FirstOne& m) {
            double none_yet = 1.0;
            for (size_t j = 0; j < m.outcomes.size(); ++j) {
              if (none_yet == 0.0) break;
              out += none_yet * probs[j] * m.outcomes[j];
              none_yet *= 1.0 - probs[j];
            }
            out += none_yet * m.fallback;
          },
          [&](const Lookup& m) {
            const int s = static_cast<int>(m.variables.size());
            for (size_t r = 0; r < (size_t{1} << s); ++r) {
              double w = 1.0;
              for (int b = 0; b < s && w != 0.0; ++b) {
                w *= Prob(probs, m.variables[b], (r >> b) & 1);
              }
              if (w != 0.0) out += w * m.table[r];
            }
          }},
      map);
  return out;
}

Eigen::VectorXd ExpectedUnder(const StructuredMap& map,
                              std::span<const double> probs,
                              Intervention intervention, int outcome_dim) {
  if (intervention.is_do_nothing()) {
    return ExpectedOutcome(map, probs, outcome_dim);
  }
  std::vector<double> pinned(probs.begin(), probs.end());
  pinned[intervention.variable()] = intervention.value();
  return ExpectedOutcome(map, pinned, outcome_dim);
}

Eigen::VectorXd ConditionalOutcome(const StructuredMap& map,
                                   std::span<const double> probs, int variable,
                                   int value, int outcome_dim) {
  const double px = Prob(probs, variable, value);
  if (!(px > 0.0)) {
    throw Error("conditioning on an event of probability zero");
  }
  // joint = E[outcome * 1{X_variable = value}]
  Eigen::VectorXd joint = Eigen::VectorXd::Zero(outcome_dim);
  std::visit(
      Overloaded{
          [&](const LinearMix& m) {
            for (size_t l = 0; l < m.weights.size(); ++l) {
              if (static_cast<int>(l) == variable) {
                joint += m.weights[l] * px * m.tables[l][value];
              } else {
                joint += m.weights[l] * px *
                         (probs[l] * m.tables[l][1] +
                          (1.0 - probs[l]) * m.tables[l][0]);
              }
            }
          },
          [&](const FirstOne& m) {
            // Mass of "no 1 among X_0..X_{l-1}" jointly with the event,
            // where the event factor px is included once l passes
            // `variable`.
            double mass = 1.0;
            for (int l = 0; l < static_cast<int>(m.outcomes.size()); ++l) {
              if (l < variable) {
                joint += mass * probs[l] * px * m.outcomes[l];
                mass *= 1.0 - probs[l];
              } else if (l == variable) {
                if (value == 1) {
                  joint += mass * probs[l] * m.outcomes[l];
                  mass = 0.0;
                } else {
                  mass *= 1.0 - probs[l];
                }
              } else {
                joint += mass * probs[l] * m.outcomes[l];
                mass *= 1.0 - probs[l];
              }
            }
            joint += mass * m.fallback;
          },
          [&](const Lookup& m) {
            const int s = static_cast<int>(m.variables.size());
            bool inside = false;
            for (size_t r = 0; r < (size_t{1} << s); ++r) {
              double w = 1.0;
              bool consistent = true;
              for (int b = 0; b < s; ++b) {
                const int bit = (r >> b) & 1;
                w *= Prob(probs, m.variables[b], bit);
                if (m.variables[b] == variable) {
                  inside = true;
                  consistent = bit == value;
                }
              }
              if (consistent) joint += w * m.table[r];
            }
            if (!inside) joint *= px;
          }},
      map);
  return joint / px;
}

Eigen::VectorXd OutcomeAt(const StructuredMap& map,
                          std::span<const uint8_t> realization,
                          int outcome_dim) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(outcome_dim);
  std::visit(
      Overloaded{
          [&](const LinearMix& m) {
            for (size_t j = 0; j < m.weights.size(); ++j) {
              out += m.weights[j] * m.tables[j][realization[j]];
            }
          },
          [&](const FirstOne& m) {
            for (size_t j = 0; j < m.outcomes.size(); ++j) {
              if (realization[j]) {
                out = m.outcomes[j];
                return;
              }
            }
            out = m.fallback;
          },
          [&](const Lookup& m) {
            size_t r = 0;
            for (size_t b = 0; b < m.variables.size(); ++b) {
              r |= static_cast<size_t>(realization[m.variables[b]]) << b;
            }
            out = m.table[r];
          }},
      map);
  return out;
}

int SampleIndex(const StructuredMap& map, std::span<const uint8_t> realization,
                Rng& rng) {
  auto draw = [&](const Eigen::VectorXd& v) {
    return rng.Categorical(std::span<const double>(v.data(), v.size()));
  };
  return std::visit(
      Overloaded{
          [&](const LinearMix& m) {
            const int j = rng.Categorical(m.weights);
            return draw(m.tables[j][realization[j]]);
          },
          [&](const FirstOne& m) {
            for (size_t j = 0; j < m.outcomes.size(); ++j) {
              if (realization[j]) return draw(m.outcomes[j]);
            }
            return draw(m.fallback);
          },
          [&](const Lookup& m) {
            size_t r = 0;
            for (size_t b = 0; b < m.variables.size(); ++b) {
              r |= static_cast<size_t>(realization[m.variables[b]]) << b;
            }
            return draw(m.table[r]);
          }},
      map);
}

double ScalarAt(const StructuredMap& map,
                std::span<const uint8_t> realization) {
  return std::visit(
      Overloaded{
          [&](const LinearMix& m) {
            double p = 0.0;
            for (size_t j = 0; j < m.weights.size(); ++j) {
              p += m.weights[j] * m.tables[j][realization[j]][0];
            }
            return p;
          },
          [&](const FirstOne& m) {
            for (size_t j = 0; j < m.outcomes.size(); ++j) {
              if (realization[j]) return m.outcomes[j][0];
            }
            return m.fallback[0];
          },
          [&](const Lookup& m) {
            size_t r = 0;
            for (size_t b = 0; b < m.variables.size(); ++b) {
              r |= static_cast<size_t>(realization[m.variables[b]]) << b;
            }
            return m.table[r][0];
          }},
      map);
}

}  // namespace ccb
