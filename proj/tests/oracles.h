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

// Reference computations used only by the tests. Everything here is written
// from the definitions, by exhaustive enumeration or grid search, and shares
// no code with the library beyond its data types.

#ifndef CCBANDIT_TESTS_ORACLES_H_
#define CCBANDIT_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ccbandit/env.h"
#include "ccbandit/explore.h"

namespace ccb::oracle {

// Outcome of a structured map at a fixed realization.
inline Eigen::VectorXd Outcome(const StructuredMap& map,
                               const std::vector<int>& x) {
  if (const auto* mix = std::get_if<LinearMix>(&map)) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(mix->tables[0][0].size());
    for (size_t j = 0; j < x.size(); ++j) {
      out += mix->weights[j] * mix->tables[j][x[j]];
    }
    return out;
  }
  if (const auto* first = std::get_if<FirstOne>(&map)) {
    for (size_t j = 0; j < x.size(); ++j) {
      if (x[j] == 1) return first->outcomes[j];
    }
    return first->fallback;
  }
  const auto& lookup = std::get<Lookup>(map);
  int row = 0;
  for (size_t b = 0; b < lookup.variables.size(); ++b) {
    row |= x[lookup.variables[b]] << b;
  }
  return lookup.table[row];
}

// Calls visit(x, probability) for all 2^n realizations of independent
// Bernoulli(q) variables, with variable `pin` (if >= 0) forced to `value`.
inline void ForEachRealization(
    const std::vector<double>& q, int pin, int value,
    const std::function<void(const std::vector<int>&, double)>& visit) {
  const int n = static_cast<int>(q.size());
  std::vector<int> x(n);
  for (uint64_t bits = 0; bits < (uint64_t{1} << n); ++bits) {
    double prob = 1.0;
    for (int j = 0; j < n; ++j) {
      x[j] = (bits >> j) & 1;
      if (j == pin) {
        prob *= x[j] == value ? 1.0 : 0.0;
      } else {
        prob *= x[j] == 1 ? q[j] : 1.0 - q[j];
      }
    }
    if (prob > 0.0) visit(x, prob);
  }
}

// E[outcome] under an intervention, by enumeration.
inline Eigen::VectorXd Interventional(const StructuredMap& map,
                                      const std::vector<double>& q,
                                      Intervention a, int dim) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  ForEachRealization(q, a.is_do_nothing() ? -1 : a.variable(), a.value(),
                     [&](const std::vector<int>& x, double p) {
                       out += p * Outcome(map, x);
                     });
  return out;
}

// E[outcome | X_j = x] under do(), by enumeration of the joint law.
inline Eigen::VectorXd Conditional(const StructuredMap& map,
                                   const std::vector<double>& q, int j,
                                   int value, int dim) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  double mass = 0.0;
  ForEachRealization(q, -1, 0, [&](const std::vector<int>& x, double p) {
    if (x[j] != value) return;
    out += p * Outcome(map, x);
    mass += p;
  });
  return out / mass;
}

inline Eigen::MatrixXd Transitions(const CausalInstance& inst) {
  const int num = inst.num_interventions();
  Eigen::MatrixXd p(num, inst.k);
  for (int a = 0; a < num; ++a) {
    p.row(a) = Interventional(inst.transition_map, inst.q0,
                              Intervention::FromIndex(a, inst.n), inst.k);
  }
  return p;
}

inline Eigen::MatrixXd Rewards(const CausalInstance& inst) {
  const int num = inst.num_interventions();
  Eigen::MatrixXd r(num, inst.k);
  for (int i = 0; i < inst.k; ++i) {
    for (int a = 0; a < num; ++a) {
      r(a, i) = Interventional(inst.contexts[i].reward_map,
                               inst.contexts[i].q,
                               Intervention::FromIndex(a, inst.n), 1)[0];
    }
  }
  return r;
}

// Causal threshold by scanning tau upward and counting.
inline int Threshold(const std::vector<double>& q) {
  const int n = static_cast<int>(q.size());
  for (int tau = 2; tau <= 2 * n; ++tau) {
    int count = 0;
    for (double v : q) {
      count += v < 1.0 / tau;
      count += 1.0 - v < 1.0 / tau;
    }
    if (count <= tau) return tau;
  }
  return 2 * n;
}

// Best value over all N^(k+1) policies.
inline double BestPolicyValue(const Eigen::MatrixXd& p,
                              const Eigen::MatrixXd& r) {
  const int num = static_cast<int>(p.rows());
  const int k = static_cast<int>(p.cols());
  double best = -1.0;
  std::vector<int> choice(k, 0);
  while (true) {
    for (int b = 0; b < num; ++b) {
      double v = 0.0;
      for (int i = 0; i < k; ++i) v += p(b, i) * r(choice[i], i);
      best = std::max(best, v);
    }
    int pos = 0;
    while (pos < k && ++choice[pos] == num) choice[pos++] = 0;
    if (pos == k) break;
  }
  return best;
}

// max_a sum_i P(a,i) sqrt(m_i / y_i), y = P^T f, zero columns skipped.
inline double MinmaxObjective(const Eigen::MatrixXd& p,
                              const Eigen::VectorXd& m,
                              const Eigen::VectorXd& f) {
  const Eigen::VectorXd y = p.transpose() * f;
  double worst = 0.0;
  for (int a = 0; a < p.rows(); ++a) {
    double v = 0.0;
    for (int i = 0; i < p.cols(); ++i) {
      if (p.col(i).maxCoeff() <= 0.0 || p(a, i) <= 0.0) continue;
      if (y[i] <= 0.0) return std::numeric_limits<double>::infinity();
      v += p(a, i) * std::sqrt(m[i] / y[i]);
    }
    worst = std::max(worst, v);
  }
  return worst;
}

// -min_i y_i over reachable columns (so that smaller is better).
inline double NegMaximinObjective(const Eigen::MatrixXd& p,
                                  const Eigen::VectorXd& f) {
  const Eigen::VectorXd y = p.transpose() * f;
  double low = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.cols(); ++i) {
    if (p.col(i).maxCoeff() > 0.0) low = std::min(low, y[i]);
  }
  return -low;
}

// Minimum of `objective` over the simplex in dimension `dim`. A full grid of
// spacing 1/coarse is searched first, then grids of spacing h/4 on boxes of
// +-2h around the incumbent until the spacing is at most `resolution`.
inline double GridMinimum(
    int dim, const std::function<double(const Eigen::VectorXd&)>& objective,
    double resolution = 1e-3, int coarse = 40) {
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_f = Eigen::VectorXd::Constant(dim, 1.0 / dim);
  Eigen::VectorXd f(dim);
  auto consider = [&]() {
    const double v = objective(f);
    if (v < best) {
      best = v;
      best_f = f;
    }
  };
  // Full grid: integer compositions of `coarse` into dim parts.
  std::vector<int> parts(dim, 0);
  std::function<void(int, int)> full = [&](int pos, int left) {
    if (pos == dim - 1) {
      parts[pos] = left;
      for (int a = 0; a < dim; ++a) f[a] = parts[a] / double(coarse);
      consider();
      return;
    }
    for (int c = 0; c <= left; ++c) {
      parts[pos] = c;
      full(pos + 1, left - c);
    }
  };
  full(0, coarse);

  double h = 1.0 / coarse;
  while (h > resolution) {
    const double fine = h / 4.0;
    Eigen::VectorXd center = best_f;
    std::function<void(int, double)> local = [&](int pos, double used) {
      if (pos == dim - 1) {
        f[pos] = 1.0 - used;
        if (f[pos] < -1e-12) return;
        f[pos] = std::max(f[pos], 0.0);
        consider();
        return;
      }
      for (int t = -8; t <= 8; ++t) {
        const double v = center[pos] + t * fine;
        if (v < -1e-12 || v > 1.0 + 1e-12) continue;
        f[pos] = std::clamp(v, 0.0, 1.0);
        local(pos + 1, used + f[pos]);
      }
    };
    // Re-centre until the incumbent is the best point of its own box, so
    // the search can follow ridges of piecewise-linear objectives.
    for (int pass = 0; pass < 1000; ++pass) {
      const double before = best;
      center = best_f;
      local(0, 0.0);
      if (!(best < before)) break;
    }
    h = fine;
  }
  return best;
}

}  // namespace ccb::oracle

#endif  // CCBANDIT_TESTS_ORACLES_H_
