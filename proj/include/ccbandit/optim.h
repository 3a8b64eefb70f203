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

#ifndef CCBANDIT_OPTIM_H_
#define CCBANDIT_OPTIM_H_

#include <vector>

#include <Eigen/Dense>

namespace ccb {

// A distribution over the N start interventions (canonical order).
struct FrequencyVector {
  Eigen::VectorXd weights;

  static FrequencyVector Uniform(int size);
  // Entries >= 0 and sum within `tol` of 1.
  bool IsValid(double tol = 1e-9) const;
};

struct TracePoint {
  int iteration = 0;
  double objective = 0.0;
};

struct SolverOptions {
  int max_iterations = 50000;
  // Relative change of the smoothed objective that ends a smoothing stage;
  // also the final smoothing level relative to the objective.
  double stationarity_tol = 1e-8;
};

// max over rows a of sum_i P(a,i) sqrt(m_i) / sqrt((P^T f)_i).
// Identically-zero columns are skipped. Returns +infinity when a row puts
// mass on a reachable context that f never reaches.
double ObjectiveValue(const Eigen::MatrixXd& p, const Eigen::VectorXd& m,
                      const FrequencyVector& f);

struct MaximinResult {
  FrequencyVector f;
  // min over reachable contexts of (P^T f)_i.
  double value = 0.0;
  int iterations = 0;
};

// argmax over frequency vectors of min_i (P^T f)_i, ignoring identically
// zero columns.
MaximinResult MaximinLp(const Eigen::MatrixXd& p,
                        const SolverOptions& options = {});

struct MinmaxResult {
  FrequencyVector minimizer;
  double objective = 0.0;
  std::vector<TracePoint> trace;
  bool cap_reached = false;
};

// argmin over frequency vectors of ObjectiveValue(p, m, f).
MinmaxResult ConvexMinmax(const Eigen::MatrixXd& p, const Eigen::VectorXd& m,
                          const SolverOptions& options = {});

struct LambdaResult {
  double lambda = 0.0;
  FrequencyVector minimizer;
  std::vector<TracePoint> trace;
  bool cap_reached = false;
};

// lambda = (min over f of ObjectiveValue(p, m, f))^2.
LambdaResult LambdaOf(const Eigen::MatrixXd& p, const Eigen::VectorXd& m,
                      const SolverOptions& options = {});

}  // namespace ccb

#endif  // CCBANDIT_OPTIM_H_
