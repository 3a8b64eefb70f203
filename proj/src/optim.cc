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

// Both programs are solved over the interior of the simplex with
// exponentiated-gradient steps (entropic mirror descent). The max (or min)
// over rows is replaced by a log-sum-exp with temperature mu, whose
// gradient is a softmax-weighted combination of row subgradients; mu shrinks
// geometrically once a stage stalls, so the weights concentrate on the
// active rows. Step sizes adapt by backtracking on the Bregman
// (KL) upper model.

#include "ccbandit/optim.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccbandit/intervention.h"

namespace ccb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFloor = 1e-300;
constexpr double kMuShrink = 0.3;
constexpr double kStepGrow = 1.2;
constexpr double kMinStep = 1e-30;

// Columns of p that carry any mass.
std::vector<int> ReachableColumns(const Eigen::MatrixXd& p) {
  std::vector<int> cols;
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    if ((p.col(c).array() != 0.0).any()) cols.push_back(static_cast<int>(c));
  }
  return cols;
}

Eigen::MatrixXd SelectColumns(const Eigen::MatrixXd& p,
                              const std::vector<int>& cols) {
  Eigen::MatrixXd out(p.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c) out.col(c) = p.col(cols[c]);
  return out;
}

// f <- f * exp(step * direction), renormalized; entries kept >= kFloor.
Eigen::VectorXd EntropicStep(const Eigen::VectorXd& f,
                             const Eigen::VectorXd& direction, double step) {
  Eigen::ArrayXd z = step * direction.array();
  z -= z.maxCoeff();
  Eigen::VectorXd next = (f.array() * z.exp()).matrix();
  next /= next.sum();
  return next.cwiseMax(kFloor);
}

double KlDivergence(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double kl = (a.array() * (a.array() / b.array()).log()).sum();
  return std::max(kl, 0.0);
}

// Log-sum-exp smoothing of max_a g_a with g_a = sum_i Q(a,i) c_i y_i^-1/2.
struct SmoothedMax {
  const Eigen::MatrixXd& q;
  const Eigen::VectorXd& c;

  struct Eval {
    double smooth = kInf;
    double exact = kInf;
    Eigen::VectorXd gradient;
  };

  // Row values; +inf where a row touches a context with y_i = 0.
  Eigen::VectorXd Rows(const Eigen::VectorXd& y) const {
    Eigen::VectorXd inv(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      inv[i] = y[i] > 0.0 ? c[i] / std::sqrt(y[i]) : kInf;
    }
    Eigen::VectorXd rows(q.rows());
    for (Eigen::Index a = 0; a < q.rows(); ++a) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < q.cols(); ++i) {
        if (q(a, i) != 0.0) s += q(a, i) * inv[i];
      }
      rows[a] = s;
    }
    return rows;
  }

  Eval Evaluate(const Eigen::VectorXd& f, double mu, bool with_gradient) const {
    Eval e;
    const Eigen::VectorXd y = q.transpose() * f;
    const Eigen::VectorXd rows = Rows(y);
    e.exact = rows.maxCoeff();
    if (!std::isfinite(e.exact)) return e;
    const Eigen::ArrayXd w = ((rows.array() - e.exact) / mu).exp();
    const double total = w.sum();
    e.smooth = e.exact + mu * std::log(total);
    if (with_gradient) {
      const Eigen::VectorXd weights = (w / total).matrix();
      const Eigen::VectorXd mass = q.transpose() * weights;
      Eigen::VectorXd dy(y.size());
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        dy[i] = -0.5 * c[i] * mass[i] / (y[i] * std::sqrt(y[i]));
      }
      e.gradient = q * dy;
    }
    return e;
  }
};

// Log-sum-exp smoothing of -min_i y_i, minimized.
struct SmoothedNegMin {
  const Eigen::MatrixXd& q;

  struct Eval {
    double smooth = 0.0;
    double exact_min = 0.0;
    Eigen::VectorXd gradient;
  };

  Eval Evaluate(const Eigen::VectorXd& f, double mu, bool with_gradient) const {
    Eval e;
    const Eigen::VectorXd y = q.transpose() * f;
    e.exact_min = y.minCoeff();
    const Eigen::ArrayXd w = ((e.exact_min - y.array()) / mu).exp();
    const double total = w.sum();
    e.smooth = -e.exact_min + mu * std::log(total);
    if (with_gradient) e.gradient = -(q * (w / total).matrix());
    return e;
  }
};

}  // namespace

FrequencyVector FrequencyVector::Uniform(int size) {
  return {Eigen::VectorXd::Constant(size, 1.0 / size)};
}

bool FrequencyVector::IsValid(double tol) const {
  if (weights.size() == 0) return false;
  if (!weights.allFinite() || weights.minCoeff() < 0.0) return false;
  return std::abs(weights.sum() - 1.0) <= tol;
}

double ObjectiveValue(const Eigen::MatrixXd& p, const Eigen::VectorXd& m,
                      const FrequencyVector& f) {
  if (m.size() != p.cols() || f.weights.size() != p.rows()) {
    throw Error("objective_value: dimension mismatch");
  }
  const std::vector<int> cols = ReachableColumns(p);
  if (cols.empty()) return 0.0;
  const Eigen::MatrixXd q = SelectColumns(p, cols);
  Eigen::VectorXd c(cols.size());
  for (size_t i = 0; i < cols.size(); ++i) c[i] = std::sqrt(m[cols[i]]);
  return SmoothedMax{q, c}.Rows(q.transpose() * f.weights).maxCoeff();
}

MaximinResult MaximinLp(const Eigen::MatrixXd& p,
                        const SolverOptions& options) {
  if (p.cols() == 0) throw Error("maximin_lp: no contexts");
  if (p.rows() == 0) throw Error("maximin_lp: no interventions");
  const int rows = static_cast<int>(p.rows());
  const std::vector<int> cols = ReachableColumns(p);
  MaximinResult result{FrequencyVector::Uniform(rows), 0.0, 0};
  if (cols.empty()) return result;
  const Eigen::MatrixXd q = SelectColumns(p, cols);
  const SmoothedNegMin objective{q};

  Eigen::VectorXd f = result.f.weights;
  double best = (q.transpose() * f).minCoeff();
  Eigen::VectorXd best_f = f;
  // y lies in [0, 1]; start smooth and sharpen to an absolute level.
  double mu = 0.1 / static_cast<double>(cols.size());
  const double final_mu = 0.1 * options.stationarity_tol;
  double step = 1.0 / mu;
  int it = 0;
  while (it < options.max_iterations) {
    const auto cur = objective.Evaluate(f, mu, true);
    Eigen::VectorXd next;
    double next_val = 0.0;
    bool stalled = false;
    while (true) {
      ++it;
      next = EntropicStep(f, -cur.gradient, step);
      next_val = objective.Evaluate(next, mu, false).smooth;
      const double model = cur.smooth + cur.gradient.dot(next - f) +
                           KlDivergence(next, f) / step;
      if (next_val <= model + 1e-15 * std::abs(cur.smooth) + 1e-300) break;
      step *= 0.5;
      if (step < kMinStep) {
        stalled = true;
        break;
      }
      if (it >= options.max_iterations) break;
    }
    if (!stalled && next_val <= cur.smooth) {
      f = next;
      step *= kStepGrow;
      const double value = (q.transpose() * f).minCoeff();
      if (value > best) {
        best = value;
        best_f = f;
      }
    }
    // A stage ends when the smoothed objective stops moving; a step search
    // that cannot improve counts as stationary too.
    if (stalled || cur.smooth - next_val <=
                       options.stationarity_tol *
                           std::max(std::abs(cur.smooth), mu)) {
      if (mu <= final_mu) break;
      mu *= kMuShrink;
      if (stalled) step = 1.0 / mu;
    }
  }
  result.f.weights = best_f;
  result.value = best;
  result.iterations = it;
  return result;
}

MinmaxResult ConvexMinmax(const Eigen::MatrixXd& p, const Eigen::VectorXd& m,
                          const SolverOptions& options) {
  if (p.cols() == 0) throw Error("convex_minmax: no contexts");
  if (p.rows() == 0) throw Error("convex_minmax: no interventions");
  if (m.size() != p.cols()) throw Error("convex_minmax: dimension mismatch");
  const int rows = static_cast<int>(p.rows());
  const std::vector<int> cols = ReachableColumns(p);
  MinmaxResult result;
  result.minimizer = FrequencyVector::Uniform(rows);
  if (cols.empty()) return result;
  const Eigen::MatrixXd q = SelectColumns(p, cols);
  Eigen::VectorXd c(cols.size());
  for (size_t i = 0; i < cols.size(); ++i) {
    if (!(m[cols[i]] > 0.0)) throw Error("convex_minmax: m must be positive");
    c[i] = std::sqrt(m[cols[i]]);
  }
  const SmoothedMax objective{q, c};

  Eigen::VectorXd f = result.minimizer.weights;
  auto start = objective.Evaluate(f, 1.0, false);
  if (std::isnan(start.exact)) throw Error("convex_minmax: NaN objective");
  double best = start.exact;
  Eigen::VectorXd best_f = f;
  double mu = 0.05 * start.exact;
  double step = 1.0 / start.exact;
  int it = 0;
  bool converged = false;
  while (it < options.max_iterations) {
    const auto cur = objective.Evaluate(f, mu, true);
    Eigen::VectorXd next;
    double next_val = 0.0;
    bool stalled = false;
    while (true) {
      ++it;
      next = EntropicStep(f, -cur.gradient, step);
      next_val = objective.Evaluate(next, mu, false).smooth;
      if (std::isnan(next_val)) throw Error("convex_minmax: NaN objective");
      const double model = cur.smooth + cur.gradient.dot(next - f) +
                           KlDivergence(next, f) / step;
      if (next_val <= model + 1e-13 * std::abs(cur.smooth)) break;
      step *= 0.5;
      if (step < kMinStep) {
        stalled = true;
        break;
      }
      if (it >= options.max_iterations) break;
    }
    if (!stalled && next_val <= cur.smooth) {
      f = next;
      step *= kStepGrow;
      const double exact = objective.Evaluate(f, mu, false).exact;
      result.trace.push_back({it, exact});
      if (exact < best) {
        best = exact;
        best_f = f;
      }
    }
    // A stage ends when the smoothed objective stops moving; a step search
    // that cannot improve counts as stationary too.
    if (stalled ||
        cur.smooth - next_val <= options.stationarity_tol * cur.smooth) {
      if (mu <= options.stationarity_tol * best) {
        converged = true;
        break;
      }
      mu *= kMuShrink;
      if (stalled) step = 1.0 / best;
    }
  }
  result.minimizer.weights = best_f;
  result.objective = best;
  result.cap_reached = !converged;
  return result;
}

LambdaResult LambdaOf(const Eigen::MatrixXd& p, const Eigen::VectorXd& m,
                      const SolverOptions& options) {
  MinmaxResult r = ConvexMinmax(p, m, options);
  return {r.objective * r.objective, std::move(r.minimizer),
          std::move(r.trace), r.cap_reached};
}

}  // namespace ccb
