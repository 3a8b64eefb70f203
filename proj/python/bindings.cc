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

// Python bindings. Instances cross the boundary as CausalInstance objects
// built by the generators or from the JSON instance format; matrices are
// numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ccbandit/baselines.h"
#include "ccbandit/bench.h"
#include "ccbandit/env.h"
#include "ccbandit/explore.h"
#include "ccbandit/instance_io.h"
#include "ccbandit/optim.h"
#include "ccbandit/thresholds.h"

namespace py = pybind11;

namespace {

py::dict PolicyDict(const ccb::Policy& policy) {
  py::dict d;
  d["start"] = policy.start.index();
  std::vector<int> contexts;
  for (ccb::Intervention a : policy.contexts) contexts.push_back(a.index());
  d["contexts"] = contexts;
  d["text"] = policy.ToString();
  return d;
}

ccb::Policy PolicyFrom(int start, const std::vector<int>& contexts, int n) {
  ccb::Policy policy;
  policy.start = ccb::Intervention::FromIndex(start, n);
  for (int a : contexts) {
    policy.contexts.push_back(ccb::Intervention::FromIndex(a, n));
  }
  return policy;
}

py::dict ReportDict(const ccb::RunReport& r) {
  py::dict d;
  d["algo"] = ccb::AlgoName(r.algo);
  d["T"] = r.budget;
  d["k"] = r.k;
  d["n"] = r.n;
  d["m"] = r.m;
  d["lambda"] = r.lambda;
  d["runs"] = r.runs;
  d["mean_regret"] = r.mean_regret;
  d["stderr"] = r.stderr_regret;
  d["prob_best"] = r.prob_best;
  d["wall_seconds"] = r.wall_seconds;
  d["regrets"] = r.regrets;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ccbandit, m) {
  m.doc() = "Causal contextual bandits: environments, ConvExplore, baselines";
  py::register_exception<ccb::Error>(m, "Error", PyExc_ValueError);

  py::class_<ccb::CausalInstance>(m, "CausalInstance")
      .def_readonly("k", &ccb::CausalInstance::k)
      .def_readonly("n", &ccb::CausalInstance::n)
      .def_readonly("q0", &ccb::CausalInstance::q0)
      .def_property_readonly("num_interventions",
                             &ccb::CausalInstance::num_interventions)
      .def("to_json", &ccb::InstanceToJson, py::arg("indent") = 2)
      .def_static("from_json", &ccb::InstanceFromJson)
      .def("__repr__", [](const ccb::CausalInstance& inst) {
        return "CausalInstance(k=" + std::to_string(inst.k) +
               ", n=" + std::to_string(inst.n) + ")";
      });

  m.def("intervention_name", [](int index, int n) {
    return ccb::Intervention::FromIndex(index, n).ToString();
  });

  m.def("load_instance", &ccb::LoadInstance);
  m.def("save_instance", &ccb::SaveInstance);
  m.def("validate_instance", [](const ccb::CausalInstance& inst) {
    const ccb::ValidationReport r = ccb::ValidateInstance(inst);
    py::dict d;
    d["ok"] = r.ok;
    d["violations"] = r.violations;
    d["max_identity_violation"] = r.max_identity_violation;
    d["max_marginal_violation"] = r.max_marginal_violation;
    return d;
  });
  m.def("true_transition_matrix", &ccb::TrueTransitionMatrix);
  m.def("true_reward_matrix", &ccb::TrueRewardMatrix);
  m.def("transition_threshold", &ccb::TransitionThreshold);

  m.def("gen_paper_instance", &ccb::GenPaperInstance, py::arg("n"),
        py::arg("k"), py::arg("eps"), py::arg("m"));
  m.def(
      "gen_lower_bound_instance",
      [](int k, int context, int arm, double beta, const std::vector<int>& ms) {
        return ccb::GenLowerBoundInstance(
            k, {context, ccb::Intervention::FromIndex(arm, k - 1)}, beta, ms);
      },
      py::arg("k"), py::arg("context"), py::arg("arm"), py::arg("beta"),
      py::arg("m"));
  m.def(
      "gen_random_instance",
      [](int n, int k, uint64_t seed) { return ccb::GenRandomInstance(n, k, seed); },
      py::arg("n"), py::arg("k"), py::arg("seed"));
  m.def("default_beta", &ccb::DefaultBeta, py::arg("m"), py::arg("T"));

  m.def("causal_threshold", [](const std::vector<double>& q) {
    const ccb::ThresholdResult r = ccb::CausalThreshold(q);
    std::vector<int> rare;
    for (ccb::Intervention a : r.rare_set) rare.push_back(a.index());
    py::dict d;
    d["m"] = r.m;
    d["rare_set"] = rare;
    d["obs_probs"] = r.obs_probs;
    return d;
  });

  m.def(
      "lambda_of",
      [](const Eigen::MatrixXd& p, const Eigen::VectorXd& thresholds) {
        const ccb::LambdaResult r = ccb::LambdaOf(p, thresholds);
        std::vector<std::pair<int, double>> trace;
        for (const ccb::TracePoint& t : r.trace) {
          trace.emplace_back(t.iteration, t.objective);
        }
        py::dict d;
        d["lambda"] = r.lambda;
        d["minimizer"] = r.minimizer.weights;
        d["trace"] = trace;
        d["cap_reached"] = r.cap_reached;
        return d;
      },
      py::arg("P"), py::arg("m"));
  m.def("objective_value",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& thresholds,
           const Eigen::VectorXd& f) {
          return ccb::ObjectiveValue(p, thresholds, ccb::FrequencyVector{f});
        });
  m.def("maximin_lp", [](const Eigen::MatrixXd& p) {
    const ccb::MaximinResult r = ccb::MaximinLp(p);
    return py::make_tuple(r.f.weights, r.value);
  });
  m.def("convex_minmax",
        [](const Eigen::MatrixXd& p, const Eigen::VectorXd& thresholds) {
          const ccb::MinmaxResult r = ccb::ConvexMinmax(p, thresholds);
          return py::make_tuple(r.minimizer.weights, r.objective);
        });
  m.def("instance_lambda", [](const ccb::CausalInstance& inst) {
    return ccb::InstanceLambda(inst).lambda;
  });

  m.def(
      "explore",
      [](const ccb::CausalInstance& inst, const std::string& algo,
         int64_t budget, uint64_t seed) {
        ccb::Environment env(inst, seed);
        return PolicyDict(ccb::RunAlgo(ccb::ParseAlgo(algo), env, budget));
      },
      py::arg("instance"), py::arg("algo"), py::arg("T"), py::arg("seed"));
  m.def(
      "simple_regret",
      [](const ccb::CausalInstance& inst, int start,
         const std::vector<int>& contexts) {
        return ccb::SimpleRegret(inst, PolicyFrom(start, contexts, inst.n));
      },
      py::arg("instance"), py::arg("start"), py::arg("contexts"));
  m.def(
      "run_experiment",
      [](const ccb::CausalInstance& inst, const std::string& algo,
         int64_t budget, int runs, uint64_t seed, int jobs) {
        ccb::ExperimentOptions options;
        options.jobs = jobs;
        ccb::RunReport r;
        {
          py::gil_scoped_release release;
          r = ccb::RunExperiment(inst, ccb::ParseAlgo(algo), budget, runs, seed,
                                 options);
        }
        return ReportDict(r);
      },
      py::arg("instance"), py::arg("algo"), py::arg("T"), py::arg("runs"),
      py::arg("seed"), py::arg("jobs") = 1);
}
