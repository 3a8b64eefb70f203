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

// Command-line front end: instance generation, lambda, experiments, sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccbandit/bench.h"
#include "ccbandit/instance_io.h"
#include "ccbandit/optim.h"

namespace {

template <typename T>
std::vector<T> ParseList(const std::string& text) {
  std::vector<T> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::stringstream field(item);
    T v;
    if (!(field >> v) || !(field >> std::ws).eof()) {
      throw ccb::Error("cannot parse list element '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ccb::Error("empty list");
  return values;
}

std::vector<ccb::Algo> ParseAlgos(const std::string& text) {
  std::vector<ccb::Algo> algos;
  for (const std::string& name : ParseList<std::string>(text)) {
    algos.push_back(ccb::ParseAlgo(name));
  }
  return algos;
}

void Emit(const std::string& out, const std::vector<ccb::RunReport>& reports,
          bool timing) {
  if (out.empty() || out == "-") {
    ccb::WriteCsv(std::cout, reports, timing);
    return;
  }
  std::ofstream file(out);
  if (!file) throw ccb::Error("cannot write " + out);
  ccb::WriteCsv(file, reports, timing);
}

struct GenArgs {
  std::string kind = "paper";
  int n = 10;
  int k = 10;
  double eps = 0.3;
  std::string m = "2";
  double beta = 0.2;
  uint64_t seed = 0;
  std::string out;
};

void RunGen(const GenArgs& a) {
  ccb::CausalInstance inst;
  if (a.kind == "paper") {
    inst = ccb::GenPaperInstance(a.n, a.k, a.eps, std::stoi(a.m));
  } else if (a.kind == "lowerbound") {
    std::vector<int> m = ParseList<int>(a.m);
    if (m.size() == 1) m.assign(a.k, m[0]);
    const auto targets = ccb::LowerBoundTargets(a.k, m);
    if (targets.empty()) {
      throw ccb::Error("no valid lower-bound target for these thresholds");
    }
    inst = ccb::GenLowerBoundInstance(a.k, targets[a.seed % targets.size()],
                                      a.beta, m);
  } else if (a.kind == "random") {
    inst = ccb::GenRandomInstance(a.n, a.k, a.seed);
  } else {
    throw ccb::Error("unknown instance kind '" + a.kind + "'");
  }
  ccb::RequireValid(inst);
  ccb::SaveInstance(inst, a.out);
}

void RunLambda(const std::string& instance, const std::string& trace) {
  const ccb::CausalInstance inst = ccb::LoadInstance(instance);
  ccb::RequireValid(inst);
  const ccb::LambdaResult r = ccb::InstanceLambda(inst);
  std::cout.precision(12);
  std::cout << "lambda," << r.lambda << "\n";
  std::cout << "minimizer";
  for (double w : r.minimizer.weights) std::cout << "," << w;
  std::cout << "\n";
  if (r.cap_reached) std::cout << "warning,iteration cap reached\n";
  if (!trace.empty()) {
    std::ofstream file(trace);
    if (!file) throw ccb::Error("cannot write " + trace);
    file.precision(12);
    file << "iteration,objective\n";
    for (const ccb::TracePoint& p : r.trace) {
      file << p.iteration << "," << p.objective << "\n";
    }
  }
}

struct RunArgs {
  std::string instance;
  std::string algo = "convexplore";
  int64_t budget = 20000;
  int runs = 100;
  uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  bool no_timing = false;
};

void RunRun(const RunArgs& a) {
  const ccb::CausalInstance inst = ccb::LoadInstance(a.instance);
  ccb::RequireValid(inst);
  ccb::ExperimentOptions options;
  options.jobs = a.jobs;
  const double lambda = ccb::InstanceLambda(inst).lambda;
  std::vector<ccb::RunReport> reports;
  for (ccb::Algo algo : ParseAlgos(a.algo)) {
    reports.push_back(ccb::RunExperiment(inst, algo, a.budget, a.runs, a.seed,
                                         lambda, options));
  }
  Emit(a.out, reports, !a.no_timing);
}

void AddRunFlags(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--algo", a.algo,
                  "convexplore|unif|ucb|ts|rr-ucb|rr-ts, comma separated");
  cmd->add_option("--budget", a.budget, "Exploration rounds T");
  cmd->add_option("--runs", a.runs, "Independent runs");
  cmd->add_option("--seed", a.seed, "Master seed");
  cmd->add_option("--jobs", a.jobs, "Worker threads");
  cmd->add_option("--out", a.out, "CSV output file (default stdout)");
  cmd->add_flag("--no-timing", a.no_timing,
                "Write wall_seconds as 0 for reproducible files");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal contextual bandit explorers and benchmarks"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--kind", gen.kind, "paper|lowerbound|random")
      ->check(CLI::IsMember({"paper", "lowerbound", "random"}));
  gen_cmd->add_option("--n", gen.n, "Variables per context");
  gen_cmd->add_option("--k", gen.k, "Intermediate contexts");
  gen_cmd->add_option("--eps", gen.eps, "Reward gap of the paper instance");
  gen_cmd->add_option("--m", gen.m,
                      "Threshold; lowerbound accepts one per context");
  gen_cmd->add_option("--beta", gen.beta, "Reward gap of the lowerbound target");
  gen_cmd->add_option("--seed", gen.seed, "Random seed / target choice");
  gen_cmd->add_option("--out", gen.out, "Instance file")->required();

  std::string lambda_instance;
  std::string lambda_trace;
  CLI::App* lambda_cmd =
      app.add_subcommand("lambda", "Compute lambda of an instance");
  lambda_cmd->add_option("--instance", lambda_instance, "Instance file")
      ->required();
  lambda_cmd->add_option("--trace", lambda_trace, "Solver trace CSV");

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Monte-Carlo experiment");
  run_cmd->add_option("--instance", run.instance, "Instance file")->required();
  AddRunFlags(run_cmd, run);

  RunArgs sweep_run;
  std::string axis;
  std::string grid;
  ccb::SweepSpec spec;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep");
  sweep_cmd->add_option("--axis", axis, "budget|lambda|contexts")->required();
  sweep_cmd->add_option("--grid", grid, "v1,v2,... strictly increasing")
      ->required();
  AddRunFlags(sweep_cmd, sweep_run);
  sweep_cmd->add_option("--n", spec.n, "Variables per context");
  sweep_cmd->add_option("--k", spec.k, "Intermediate contexts");
  sweep_cmd->add_option("--eps", spec.eps, "Reward gap");
  sweep_cmd->add_option("--m", spec.m, "Intermediate threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      RunGen(gen);
    } else if (*lambda_cmd) {
      RunLambda(lambda_instance, lambda_trace);
    } else if (*run_cmd) {
      RunRun(run);
    } else if (*sweep_cmd) {
      spec.axis = ccb::ParseSweepAxis(axis);
      spec.grid = ParseList<double>(grid);
      spec.budget = sweep_run.budget;
      spec.runs = sweep_run.runs;
      spec.seed = sweep_run.seed;
      ccb::ExperimentOptions options;
      options.jobs = sweep_run.jobs;
      Emit(sweep_run.out,
           ccb::Sweep(spec, ParseAlgos(sweep_run.algo), options),
           !sweep_run.no_timing);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
