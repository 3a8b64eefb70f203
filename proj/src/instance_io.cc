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

#include "ccbandit/instance_io.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ccb {
namespace {

using nlohmann::json;

void RejectUnknown(const json& obj, const std::set<std::string>& allowed,
                   const std::string& where) {
  if (!obj.is_object()) throw Error(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw Error("unknown field '" + key + "' in " + where);
    }
  }
}

const json& Field(const json& obj, const std::string& key,
                  const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error("missing field '" + key + "' in " + where);
  return *it;
}

Eigen::VectorXd OutcomeFromJson(const json& j, OutcomeKind kind,
                                const std::string& where) {
  if (kind == OutcomeKind::kScalar) {
    if (!j.is_number()) throw Error(where + " must be a number");
    return Eigen::VectorXd::Constant(1, j.get<double>());
  }
  if (!j.is_array()) throw Error(where + " must be an array");
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(where + " must hold numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

json OutcomeToJson(const Eigen::VectorXd& v, OutcomeKind kind) {
  if (kind == OutcomeKind::kScalar) return v[0];
  return std::vector<double>(v.data(), v.data() + v.size());
}

StructuredMap MapFromJson(const json& j, OutcomeKind kind,
                          const std::string& where) {
  if (!j.is_object()) throw Error(where + " must be an object");
  const std::string variant = Field(j, "variant", where).get<std::string>();
  if (variant == "LinearMix") {
    RejectUnknown(j, {"variant", "weights", "tables"}, where);
    LinearMix m;
    m.weights = Field(j, "weights", where).get<std::vector<double>>();
    const json& tables = Field(j, "tables", where);
    if (!tables.is_array()) throw Error(where + ".tables must be an array");
    for (size_t v = 0; v < tables.size(); ++v) {
      const std::string w = where + ".tables[" + std::to_string(v) + "]";
      if (!tables[v].is_array() || tables[v].size() != 2) {
        throw Error(w + " must hold exactly two outcomes");
      }
      m.tables.push_back({OutcomeFromJson(tables[v][0], kind, w + "[0]"),
                          OutcomeFromJson(tables[v][1], kind, w + "[1]")});
    }
    return m;
  }
  if (variant == "FirstOne") {
    RejectUnknown(j, {"variant", "outcomes", "default"}, where);
    FirstOne m;
    const json& outcomes = Field(j, "outcomes", where);
    if (!outcomes.is_array()) {
      throw Error(where + ".outcomes must be an array");
    }
    for (size_t v = 0; v < outcomes.size(); ++v) {
      m.outcomes.push_back(OutcomeFromJson(
          outcomes[v], kind, where + ".outcomes[" + std::to_string(v) + "]"));
    }
    m.fallback =
        OutcomeFromJson(Field(j, "default", where), kind, where + ".default");
    return m;
  }
  if (variant == "Lookup") {
    RejectUnknown(j, {"variant", "variables", "table"}, where);
    Lookup m;
    m.variables = Field(j, "variables", where).get<std::vector<int>>();
    const json& table = Field(j, "table", where);
    if (!table.is_array()) throw Error(where + ".table must be an array");
    for (size_t r = 0; r < table.size(); ++r) {
      m.table.push_back(OutcomeFromJson(
          table[r], kind, where + ".table[" + std::to_string(r) + "]"));
    }
    return m;
  }
  throw Error("unknown map variant '" + variant + "' in " + where);
}

json MapToJson(const StructuredMap& map, OutcomeKind kind) {
  json j;
  j["variant"] = VariantName(map);
  if (const auto* m = std::get_if<LinearMix>(&map)) {
    j["weights"] = m->weights;
    json tables = json::array();
    for (const auto& t : m->tables) {
      tables.push_back({OutcomeToJson(t[0], kind), OutcomeToJson(t[1], kind)});
    }
    j["tables"] = tables;
  } else if (const auto* m = std::get_if<FirstOne>(&map)) {
    json outcomes = json::array();
    for (const auto& o : m->outcomes) outcomes.push_back(OutcomeToJson(o, kind));
    j["outcomes"] = outcomes;
    j["default"] = OutcomeToJson(m->fallback, kind);
  } else {
    const auto& l = std::get<Lookup>(map);
    j["variables"] = l.variables;
    json table = json::array();
    for (const auto& o : l.table) table.push_back(OutcomeToJson(o, kind));
    j["table"] = table;
  }
  return j;
}

}  // namespace

CausalInstance InstanceFromJson(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed instance JSON: ") + e.what());
  }
  try {
    RejectUnknown(root, {"k", "n", "q0", "transition_map", "contexts"},
                  "instance");
    CausalInstance inst;
    inst.k = Field(root, "k", "instance").get<int>();
    inst.n = Field(root, "n", "instance").get<int>();
    inst.q0 = Field(root, "q0", "instance").get<std::vector<double>>();
    inst.transition_map =
        MapFromJson(Field(root, "transition_map", "instance"),
                    OutcomeKind::kDistribution, "transition_map");
    const json& contexts = Field(root, "contexts", "instance");
    if (!contexts.is_array()) throw Error("contexts must be an array");
    for (size_t i = 0; i < contexts.size(); ++i) {
      const std::string where = "contexts[" + std::to_string(i) + "]";
      RejectUnknown(contexts[i], {"q", "reward_map"}, where);
      ContextModel ctx;
      ctx.q = Field(contexts[i], "q", where).get<std::vector<double>>();
      ctx.reward_map = MapFromJson(Field(contexts[i], "reward_map", where),
                                   OutcomeKind::kScalar, where + ".reward_map");
      inst.contexts.push_back(std::move(ctx));
    }
    return inst;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed instance JSON: ") + e.what());
  }
}

std::string InstanceToJson(const CausalInstance& inst, int indent) {
  json root;
  root["k"] = inst.k;
  root["n"] = inst.n;
  root["q0"] = inst.q0;
  root["transition_map"] =
      MapToJson(inst.transition_map, OutcomeKind::kDistribution);
  json contexts = json::array();
  for (const auto& ctx : inst.contexts) {
    contexts.push_back(
        {{"q", ctx.q},
         {"reward_map", MapToJson(ctx.reward_map, OutcomeKind::kScalar)}});
  }
  root["contexts"] = contexts;
  return root.dump(indent);
}

CausalInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return InstanceFromJson(buffer.str());
}

void SaveInstance(const CausalInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path);
  out << InstanceToJson(inst) << "\n";
}

}  // namespace ccb
