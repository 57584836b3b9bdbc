// Copyright 2026 The swipt-secure Authors
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
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "swipt/errors.hpp"
#include "swipt/harness.hpp"

namespace swipt {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw DomainError(where + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw DomainError("unknown key '" + item.key() + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(std::string("bad value for '") + key + "': " + e.what());
  }
}

double read_rician(const json& v) {
  if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  if (!v.is_number()) throw DomainError("rician_factor must be a number or \"inf\"");
  return v.get<double>();
}

void resize_like(std::vector<double>& v, std::size_t n, double fallback) {
  const double fill = v.empty() ? fallback : v.front();
  v.assign(n, fill);
}

}  // namespace

std::vector<Weights> ExperimentConfig::lambda_grid() const {
  if (!lambdas.empty()) return lambdas;
  return uniform_weights(lambda_points);
}

void ExperimentConfig::set_receivers(int k) {
  if (k < 1) throw DomainError("num_receivers must be >= 1");
  system.num_receivers = k;
  resize_like(system.conversion_efficiency, static_cast<std::size_t>(k - 1), 0.5);
  resize_like(qos.gamma_tol, static_cast<std::size_t>(k - 1), 0.1);
}

void ExperimentConfig::validate() const {
  system.validate();
  qos.validate(static_cast<std::size_t>(system.num_receivers - 1));
  if (lambdas.empty() && lambda_points < 1) throw DomainError("lambda_points must be >= 1");
  for (const Weights& w : lambdas) w.validate();
  if (realizations < 1) throw DomainError("realizations must be >= 1");
  if (schemes.empty()) throw DomainError("schemes must not be empty");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    for (std::size_t j = i + 1; j < schemes.size(); ++j) {
      if (schemes[i] == schemes[j]) throw DomainError("schemes must not repeat");
    }
  }
  if (output.empty()) throw DomainError("output must not be empty");
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc,
                 {"system", "qos", "lambda_points", "lambdas", "realizations", "seed", "schemes",
                  "output", "bandwidth"},
                 "config");
  ExperimentConfig c;
  bool eps_given = false, tol_given = false;
  if (doc.contains("system")) {
    const json& s = doc.at("system");
    reject_unknown(s,
                   {"num_antennas", "num_receivers", "carrier_freq", "reference_distance",
                    "max_distance", "breakpoint_distance", "breakpoint_exponent", "rician_factor",
                    "antenna_gain", "noise_power", "conversion_efficiency"},
                   "system");
    SystemConfig& sys = c.system;
    read(s, "num_antennas", sys.num_antennas);
    read(s, "num_receivers", sys.num_receivers);
    read(s, "carrier_freq", sys.carrier_freq);
    read(s, "reference_distance", sys.reference_distance);
    read(s, "max_distance", sys.max_distance);
    read(s, "breakpoint_distance", sys.breakpoint_distance);
    read(s, "breakpoint_exponent", sys.breakpoint_exponent);
    if (s.contains("rician_factor")) sys.rician_factor = read_rician(s.at("rician_factor"));
    read(s, "antenna_gain", sys.antenna_gain);
    read(s, "noise_power", sys.noise_power);
    eps_given = s.contains("conversion_efficiency");
    read(s, "conversion_efficiency", sys.conversion_efficiency);
  }
  if (doc.contains("qos")) {
    const json& q = doc.at("qos");
    reject_unknown(q, {"gamma_req", "gamma_tol", "p_max", "sigma_s2"}, "qos");
    read(q, "gamma_req", c.qos.gamma_req);
    tol_given = q.contains("gamma_tol");
    read(q, "gamma_tol", c.qos.gamma_tol);
    read(q, "p_max", c.qos.p_max);
    read(q, "sigma_s2", c.qos.sigma_s2);
  }
  const std::size_t idle = c.system.num_receivers >= 1 ? c.system.num_receivers - 1 : 0;
  if (!eps_given) resize_like(c.system.conversion_efficiency, idle, 0.5);
  if (!tol_given) resize_like(c.qos.gamma_tol, idle, 0.1);

  read(doc, "lambda_points", c.lambda_points);
  if (doc.contains("lambdas")) {
    const json& list = doc.at("lambdas");
    if (!list.is_array()) throw DomainError("lambdas must be an array");
    for (const json& item : list) {
      reject_unknown(item, {"lambda1", "lambda2"}, "lambdas entry");
      Weights w;
      read(item, "lambda1", w.lambda1);
      read(item, "lambda2", w.lambda2);
      c.lambdas.push_back(w);
    }
  }
  read(doc, "realizations", c.realizations);
  read(doc, "seed", c.seed);
  if (doc.contains("schemes")) {
    std::vector<std::string> names;
    read(doc, "schemes", names);
    c.schemes.clear();
    for (const std::string& n : names) {
      const auto s = parse_scheme(n);
      if (!s) throw DomainError("unknown scheme '" + n + "'");
      c.schemes.push_back(*s);
    }
  }
  read(doc, "output", c.output);
  read(doc, "bandwidth", c.bandwidth);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json doc;
  const SystemConfig& s = c.system;
  doc["system"] = {{"num_antennas", s.num_antennas},
                   {"num_receivers", s.num_receivers},
                   {"carrier_freq", s.carrier_freq},
                   {"reference_distance", s.reference_distance},
                   {"max_distance", s.max_distance},
                   {"breakpoint_distance", s.breakpoint_distance},
                   {"breakpoint_exponent", s.breakpoint_exponent},
                   {"antenna_gain", s.antenna_gain},
                   {"noise_power", s.noise_power},
                   {"conversion_efficiency", s.conversion_efficiency}};
  if (std::isinf(s.rician_factor)) {
    doc["system"]["rician_factor"] = "inf";
  } else {
    doc["system"]["rician_factor"] = s.rician_factor;
  }
  doc["qos"] = {{"gamma_req", c.qos.gamma_req},
                {"gamma_tol", c.qos.gamma_tol},
                {"p_max", c.qos.p_max},
                {"sigma_s2", c.qos.sigma_s2}};
  doc["lambda_points"] = c.lambda_points;
  json lambdas = json::array();
  for (const Weights& w : c.lambdas) lambdas.push_back({{"lambda1", w.lambda1}, {"lambda2", w.lambda2}});
  doc["lambdas"] = lambdas;
  doc["realizations"] = c.realizations;
  doc["seed"] = c.seed;
  json schemes = json::array();
  for (Scheme sc : c.schemes) schemes.push_back(to_string(sc));
  doc["schemes"] = schemes;
  doc["output"] = c.output;
  doc["bandwidth"] = c.bandwidth;
  return doc.dump(2);
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : config_to_json(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace swipt
