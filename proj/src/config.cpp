// Copyright 2026 The z2meson Authors
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

#include "z2meson/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace z2m {

namespace {

const std::set<std::string> kKeys = {
    "mode",      "L",          "m",           "eps",          "seed",         "out",
    "levels",    "kbar",       "sigma_k",     "x1",           "x2",           "dt",
    "t_final",   "measure_every", "exact_check", "s_cut",     "c_tol",        "z_tol",
    "label_rule", "stable_window", "packet_kbar", "packet_xbar", "packet_sigma", "simulate_max_L"};

std::invalid_argument bad(const std::string& key, const std::string& why) {
  return std::invalid_argument("config key '" + key + "': " + why);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw bad(key, "not a number: " + v);
    return d;
  } catch (const std::invalid_argument&) {
    throw bad(key, "not a number: " + v);
  } catch (const std::out_of_range&) {
    throw bad(key, "out of range: " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long d = std::stoll(v, &pos);
    if (pos != v.size()) throw bad(key, "not an integer: " + v);
    return d;
  } catch (const std::invalid_argument&) {
    throw bad(key, "not an integer: " + v);
  } catch (const std::out_of_range&) {
    throw bad(key, "out of range: " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw bad(key, "not a boolean: " + v);
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream tok(line);
    std::string item;
    while (tok >> item) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected key=value, got '" + item + "'");
      }
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_key_values(ss.str());
}

ExperimentConfig make_config(const KeyValues& kv) {
  for (const auto& [k, v] : kv) {
    if (!kKeys.count(k)) throw bad(k, "unknown key");
  }
  for (const char* req : {"mode", "L"}) {
    if (!kv.count(req)) throw bad(req, "required key is missing");
  }
  ExperimentConfig c;
  c.raw = kv;
  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };
  c.mode = *get("mode");
  if (c.mode != "spectrum" && c.mode != "qse_bench" && c.mode != "scatter" && c.mode != "circuit") {
    throw bad("mode", "expected spectrum, qse_bench, scatter or circuit");
  }
  c.model.L = static_cast<int>(to_int("L", *get("L")));
  if (auto v = get("m")) c.model.m = to_double("m", *v);
  if (auto v = get("eps")) c.model.eps = to_double("eps", *v);
  try {
    c.model.validate();
  } catch (const std::invalid_argument& e) {
    throw bad("L", e.what());
  }
  if (auto v = get("seed")) c.seed = static_cast<std::uint64_t>(to_int("seed", *v));
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("levels")) {
    c.levels = static_cast<int>(to_int("levels", *v));
    if (c.levels < 1) throw bad("levels", "must be >= 1");
  }
  auto& s = c.scatter;
  s.model = c.model;
  if (auto v = get("kbar")) s.kbar = static_cast<int>(to_int("kbar", *v));
  if (auto v = get("sigma_k")) s.sigma_k = to_double("sigma_k", *v);
  if (auto v = get("x1")) s.x1 = to_double("x1", *v);
  if (auto v = get("x2")) s.x2 = to_double("x2", *v);
  if (auto v = get("dt")) s.dt = to_double("dt", *v);
  if (auto v = get("t_final")) s.t_final = to_double("t_final", *v);
  if (auto v = get("measure_every")) s.measure_every = static_cast<int>(to_int("measure_every", *v));
  if (auto v = get("exact_check")) s.exact_check = to_bool("exact_check", *v);
  if (auto v = get("s_cut")) s.qse.s_cut = to_double("s_cut", *v);
  if (auto v = get("c_tol")) s.qse.c_tol = to_double("c_tol", *v);
  if (auto v = get("z_tol")) s.qse.z_tol = to_double("z_tol", *v);
  if (auto v = get("stable_window")) s.qse.stable_window = to_bool("stable_window", *v);
  if (auto v = get("label_rule")) {
    if (*v == "vector_branch") {
      s.qse.rule = LabelRule::VectorBranch;
    } else if (*v == "half_zone") {
      s.qse.rule = LabelRule::HalfZone;
    } else {
      throw bad("label_rule", "expected vector_branch or half_zone");
    }
  }
  s.lanczos.seed = c.seed;
  if (c.mode == "scatter") {
    // re-thrown with the key already in the message
    s = s.resolved();
  }
  if (auto v = get("packet_kbar")) c.packet_kbar = static_cast<int>(to_int("packet_kbar", *v));
  if (auto v = get("packet_xbar")) c.packet_xbar = to_double("packet_xbar", *v);
  if (auto v = get("packet_sigma")) c.packet_sigma = to_double("packet_sigma", *v);
  if (auto v = get("simulate_max_L")) c.simulate_max_L = static_cast<int>(to_int("simulate_max_L", *v));
  if (c.packet_xbar >= c.model.L) throw bad("packet_xbar", "must lie in [0, L)");
  return c;
}

}  // namespace z2m
