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

#pragma once

#include <map>
#include <string>

#include "z2meson/scattering.hpp"

namespace z2m {

// Key=value configuration. Lines may hold several space-separated pairs;
// '#' starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(const std::string& text);
KeyValues read_config_file(const std::string& path);

struct ExperimentConfig {
  std::string mode;  // spectrum | qse_bench | scatter | circuit
  ModelParams model;
  std::uint64_t seed = 12345;
  std::string out = "out";
  int levels = 8;  // eigenpairs for spectrum / qse_bench
  ScatterConfig scatter;
  // Packet used by circuit mode.
  int packet_kbar = 1;
  double packet_xbar = -1.0;  // < 0 selects (L-1)/2
  double packet_sigma = 0.0;  // <= 0 selects 2 pi / L
  int simulate_max_L = 8;     // statevector check only up to this size

  KeyValues raw;  // everything as given, for the manifest
};

// Throws std::invalid_argument naming the key on a missing required key
// (mode, L), an unknown key, or a bad value.
ExperimentConfig make_config(const KeyValues& kv);

}  // namespace z2m
