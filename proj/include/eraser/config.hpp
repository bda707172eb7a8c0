// Copyright 2026 The Partial Eraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eraser/montecarlo.hpp"

namespace eraser {

// Experiment files are line oriented:
//
//   # comment
//   [experiment]
//   preparation = epr            # or: single
//   initial_branch = plus        # single photon only; Y branch (plus = NE)
//   mode = normalized            # or: weighted
//   trials = 100000
//   seed = 42
//   final_axis = y
//   n_beams = 100
//   [plan]
//   op = A,x,up,0.5              # photon, axis, branch, unmeasured fraction
//   cascade = B,right,50         # photon, X branch, detector count
//
// `op` and `cascade` lines keep their order. Section headers are optional.
// Branch names: plus/minus for any axis, or up/right (x), ne/se (y),
// odot/otimes (z).

struct ParsedConfig {
    ExperimentConfig config;
    bool has_seed = false;  // the file set `seed`
};

/// Throws ConfigError with the offending line number.
ParsedConfig parse_config(std::istream &in);

/// Throws IoError when the file cannot be read.
ParsedConfig load_config(const std::string &path);

/// Writes a config that parse_config reads back to the same experiment.
std::string format_config(const ExperimentConfig &config);

Axis parse_axis(std::string_view text);
Branch parse_branch(std::string_view text, Axis axis);
TrackingMode parse_mode(std::string_view text);
std::string_view to_string(TrackingMode mode);

/// 17 significant digits, '.' decimal point.
std::string format_double(double value);

void write_stats_csv(std::ostream &out, const TrialStats &stats);
void write_trial_log_csv(std::ostream &out, const std::vector<TrialRecord> &records);

}  // namespace eraser
