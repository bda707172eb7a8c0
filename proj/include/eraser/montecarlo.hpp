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

#include <array>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "eraser/cascade.hpp"
#include "eraser/epr.hpp"
#include "eraser/partial_measurement.hpp"
#include "eraser/polarization.hpp"

namespace eraser {

enum class Preparation {
    SinglePhoton,  // one photon prepared in a Y branch
    EprPair,
};

/// `n_detectors` detectors on random beams of an X branch of the cascade.
struct CascadeStep {
    Branch branch = Branch::Plus;
    int n_detectors = 0;

    bool operator==(const CascadeStep &) const = default;
};

struct PlanStep {
    Photon photon = Photon::A;
    std::variant<PartialMeasurementOp, CascadeStep> action;
};

struct ExperimentConfig {
    Preparation preparation = Preparation::EprPair;
    Branch initial_branch = Branch::Plus;  // Y branch of a single photon
    std::vector<PlanStep> plan;
    Axis final_axis = Axis::Y;
    std::int64_t trials = 100000;
    std::uint64_t master_seed = 0;
    TrackingMode mode = TrackingMode::Normalized;
    int n_beams = 100;
    unsigned threads = 1;  // 0 picks the hardware concurrency
};

/// Throws ConfigError for inconsistent plans (B steps on a single photon,
/// alpha outside [0, 1], more detectors than beams, no trials).
void validate(const ExperimentConfig &config);

/// One trial. Results are +1 / -1 along the final axis; for a single photon
/// `b_result` is the prepared branch, so agreement means "kept its Y value".
struct TrialRecord {
    std::int64_t trial = 0;
    int clicked_step = -1;  // index into the plan, -1 if every detector stayed silent
    int detector = -1;      // beam index for cascade clicks
    int a_result = 0;
    int b_result = 0;
    double weight = 1.0;  // surviving intensity in weighted mode

    bool survived() const { return clicked_step < 0; }
};

struct TrialStats {
    std::int64_t total = 0;
    std::int64_t clicked = 0;
    std::int64_t surviving = 0;
    std::int64_t agreement_count = 0;  // among surviving trials
    double agreement_rate = 0.0;       // agreement_count / surviving
    double std_error = 0.0;            // binomial standard error of agreement_rate
    double analytic_prediction = 0.0;  // agreement probability given survival
    double analytic_survival = 0.0;    // product of per-step no-click probabilities
    std::int64_t unconditional_agreement_count = 0;  // over all trials, clicked ones included
};

TrialStats run_experiment(const ExperimentConfig &config);

/// Same, also filling one record per trial in trial order.
TrialStats run_experiment(const ExperimentConfig &config, std::vector<TrialRecord> &log);

/// (agreement_rate - analytic_prediction) / std_error. Zero when both rates
/// coincide, +-infinity when the error vanishes but the rates differ.
double estimate_vs_analytic(const TrialStats &stats);

struct AnalyticExpectation {
    double survival = 0.0;
    double agreement = 0.0;  // NaN when no trial can survive
};

/// Closed-form agreement for X-only plans with a Y final measurement, the
/// silent-chain Born probability otherwise.
AnalyticExpectation analytic_expectation(const ExperimentConfig &config);

struct FinalOutcome {
    int a = 0;
    int b = 0;

    bool agree() const { return a == b; }
};

using OutcomePredicate = std::function<bool(const FinalOutcome &)>;

struct ConditionalClickReport {
    std::int64_t survivors = 0;         // trials silent through the measurement stage
    std::int64_t condition_count = 0;   // survivors whose would-be outcome meets the predicate
    double condition_rate = 0.0;        // condition_count / survivors
    std::int64_t condition_clicks = 0;  // counter-stage clicks among those
    double click_given_condition = 0.0;
    double analytic_click_given_condition = 0.0;
    double counter_click_rate = 0.0;  // over all survivors
    std::int64_t counter_survivors = 0;
    std::int64_t counter_survivor_disagreements = 0;
    double disagreement_after_counter = 0.0;  // among counter survivors
    double weight_before_counter = 0.0;       // silent-chain intensity entering the counter stage
    double weight_after_counter = 0.0;
};

/// Counter-measurement click statistic conditioned on the outcome the pair
/// would have produced without the counter stage.
///
/// Steps [0, counter_start) form the measurement stage and the rest the
/// counter stage. For every surviving trial the no-counter outcome and the
/// counter-stage result are drawn from a maximal coupling of the two event
/// distributions, so each marginal is exact and a click "captures" a
/// would-be outcome whenever the counter stage has no silent mass for it.
/// Throws InsufficientStatistics when fewer than 100 survivors meet the predicate.
ConditionalClickReport conditional_click_stat(const ExperimentConfig &config, std::size_t counter_start,
                                              const OutcomePredicate &condition);

}  // namespace eraser
