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

#include <optional>
#include <vector>

#include "eraser/partial_measurement.hpp"
#include "eraser/polarization.hpp"
#include "eraser/random.hpp"

namespace eraser {

/// Graded mirror chain that splits one X branch into n equal beams.
///
/// Mirror i passes transmissions[i] of the light reaching it and diverts the
/// rest into beam i: (n-1)/n, (n-2)/(n-1), ..., 1/2, 0 (a full reflector).
/// All beams share one phase.
struct Cascade {
    int n_beams = 0;
    std::vector<double> transmissions;
    std::vector<double> intensities;  // fraction of the branch intensity in each beam

    /// Light that passes the last mirror; zero for a well-formed cascade.
    double residual_intensity() const;
};

/// Throws DomainError when n_beams < 1.
Cascade build_cascade(int n_beams);

/// Detectors on a subset of the beams of one X branch.
struct DetectorPlacement {
    Branch branch = Branch::Plus;
    std::vector<int> beam_indices;
};

/// Throws DomainError for duplicate or out-of-range indices.
void validate(const DetectorPlacement &placement, const Cascade &cascade);

/// `count` distinct beams chosen uniformly at random.
DetectorPlacement random_placement(Branch branch, int count, const Cascade &cascade, RandomStream &rng);

/// Summed intensity of the beams without a detector.
double unmeasured_fraction(const DetectorPlacement &placement, const Cascade &cascade);

/// Abstract operator with the same action as the placement.
PartialMeasurementOp equivalent_op(const DetectorPlacement &placement, const Cascade &cascade);

/// Probability that each listed detector fires, given the probability that
/// the photon is in the placement's branch.
std::vector<double> detector_click_probabilities(double branch_probability, const DetectorPlacement &placement,
                                                 const Cascade &cascade);

/// Index into placement.beam_indices of the detector selected by the uniform
/// draw u, or nullopt when u falls outside all detector intervals.
std::optional<std::size_t> select_detector(double u, double branch_probability, const DetectorPlacement &placement,
                                           const Cascade &cascade);

struct CascadeOutcome {
    MeasurementOutcome<PolarizationState> outcome;
    std::optional<int> detector;  // beam index of the detector that fired
};

CascadeOutcome cascade_measure(const PolarizationState &state, const DetectorPlacement &placement,
                               const Cascade &cascade, RandomStream &rng,
                               TrackingMode mode = TrackingMode::Normalized);

/// Post-state when no detector of the placement fires.
PolarizationState cascade_no_click_state(const PolarizationState &state, const DetectorPlacement &placement,
                                         const Cascade &cascade, TrackingMode mode = TrackingMode::Normalized);

struct PlacementInvarianceEntry {
    int size = 0;
    double state_deviation = 0.0;  // between two random placements and against the abstract operator
    double click_rate_a = 0.0;
    double click_rate_b = 0.0;
    double expected_click_rate = 0.0;
    double max_abs_z = 0.0;
};

struct PlacementInvarianceReport {
    std::vector<PlacementInvarianceEntry> entries;
    double max_state_deviation = 0.0;
    double max_abs_z = 0.0;
};

/// For each size, draws two random placements on `branch` and checks that
/// their silent post-states coincide and that their click rates over
/// `trials` draws agree with the analytic rate.
PlacementInvarianceReport placement_invariance_check(const PolarizationState &state, const Cascade &cascade,
                                                     const std::vector<int> &sizes, int trials, RandomStream &rng,
                                                     Branch branch = Branch::Plus);

}  // namespace eraser
