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
#include <span>
#include <string>

#include "eraser/polarization.hpp"
#include "eraser/random.hpp"

namespace eraser {

/// Partial measurement of one branch.
///
/// Detectors cover a fraction (1 - alpha) of the intensity of `branch` along
/// `axis`; alpha is the UNMEASURED fraction. alpha = 1 is the identity and
/// alpha = 0 a complete measurement of that branch. A silent detector scales
/// the branch amplitude by sqrt(alpha); a click collapses onto the branch.
struct PartialMeasurementOp {
    Axis axis = Axis::X;
    Branch branch = Branch::Plus;
    double alpha = 1.0;

    static PartialMeasurementOp identity() { return {Axis::X, Branch::Plus, 1.0}; }

    bool operator==(const PartialMeasurementOp &) const = default;
};

/// Throws DomainError if alpha is not in [0, 1].
void validate(const PartialMeasurementOp &op);

std::string describe(const PartialMeasurementOp &op);

enum class TrackingMode {
    Normalized,  // renormalize after each no-click, weight untouched
    Weighted,    // multiply weight by the no-click probability
};

enum class OutcomeKind { Click, NoClick };

template <class State>
struct MeasurementOutcome {
    OutcomeKind kind;
    double probability;  // probability of this outcome given the input state
    State post_state;

    bool clicked() const { return kind == OutcomeKind::Click; }
};

using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

/// No-click Kraus operator I + (sqrt(alpha) - 1)|b><b| in (up, right) coordinates.
Matrix2 no_click_operator(const PartialMeasurementOp &op);

/// Projector |b><b| onto the measured branch.
Matrix2 branch_projector(Axis axis, Branch branch);

/// Squared norms below this count as an impossible outcome.
inline constexpr double kSurvivalFloor = 1e-24;

double click_probability(const PartialMeasurementOp &op, const PolarizationState &state);
double no_click_probability(const PartialMeasurementOp &op, const PolarizationState &state);

/// State after the detectors stayed silent. Throws ZeroSurvival when silence is impossible.
PolarizationState no_click_map(const PartialMeasurementOp &op, const PolarizationState &state,
                               TrackingMode mode);

/// Draws click / no-click. A click leaves the exact basis vector of the
/// measured branch with weight 1.
MeasurementOutcome<PolarizationState> sample(const PartialMeasurementOp &op, const PolarizationState &state,
                                             TrackingMode mode, RandomStream &rng);

/// Single operator equivalent to applying both (same-axis operators commute).
///
/// Same branch: alpha1 * alpha2. Opposite branches: only the ratio of the
/// surviving intensities matters, so the result sits on the more-measured
/// branch with alpha = min / max, which keeps alpha <= 1. The normalized
/// action equals sequential application; the overall weight is lower by a
/// factor max(alpha1, alpha2).
PartialMeasurementOp compose_same_axis(const PartialMeasurementOp &first, const PartialMeasurementOp &second);

/// Left-to-right fold of no_click_map.
PolarizationState apply_sequence(std::span<const PartialMeasurementOp> ops, const PolarizationState &state,
                                 TrackingMode mode);

}  // namespace eraser
