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

#include "eraser/partial_measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eraser/errors.hpp"

namespace eraser {

void validate(const PartialMeasurementOp &op) { require_unit_interval(op.alpha, "alpha"); }

std::string describe(const PartialMeasurementOp &op) {
    std::ostringstream out;
    out << "P(" << to_string(op.axis) << "," << to_string(op.branch) << "," << op.alpha << ")";
    return out.str();
}

Matrix2 branch_projector(Axis axis, Branch branch) {
    const Spinor &b = basis_vector(axis, branch);
    Matrix2 m{};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            m[r][c] = b[r] * std::conj(b[c]);
        }
    }
    return m;
}

Matrix2 no_click_operator(const PartialMeasurementOp &op) {
    validate(op);
    Matrix2 m = branch_projector(op.axis, op.branch);
    double shrink = std::sqrt(op.alpha) - 1.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            m[r][c] *= shrink;
        }
        m[r][r] += 1.0;
    }
    return m;
}

double click_probability(const PartialMeasurementOp &op, const PolarizationState &state) {
    validate(op);
    const Spinor &b = basis_vector(op.axis, op.branch);
    Amplitude overlap = std::conj(b[0]) * state.up + std::conj(b[1]) * state.right;
    return (1.0 - op.alpha) * std::norm(overlap) / state.norm_squared();
}

double no_click_probability(const PartialMeasurementOp &op, const PolarizationState &state) {
    return 1.0 - click_probability(op, state);
}

PolarizationState no_click_map(const PartialMeasurementOp &op, const PolarizationState &state,
                               TrackingMode mode) {
    Matrix2 m = no_click_operator(op);
    Amplitude up = m[0][0] * state.up + m[0][1] * state.right;
    Amplitude right = m[1][0] * state.up + m[1][1] * state.right;
    double survival = (std::norm(up) + std::norm(right)) / state.norm_squared();
    if (!(survival > kSurvivalFloor)) {
        throw ZeroSurvival("no-click outcome impossible for " + describe(op));
    }
    double weight = mode == TrackingMode::Weighted ? state.weight * survival : state.weight;
    return PolarizationState::from_amplitudes(up, right, weight);
}

MeasurementOutcome<PolarizationState> sample(const PartialMeasurementOp &op, const PolarizationState &state,
                                             TrackingMode mode, RandomStream &rng) {
    double p_click = click_probability(op, state);
    double u = rng.uniform();
    if (u < p_click) {
        return {OutcomeKind::Click, p_click, PolarizationState::basis(op.axis, op.branch)};
    }
    return {OutcomeKind::NoClick, 1.0 - p_click, no_click_map(op, state, mode)};
}

PartialMeasurementOp compose_same_axis(const PartialMeasurementOp &first, const PartialMeasurementOp &second) {
    validate(first);
    validate(second);
    if (first.axis != second.axis) {
        throw AxisMismatch("cannot compose " + describe(first) + " with " + describe(second) +
                           "; use apply_sequence");
    }
    if (first.branch == second.branch) {
        return {first.axis, first.branch, first.alpha * second.alpha};
    }
    if (first.alpha == second.alpha) {
        if (first.alpha == 0.0) {
            throw DomainError("complete measurements of both branches leave no surviving state");
        }
        return {first.axis, Branch::Plus, 1.0};
    }
    const PartialMeasurementOp &more = first.alpha < second.alpha ? first : second;
    const PartialMeasurementOp &less = first.alpha < second.alpha ? second : first;
    return {first.axis, more.branch, more.alpha / less.alpha};
}

PolarizationState apply_sequence(std::span<const PartialMeasurementOp> ops, const PolarizationState &state,
                                 TrackingMode mode) {
    PolarizationState s = state;
    for (const auto &op : ops) {
        s = no_click_map(op, s, mode);
    }
    return s;
}

}  // namespace eraser
