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

#include "eraser/polarization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eraser/errors.hpp"

namespace eraser {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kDegenerate = 1e-15;

const std::array<std::array<Spinor, 2>, 3> kBasis = {{
    {{{Amplitude{1, 0}, Amplitude{0, 0}}, {Amplitude{0, 0}, Amplitude{1, 0}}}},
    {{{Amplitude{kInvSqrt2, 0}, Amplitude{kInvSqrt2, 0}}, {Amplitude{-kInvSqrt2, 0}, Amplitude{kInvSqrt2, 0}}}},
    {{{Amplitude{kInvSqrt2, 0}, Amplitude{0, kInvSqrt2}}, {Amplitude{kInvSqrt2, 0}, Amplitude{0, -kInvSqrt2}}}},
}};

Amplitude inner(const Spinor &bra, Amplitude up, Amplitude right) {
    return std::conj(bra[0]) * up + std::conj(bra[1]) * right;
}

}  // namespace

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::X:
            return "x";
        case Axis::Y:
            return "y";
        case Axis::Z:
            return "z";
    }
    return "?";
}

std::string_view to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

const Spinor &basis_vector(Axis axis, Branch branch) {
    return kBasis[static_cast<std::size_t>(axis)][branch == Branch::Plus ? 0 : 1];
}

PolarizationState PolarizationState::from_amplitudes(Amplitude up, Amplitude right, double weight) {
    double n = std::sqrt(std::norm(up) + std::norm(right));
    if (!(n > kDegenerate)) {
        throw DegenerateState("polarization amplitudes vanish");
    }
    return PolarizationState{up / n, right / n, weight};
}

PolarizationState PolarizationState::basis(Axis axis, Branch branch) {
    const Spinor &v = basis_vector(axis, branch);
    return PolarizationState{v[0], v[1], 1.0};
}

Spinor PolarizationState::unnormalized() const {
    double s = std::sqrt(weight);
    return {up * s, right * s};
}

std::pair<Amplitude, Amplitude> components_in(const PolarizationState &state, Axis axis) {
    return {inner(basis_vector(axis, Branch::Plus), state.up, state.right),
            inner(basis_vector(axis, Branch::Minus), state.up, state.right)};
}

PolarizationState from_components(Axis axis, Amplitude plus, Amplitude minus, double weight) {
    const Spinor &p = basis_vector(axis, Branch::Plus);
    const Spinor &m = basis_vector(axis, Branch::Minus);
    return PolarizationState{plus * p[0] + minus * m[0], plus * p[1] + minus * m[1], weight};
}

double polarization_angle(const PolarizationState &state) {
    double up = std::abs(state.up);
    double right = std::abs(state.right);
    if (up < kDegenerate && right < kDegenerate) {
        throw DegenerateState("polarization angle undefined for a zero state");
    }
    return std::atan2(up, right) * 180.0 / std::numbers::pi;
}

UncertaintySpreads uncertainty_spreads(double alpha) {
    require_unit_interval(alpha, "alpha");
    return {2.0 * std::sqrt(alpha) / (1.0 + alpha), (1.0 - alpha) / (1.0 + alpha)};
}

double y_correlation_single(double alpha) {
    require_unit_interval(alpha, "alpha");
    double c = (1.0 + std::sqrt(alpha)) / std::sqrt(2.0 + 2.0 * alpha);
    return c * c;
}

double amplitude_distance(const PolarizationState &a, const PolarizationState &b) {
    return std::sqrt(std::norm(a.up - b.up) + std::norm(a.right - b.right));
}

void require_unit_interval(double value, std::string_view what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace eraser
