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
#include <complex>
#include <string_view>
#include <utility>

namespace eraser {

using Amplitude = std::complex<double>;
using Spinor = std::array<Amplitude, 2>;  // (up, right) coordinates

/// Tolerance for algebraic identities in double precision.
inline constexpr double kTolerance = 1e-12;

/// Polarization measurement axes.
///
/// X is the linear {up, right} basis, Y the diagonal {NE, SE} basis and Z the
/// circular {odot, otimes} basis. The three bases are mutually unbiased:
///
///   |NE>    = (|up> + |right>) / sqrt2      |SE>     = (|right> - |up>) / sqrt2
///   |odot>  = (|up> + i|right>) / sqrt2     |otimes> = (|up> - i|right>) / sqrt2
enum class Axis { X, Y, Z };

/// The two outcomes of an axis. For X, Plus is |up> and Minus is |right>.
enum class Branch { Plus, Minus };

constexpr Branch opposite(Branch b) { return b == Branch::Plus ? Branch::Minus : Branch::Plus; }

/// +1 for Plus, -1 for Minus.
constexpr int sign_of(Branch b) { return b == Branch::Plus ? 1 : -1; }

std::string_view to_string(Axis axis);
std::string_view to_string(Branch branch);

/// Unit basis vector of (axis, branch) in (up, right) coordinates.
const Spinor &basis_vector(Axis axis, Branch branch);

/// Single-photon polarization.
///
/// The amplitude pair is always kept at unit norm; `weight` carries the
/// relative intensity that survived earlier no-click events (1 for a fresh
/// source). In normalized tracking the weight is left alone.
struct PolarizationState {
    Amplitude up{1.0, 0.0};
    Amplitude right{0.0, 0.0};
    double weight = 1.0;

    /// Normalizes the amplitude pair; throws DegenerateState when it is zero.
    static PolarizationState from_amplitudes(Amplitude up, Amplitude right, double weight = 1.0);
    static PolarizationState basis(Axis axis, Branch branch);

    Spinor amplitudes() const { return {up, right}; }

    /// Amplitudes scaled by sqrt(weight): the vector relative to the source intensity.
    Spinor unnormalized() const;

    double norm_squared() const { return std::norm(up) + std::norm(right); }
};

/// (<plus|psi>, <minus|psi>) in the requested basis.
std::pair<Amplitude, Amplitude> components_in(const PolarizationState &state, Axis axis);

/// Inverse of components_in.
PolarizationState from_components(Axis axis, Amplitude plus, Amplitude minus, double weight = 1.0);

/// Angle of the polarization plane in degrees, atan(|up| / |right|).
///
/// Only magnitudes are used, so the value is meaningful for states whose two
/// amplitudes share a phase (all X/Y-only histories). Throws DegenerateState
/// when both amplitudes are below 1e-15.
double polarization_angle(const PolarizationState &state);

struct UncertaintySpreads {
    double delta_px;
    double delta_py;
};

/// Spreads of P_x and P_y after a partial up-measurement with unmeasured fraction alpha:
/// delta_px = 2 sqrt(alpha) / (1 + alpha), delta_py = (1 - alpha) / (1 + alpha).
UncertaintySpreads uncertainty_spreads(double alpha);

/// Probability that a diagonal photon keeps its Y outcome after a partial up-measurement:
/// ((1 + sqrt(alpha)) / sqrt(2 + 2 alpha))^2.
double y_correlation_single(double alpha);

/// Euclidean distance between the amplitude pairs (weights ignored).
double amplitude_distance(const PolarizationState &a, const PolarizationState &b);

/// Throws DomainError unless value is a finite number in [0, 1].
void require_unit_interval(double value, std::string_view what);

}  // namespace eraser
