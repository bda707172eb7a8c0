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
#include <utility>

#include "eraser/partial_measurement.hpp"
#include "eraser/polarization.hpp"
#include "eraser/random.hpp"

namespace eraser {

enum class Photon { A, B };

std::string_view to_string(Photon photon);

/// Two-photon polarization state.
///
/// Amplitudes are stored in the fixed order (up-up, right-right, up-right,
/// right-up), first letter photon A. As with PolarizationState the amplitude
/// vector is kept at unit norm and `weight` carries the surviving intensity.
struct PairState {
    std::array<Amplitude, 4> amplitudes{};
    double weight = 1.0;

    static PairState from_amplitudes(const std::array<Amplitude, 4> &amps, double weight = 1.0);
    static PairState product(const PolarizationState &a, const PolarizationState &b);

    /// Amplitude of |a>_A |b>_B with 0 = up, 1 = right.
    Amplitude at(int a, int b) const { return amplitudes[index(a, b)]; }

    static constexpr std::size_t index(int a, int b) {
        return a == b ? static_cast<std::size_t>(a) : (a == 0 ? 2u : 3u);
    }

    std::array<Amplitude, 4> unnormalized() const;
    double norm_squared() const;
};

/// (|up,up> + |right,right>) / sqrt2.
PairState make_epr();

/// Overlaps with |EPR> = (|NE,NE> + |SE,SE>)/sqrt2 and the anti-correlated
/// |anti-EPR> = (|NE,SE> + |SE,NE>)/sqrt2 = (|right,right> - |up,up>)/sqrt2.
struct EprDecomposition {
    Amplitude epr;
    Amplitude anti_epr;
};

EprDecomposition epr_decompose(const PairState &pair);

/// Unmeasured fractions of A-up (alpha), A-right (beta), B-up (gamma) and
/// B-right (delta).
struct IntensityQuadruple {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
};

void validate(const IntensityQuadruple &q);

/// K = beta*delta / (alpha*gamma). Infinite when alpha*gamma = 0 < beta*delta.
double k_ratio(const IntensityQuadruple &q);

/// Correlation of the two Y outcomes, ((1 + sqrt K) / sqrt(2 + 2K))^2.
///
/// Exactly 0.5 when one side of the ratio vanishes; DomainError when both do.
double y_correlation_pair(const IntensityQuadruple &q);

struct WeightedEprAmplitudes {
    double epr;
    double anti_epr;
};

/// EPR and anti-EPR amplitudes relative to the source intensity after the
/// quadruple's silent measurements: ((sqrt(bd) + sqrt(ag)) / 2, (sqrt(bd) - sqrt(ag)) / 2).
WeightedEprAmplitudes weighted_epr_track(const IntensityQuadruple &q);

/// The four X-axis operators of a quadruple, in the order A-up, A-right, B-up, B-right.
std::array<std::pair<Photon, PartialMeasurementOp>, 4> quadruple_ops(const IntensityQuadruple &q);

/// Applies the silent no-click map of `op` to one photon of the pair.
PairState apply_partial_pair(const PairState &pair, Photon photon, const PartialMeasurementOp &op,
                             TrackingMode mode);

/// Applies quadruple_ops(q) to |EPR>.
PairState quadruple_state(const IntensityQuadruple &q, TrackingMode mode);

/// Probability that `photon` is found in (axis, branch).
double branch_probability(const PairState &pair, Photon photon, Axis axis, Branch branch);

double pair_click_probability(const PairState &pair, Photon photon, const PartialMeasurementOp &op);

/// Projects `photon` onto (axis, branch); the partner is left in its
/// conditional state. Weight is reset to 1.
PairState collapse(const PairState &pair, Photon photon, Axis axis, Branch branch);

MeasurementOutcome<PairState> sample_pair(const PairState &pair, Photon photon, const PartialMeasurementOp &op,
                                          TrackingMode mode, RandomStream &rng);

/// Joint Born probabilities of measuring both photons along `axis`, ordered
/// (plus,plus), (plus,minus), (minus,plus), (minus,minus).
std::array<double, 4> joint_probabilities(const PairState &pair, Axis axis);

/// Final results (+1 / -1) of measuring both photons along `axis`.
std::pair<int, int> sample_joint(const PairState &pair, Axis axis, RandomStream &rng);

inline std::pair<int, int> sample_y_pair(const PairState &pair, RandomStream &rng) {
    return sample_joint(pair, Axis::Y, rng);
}

double pair_distance(const PairState &a, const PairState &b);

}  // namespace eraser
