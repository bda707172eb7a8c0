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

#include "eraser/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "eraser/errors.hpp"

namespace eraser {

double Cascade::residual_intensity() const {
    double through = 1.0;
    for (double t : transmissions) {
        through *= t;
    }
    return through;
}

Cascade build_cascade(int n_beams) {
    if (n_beams < 1) {
        throw DomainError("a cascade needs at least one beam, got " + std::to_string(n_beams));
    }
    Cascade c;
    c.n_beams = n_beams;
    c.transmissions.resize(n_beams);
    c.intensities.resize(n_beams);
    for (int i = 0; i < n_beams; ++i) {
        c.transmissions[i] = static_cast<double>(n_beams - 1 - i) / static_cast<double>(n_beams - i);
    }
    // Propagate the light mirror by mirror.
    double incident = 1.0;
    for (int i = 0; i < n_beams; ++i) {
        c.intensities[i] = incident * (1.0 - c.transmissions[i]);
        incident *= c.transmissions[i];
    }
    return c;
}

void validate(const DetectorPlacement &placement, const Cascade &cascade) {
    std::vector<int> sorted = placement.beam_indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("detector placement has duplicate beam indices");
    }
    if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= cascade.n_beams)) {
        throw DomainError("detector beam index out of range [0, " + std::to_string(cascade.n_beams) + ")");
    }
}

DetectorPlacement random_placement(Branch branch, int count, const Cascade &cascade, RandomStream &rng) {
    if (count < 0 || count > cascade.n_beams) {
        throw DomainError("cannot place " + std::to_string(count) + " detectors on " +
                          std::to_string(cascade.n_beams) + " beams");
    }
    std::vector<int> beams(cascade.n_beams);
    std::iota(beams.begin(), beams.end(), 0);
    // Partial Fisher-Yates: the first `count` slots end up a uniform subset.
    for (int i = 0; i < count; ++i) {
        auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(cascade.n_beams - i)));
        std::swap(beams[i], beams[j]);
    }
    beams.resize(count);
    return {branch, std::move(beams)};
}

double unmeasured_fraction(const DetectorPlacement &placement, const Cascade &cascade) {
    validate(placement, cascade);
    std::vector<bool> measured(cascade.n_beams, false);
    for (int i : placement.beam_indices) {
        measured[i] = true;
    }
    double sum = 0.0;
    for (int i = 0; i < cascade.n_beams; ++i) {
        if (!measured[i]) {
            sum += cascade.intensities[i];
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

PartialMeasurementOp equivalent_op(const DetectorPlacement &placement, const Cascade &cascade) {
    return {Axis::X, placement.branch, unmeasured_fraction(placement, cascade)};
}

std::vector<double> detector_click_probabilities(double branch_probability, const DetectorPlacement &placement,
                                                 const Cascade &cascade) {
    validate(placement, cascade);
    std::vector<double> p;
    p.reserve(placement.beam_indices.size());
    for (int i : placement.beam_indices) {
        p.push_back(branch_probability * cascade.intensities[i]);
    }
    return p;
}

std::optional<std::size_t> select_detector(double u, double branch_probability, const DetectorPlacement &placement,
                                           const Cascade &cascade) {
    double acc = 0.0;
    for (std::size_t k = 0; k < placement.beam_indices.size(); ++k) {
        acc += branch_probability * cascade.intensities[placement.beam_indices[k]];
        if (u < acc) {
            return k;
        }
    }
    return std::nullopt;
}

PolarizationState cascade_no_click_state(const PolarizationState &state, const DetectorPlacement &placement,
                                         const Cascade &cascade, TrackingMode mode) {
    return no_click_map(equivalent_op(placement, cascade), state, mode);
}

CascadeOutcome cascade_measure(const PolarizationState &state, const DetectorPlacement &placement,
                               const Cascade &cascade, RandomStream &rng, TrackingMode mode) {
    validate(placement, cascade);
    const Spinor &b = basis_vector(Axis::X, placement.branch);
    double branch_probability =
        std::norm(std::conj(b[0]) * state.up + std::conj(b[1]) * state.right) / state.norm_squared();
    double u = rng.uniform();
    if (auto k = select_detector(u, branch_probability, placement, cascade)) {
        int beam = placement.beam_indices[*k];
        double p = branch_probability * cascade.intensities[beam];
        return {{OutcomeKind::Click, p, PolarizationState::basis(Axis::X, placement.branch)}, beam};
    }
    PartialMeasurementOp op = equivalent_op(placement, cascade);
    return {{OutcomeKind::NoClick, no_click_probability(op, state), no_click_map(op, state, mode)}, std::nullopt};
}

PlacementInvarianceReport placement_invariance_check(const PolarizationState &state, const Cascade &cascade,
                                                     const std::vector<int> &sizes, int trials, RandomStream &rng,
                                                     Branch branch) {
    if (trials < 1) {
        throw DomainError("placement_invariance_check needs at least one trial");
    }
    PlacementInvarianceReport report;
    for (int size : sizes) {
        DetectorPlacement a = random_placement(branch, size, cascade, rng);
        DetectorPlacement b = random_placement(branch, size, cascade, rng);
        PartialMeasurementOp abstract{Axis::X, branch,
                                      static_cast<double>(cascade.n_beams - size) / cascade.n_beams};

        PlacementInvarianceEntry e;
        e.size = size;
        e.expected_click_rate = click_probability(abstract, state);
        if (e.expected_click_rate < 1.0) {
            PolarizationState ref = no_click_map(abstract, state, TrackingMode::Normalized);
            PolarizationState sa = cascade_no_click_state(state, a, cascade);
            PolarizationState sb = cascade_no_click_state(state, b, cascade);
            e.state_deviation = std::max({amplitude_distance(sa, sb), amplitude_distance(sa, ref),
                                          amplitude_distance(sb, ref)});
        }

        long clicks_a = 0;
        long clicks_b = 0;
        for (int t = 0; t < trials; ++t) {
            clicks_a += cascade_measure(state, a, cascade, rng).outcome.clicked();
            clicks_b += cascade_measure(state, b, cascade, rng).outcome.clicked();
        }
        e.click_rate_a = static_cast<double>(clicks_a) / trials;
        e.click_rate_b = static_cast<double>(clicks_b) / trials;
        double p = e.expected_click_rate;
        double se = std::sqrt(p * (1.0 - p) / trials);
        if (se > 0.0) {
            e.max_abs_z = std::max(std::abs(e.click_rate_a - p), std::abs(e.click_rate_b - p)) / se;
        } else {
            e.max_abs_z = (e.click_rate_a == p && e.click_rate_b == p) ? 0.0 : INFINITY;
        }
        report.max_state_deviation = std::max(report.max_state_deviation, e.state_deviation);
        report.max_abs_z = std::max(report.max_abs_z, e.max_abs_z);
        report.entries.push_back(e);
    }
    return report;
}

}  // namespace eraser
