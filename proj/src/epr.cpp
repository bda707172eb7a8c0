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

#include "eraser/epr.hpp"

#include <cmath>
#include <limits>

#include "eraser/errors.hpp"

namespace eraser {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kDegenerate = 1e-15;

// Pair amplitudes as a 2x2 matrix indexed [a][b].
Matrix2 to_matrix(const std::array<Amplitude, 4> &amps) {
    Matrix2 m{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            m[a][b] = amps[PairState::index(a, b)];
        }
    }
    return m;
}

std::array<Amplitude, 4> from_matrix(const Matrix2 &m) {
    std::array<Amplitude, 4> amps{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            amps[PairState::index(a, b)] = m[a][b];
        }
    }
    return amps;
}

Matrix2 act(const Matrix2 &op, const Matrix2 &m, Photon photon) {
    Matrix2 out{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Amplitude s{};
            for (int c = 0; c < 2; ++c) {
                s += photon == Photon::A ? op[a][c] * m[c][b] : op[b][c] * m[a][c];
            }
            out[a][b] = s;
        }
    }
    return out;
}

double norm_squared(const std::array<Amplitude, 4> &amps) {
    double n = 0.0;
    for (const auto &x : amps) {
        n += std::norm(x);
    }
    return n;
}

}  // namespace

std::string_view to_string(Photon photon) { return photon == Photon::A ? "A" : "B"; }

PairState PairState::from_amplitudes(const std::array<Amplitude, 4> &amps, double weight) {
    double n = std::sqrt(eraser::norm_squared(amps));
    if (!(n > kDegenerate)) {
        throw DegenerateState("pair amplitudes vanish");
    }
    PairState p;
    for (std::size_t i = 0; i < 4; ++i) {
        p.amplitudes[i] = amps[i] / n;
    }
    p.weight = weight;
    return p;
}

PairState PairState::product(const PolarizationState &a, const PolarizationState &b) {
    Spinor sa = a.amplitudes();
    Spinor sb = b.amplitudes();
    Matrix2 m{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m[i][j] = sa[i] * sb[j];
        }
    }
    return from_amplitudes(from_matrix(m), a.weight * b.weight);
}

std::array<Amplitude, 4> PairState::unnormalized() const {
    double s = std::sqrt(weight);
    std::array<Amplitude, 4> out = amplitudes;
    for (auto &x : out) {
        x *= s;
    }
    return out;
}

double PairState::norm_squared() const { return eraser::norm_squared(amplitudes); }

PairState make_epr() {
    PairState p;
    p.amplitudes = {Amplitude{kInvSqrt2, 0}, Amplitude{kInvSqrt2, 0}, Amplitude{}, Amplitude{}};
    p.weight = 1.0;
    return p;
}

EprDecomposition epr_decompose(const PairState &pair) {
    Amplitude uu = pair.at(0, 0);
    Amplitude rr = pair.at(1, 1);
    return {(uu + rr) * kInvSqrt2, (rr - uu) * kInvSqrt2};
}

void validate(const IntensityQuadruple &q) {
    require_unit_interval(q.alpha, "alpha");
    require_unit_interval(q.beta, "beta");
    require_unit_interval(q.gamma, "gamma");
    require_unit_interval(q.delta, "delta");
}

double k_ratio(const IntensityQuadruple &q) {
    validate(q);
    double ag = q.alpha * q.gamma;
    double bd = q.beta * q.delta;
    if (ag == 0.0) {
        if (bd == 0.0) {
            throw DomainError("K undefined: both products of the quadruple vanish");
        }
        return std::numeric_limits<double>::infinity();
    }
    return bd / ag;
}

double y_correlation_pair(const IntensityQuadruple &q) {
    validate(q);
    double ag = q.alpha * q.gamma;
    double bd = q.beta * q.delta;
    if (ag == 0.0 && bd == 0.0) {
        throw DomainError("correlation undefined: both products of the quadruple vanish");
    }
    // Written in the products rather than K so a vanishing side gives exactly 1/2.
    double s = std::sqrt(bd) + std::sqrt(ag);
    return s * s / (2.0 * (ag + bd));
}

WeightedEprAmplitudes weighted_epr_track(const IntensityQuadruple &q) {
    validate(q);
    double ag = std::sqrt(q.alpha * q.gamma);
    double bd = std::sqrt(q.beta * q.delta);
    return {(bd + ag) / 2.0, (bd - ag) / 2.0};
}

std::array<std::pair<Photon, PartialMeasurementOp>, 4> quadruple_ops(const IntensityQuadruple &q) {
    return {{
        {Photon::A, {Axis::X, Branch::Plus, q.alpha}},
        {Photon::A, {Axis::X, Branch::Minus, q.beta}},
        {Photon::B, {Axis::X, Branch::Plus, q.gamma}},
        {Photon::B, {Axis::X, Branch::Minus, q.delta}},
    }};
}

PairState apply_partial_pair(const PairState &pair, Photon photon, const PartialMeasurementOp &op,
                             TrackingMode mode) {
    Matrix2 m = act(no_click_operator(op), to_matrix(pair.amplitudes), photon);
    std::array<Amplitude, 4> amps = from_matrix(m);
    double survival = eraser::norm_squared(amps) / pair.norm_squared();
    if (!(survival > kSurvivalFloor)) {
        throw ZeroSurvival("no-click outcome impossible for " + describe(op) + " on photon " +
                           std::string(to_string(photon)));
    }
    double weight = mode == TrackingMode::Weighted ? pair.weight * survival : pair.weight;
    return PairState::from_amplitudes(amps, weight);
}

PairState quadruple_state(const IntensityQuadruple &q, TrackingMode mode) {
    PairState s = make_epr();
    for (const auto &[photon, op] : quadruple_ops(q)) {
        s = apply_partial_pair(s, photon, op, mode);
    }
    return s;
}

double branch_probability(const PairState &pair, Photon photon, Axis axis, Branch branch) {
    Matrix2 m = act(branch_projector(axis, branch), to_matrix(pair.amplitudes), photon);
    return eraser::norm_squared(from_matrix(m)) / pair.norm_squared();
}

double pair_click_probability(const PairState &pair, Photon photon, const PartialMeasurementOp &op) {
    validate(op);
    return (1.0 - op.alpha) * branch_probability(pair, photon, op.axis, op.branch);
}

PairState collapse(const PairState &pair, Photon photon, Axis axis, Branch branch) {
    Matrix2 m = act(branch_projector(axis, branch), to_matrix(pair.amplitudes), photon);
    return PairState::from_amplitudes(from_matrix(m), 1.0);
}

MeasurementOutcome<PairState> sample_pair(const PairState &pair, Photon photon, const PartialMeasurementOp &op,
                                          TrackingMode mode, RandomStream &rng) {
    double p_click = pair_click_probability(pair, photon, op);
    if (rng.uniform() < p_click) {
        return {OutcomeKind::Click, p_click, collapse(pair, photon, op.axis, op.branch)};
    }
    return {OutcomeKind::NoClick, 1.0 - p_click, apply_partial_pair(pair, photon, op, mode)};
}

std::array<double, 4> joint_probabilities(const PairState &pair, Axis axis) {
    Matrix2 m = to_matrix(pair.amplitudes);
    double total = pair.norm_squared();
    std::array<double, 4> p{};
    const Branch branches[2] = {Branch::Plus, Branch::Minus};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Spinor &va = basis_vector(axis, branches[i]);
            const Spinor &vb = basis_vector(axis, branches[j]);
            Amplitude amp{};
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    amp += std::conj(va[a]) * std::conj(vb[b]) * m[a][b];
                }
            }
            p[2 * i + j] = std::norm(amp) / total;
        }
    }
    return p;
}

std::pair<int, int> sample_joint(const PairState &pair, Axis axis, RandomStream &rng) {
    std::array<double, 4> p = joint_probabilities(pair, axis);
    double u = rng.uniform();
    double acc = 0.0;
    int k = -1;
    for (int i = 0; i < 4; ++i) {
        acc += p[i];
        if (u < acc) {
            k = i;
            break;
        }
    }
    if (k < 0) {
        // Rounding left u past the last cumulative sum.
        k = 3;
        while (k > 0 && p[k] == 0.0) {
            --k;
        }
    }
    return {k < 2 ? 1 : -1, k % 2 == 0 ? 1 : -1};
}

double pair_distance(const PairState &a, const PairState &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        d += std::norm(a.amplitudes[i] - b.amplitudes[i]);
    }
    return std::sqrt(d);
}

}  // namespace eraser
