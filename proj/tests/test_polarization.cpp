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

#include <gtest/gtest.h>

#include <cmath>

#include "eraser/errors.hpp"
#include "eraser/partial_measurement.hpp"
#include "eraser/polarization.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

namespace eraser {
namespace {

constexpr double kTol = 1e-12;

PolarizationState ne() { return PolarizationState::basis(Axis::Y, Branch::Plus); }

PolarizationState measured_ne(double alpha) {
    return no_click_map({Axis::X, Branch::Plus, alpha}, ne(), TrackingMode::Normalized);
}

TEST(Basis, MatchesReferenceVectors) {
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        for (Branch b : {Branch::Plus, Branch::Minus}) {
            const Spinor &v = basis_vector(axis, b);
            oracle::Vec2 ref = oracle::basis(static_cast<int>(axis), b == Branch::Minus);
            EXPECT_NEAR(std::abs(v[0] - ref[0]), 0.0, kTol);
            EXPECT_NEAR(std::abs(v[1] - ref[1]), 0.0, kTol);
        }
    }
}

TEST(Basis, AxesAreMutuallyUnbiased) {
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            for (Branch p : {Branch::Plus, Branch::Minus}) {
                for (Branch q : {Branch::Plus, Branch::Minus}) {
                    const Spinor &u = basis_vector(static_cast<Axis>(a), p);
                    const Spinor &v = basis_vector(static_cast<Axis>(b), q);
                    Amplitude ip = std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
                    EXPECT_NEAR(std::norm(ip), 0.5, kTol);
                }
            }
        }
    }
}

TEST(ComponentsIn, NeInXBasisIsEvenMixture) {
    auto [up, right] = components_in(ne(), Axis::X);
    EXPECT_NEAR(up.real(), 1.0 / std::sqrt(2.0), kTol);
    EXPECT_NEAR(right.real(), 1.0 / std::sqrt(2.0), kTol);
}

TEST(ComponentsIn, UpInXBasis) {
    auto [up, right] = components_in(PolarizationState::basis(Axis::X, Branch::Plus), Axis::X);
    EXPECT_NEAR(std::abs(up - Amplitude(1.0)), 0.0, kTol);
    EXPECT_NEAR(std::abs(right), 0.0, kTol);
}

TEST(ComponentsIn, PartiallyMeasuredNeInYBasis) {
    auto [plus, minus] = components_in(measured_ne(0.5), Axis::Y);
    // Direct change of basis on (sqrt(a), 1) / sqrt(1 + a).
    oracle::Vec2 v = oracle::normalized(oracle::Vec2{std::sqrt(0.5), 1.0});
    EXPECT_NEAR(std::abs(plus - oracle::inner(oracle::basis(1, 0), v)), 0.0, kTol);
    EXPECT_NEAR(std::abs(minus - oracle::inner(oracle::basis(1, 1), v)), 0.0, kTol);
    EXPECT_NEAR(plus.real(), (1.0 + std::sqrt(0.5)) / std::sqrt(3.0), kTol);
    EXPECT_NEAR(minus.real(), (1.0 - std::sqrt(0.5)) / std::sqrt(3.0), kTol);
    EXPECT_NEAR(plus.real(), 0.98560, 5e-6);
    EXPECT_NEAR(minus.real(), 0.16910, 5e-6);
}

TEST(ComponentsIn, RoundTripAndParsevalProperty) {
    gen::for_all(1000, 11, [](gen::Source &src) {
        PolarizationState s = src.state();
        for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
            auto [p, m] = components_in(s, axis);
            EXPECT_NEAR(std::norm(p) + std::norm(m), 1.0, kTol);
            PolarizationState back = from_components(axis, p, m);
            EXPECT_NEAR(std::abs(back.up - s.up), 0.0, kTol);
            EXPECT_NEAR(std::abs(back.right - s.right), 0.0, kTol);
        }
    });
}

TEST(PolarizationState, FromAmplitudesNormalizes) {
    PolarizationState s = PolarizationState::from_amplitudes(3.0, 4.0, 0.5);
    EXPECT_NEAR(s.up.real(), 0.6, kTol);
    EXPECT_NEAR(s.right.real(), 0.8, kTol);
    EXPECT_DOUBLE_EQ(s.weight, 0.5);
    Spinor u = s.unnormalized();
    EXPECT_NEAR(std::norm(u[0]) + std::norm(u[1]), 0.5, kTol);
}

TEST(PolarizationState, ZeroVectorIsDegenerate) {
    EXPECT_THROW(PolarizationState::from_amplitudes(0.0, 0.0), DegenerateState);
    EXPECT_THROW(PolarizationState::from_amplitudes(1e-17, 0.0), DegenerateState);
}

TEST(PolarizationAngle, Examples) {
    EXPECT_NEAR(polarization_angle(measured_ne(1.0)), 45.0, kTol);
    EXPECT_NEAR(polarization_angle(PolarizationState::basis(Axis::X, Branch::Minus)), 0.0, kTol);
    EXPECT_NEAR(polarization_angle(measured_ne(0.5)), std::atan(std::sqrt(0.5)) * 180.0 / M_PI, kTol);
    EXPECT_NEAR(polarization_angle(measured_ne(0.5)), 35.264, 1e-3);
}

TEST(PolarizationAngle, DegenerateThrows) {
    PolarizationState zero;
    zero.up = 0.0;
    zero.right = 0.0;
    EXPECT_THROW(polarization_angle(zero), DegenerateState);
}

TEST(PolarizationAngle, StrictlyIncreasingInAlpha) {
    double prev = polarization_angle(measured_ne(1e-3));
    for (int i = 2; i < 1000; ++i) {
        double theta = polarization_angle(measured_ne(i * 1e-3));
        EXPECT_GT(theta, prev) << "alpha " << i * 1e-3;
        prev = theta;
    }
}

TEST(PolarizationAngle, RangeOnRealStates) {
    gen::for_all(500, 12, [](gen::Source &src) {
        double theta = polarization_angle(src.real_state());
        EXPECT_GE(theta, 0.0);
        EXPECT_LE(theta, 90.0);
    });
}

TEST(UncertaintySpreads, Examples) {
    UncertaintySpreads one = uncertainty_spreads(1.0);
    EXPECT_NEAR(one.delta_px, 1.0, kTol);
    EXPECT_NEAR(one.delta_py, 0.0, kTol);
    UncertaintySpreads zero = uncertainty_spreads(0.0);
    EXPECT_NEAR(zero.delta_px, 0.0, kTol);
    EXPECT_NEAR(zero.delta_py, 1.0, kTol);
    UncertaintySpreads half = uncertainty_spreads(0.5);
    EXPECT_NEAR(half.delta_px, 2.0 * std::sqrt(0.5) / 1.5, kTol);
    EXPECT_NEAR(half.delta_py, 0.5 / 1.5, kTol);
    EXPECT_NEAR(half.delta_px, 0.94281, 5e-6);
    EXPECT_NEAR(half.delta_py, 0.33333, 5e-6);
}

TEST(UncertaintySpreads, MonotoneAndBounded) {
    UncertaintySpreads prev = uncertainty_spreads(0.0);
    for (int i = 1; i <= 1000; ++i) {
        UncertaintySpreads s = uncertainty_spreads(i * 1e-3);
        EXPECT_GT(s.delta_px, prev.delta_px);
        EXPECT_LT(s.delta_py, prev.delta_py);
        EXPECT_GE(s.delta_px, 0.0);
        EXPECT_LE(s.delta_px, 1.0);
        EXPECT_GE(s.delta_py, 0.0);
        EXPECT_LE(s.delta_py, 1.0);
        prev = s;
    }
}

TEST(UncertaintySpreads, OutOfRangeThrows) {
    EXPECT_THROW(uncertainty_spreads(-0.01), DomainError);
    EXPECT_THROW(uncertainty_spreads(1.01), DomainError);
    EXPECT_THROW(uncertainty_spreads(std::nan("")), DomainError);
}

TEST(YCorrelationSingle, Examples) {
    EXPECT_NEAR(y_correlation_single(0.5), 0.9714, 5e-5);
    EXPECT_NEAR(y_correlation_single(1.0), 1.0, kTol);
    EXPECT_NEAR(y_correlation_single(0.0), 0.5, kTol);
    EXPECT_THROW(y_correlation_single(1.5), DomainError);
    EXPECT_THROW(y_correlation_single(-0.5), DomainError);
}

TEST(YCorrelationSingle, MatchesBornRuleOnMeasuredState) {
    for (int i = 1; i <= 100; ++i) {
        double alpha = i * 0.01;
        auto [plus, minus] = components_in(measured_ne(alpha), Axis::Y);
        EXPECT_NEAR(y_correlation_single(alpha), std::norm(plus), kTol);
        EXPECT_NEAR(y_correlation_single(alpha), oracle::correlation(alpha), kTol);
    }
}

TEST(YCorrelationSingle, HalfOnePlusDeltaPxIdentity) {
    for (int i = 0; i <= 1000; ++i) {
        double alpha = i * 1e-3;
        EXPECT_NEAR(y_correlation_single(alpha), 0.5 * (1.0 + uncertainty_spreads(alpha).delta_px), kTol)
            << "alpha " << alpha;
    }
}

TEST(AmplitudeDistance, ZeroOnlyOnEqualStates) {
    PolarizationState a = ne();
    EXPECT_NEAR(amplitude_distance(a, a), 0.0, kTol);
    EXPECT_GT(amplitude_distance(a, PolarizationState::basis(Axis::Y, Branch::Minus)), 0.5);
}

TEST(Strings, AxisAndBranchNames) {
    EXPECT_EQ(to_string(Axis::X), "x");
    EXPECT_EQ(to_string(Axis::Z), "z");
    EXPECT_EQ(opposite(Branch::Plus), Branch::Minus);
    EXPECT_EQ(sign_of(Branch::Minus), -1);
}

}  // namespace
}  // namespace eraser
