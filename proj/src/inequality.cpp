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

#include "eraser/inequality.hpp"

#include <cmath>
#include <string>

#include "eraser/errors.hpp"

namespace eraser {

namespace {

void require_positive_ratio(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw DomainError("measurement ratio must be positive and finite, got " + std::to_string(rho));
    }
}

}  // namespace

// Both deltas use the cancellation-free form (1 - x)^2 / (2 (1 + x^2)) with
// x = sqrt(K), which equals 1 - ((1 + x) / sqrt(2 + 2 x^2))^2 exactly.
double delta_pair(double rho) {
    require_positive_ratio(rho);
    double s = std::sqrt(rho);
    return (1.0 - s) * (1.0 - s) / (2.0 * (1.0 + rho));
}

double delta_ac(double rho) {
    require_positive_ratio(rho);
    return (1.0 - rho) * (1.0 - rho) / (2.0 * (1.0 + rho * rho));
}

double violation_margin(double rho) { return delta_ac(rho) - 2.0 * delta_pair(rho); }

ViolationReport evaluate_violation(double rho) {
    ViolationReport r;
    r.rho = rho;
    r.delta_ab = delta_pair(rho);
    r.delta_ac = delta_ac(rho);
    r.margin = r.delta_ac - 2.0 * r.delta_ab;
    r.violated = r.margin > 0.0;
    return r;
}

ViolationRegion violation_region(double tolerance) {
    if (!(tolerance > 0.0)) {
        throw DomainError("tolerance must be positive");
    }
    // The lower edge is rho = 1: the margin vanishes there and is positive
    // immediately above it.
    for (int k = 1; k <= 8; ++k) {
        if (!(violation_margin(1.0 + std::pow(10.0, -k)) > 0.0)) {
            throw ConvergenceFailure("margin not positive just above rho = 1");
        }
    }

    double lo = 2.0;
    double hi = 4.0;
    int doublings = 0;
    while (violation_margin(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 64) {
            throw ConvergenceFailure("no sign change of the violation margin found");
        }
    }
    if (!(violation_margin(lo) > 0.0)) {
        throw ConvergenceFailure("violation margin does not bracket a root");
    }

    ViolationRegion region;
    while (hi - lo > tolerance) {
        double mid = 0.5 * (lo + hi);
        if (violation_margin(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (++region.iterations > 200) {
            throw ConvergenceFailure("bisection did not reach tolerance");
        }
    }
    region.high = 0.5 * (lo + hi);
    return region;
}

}  // namespace eraser
