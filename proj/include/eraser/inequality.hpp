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

namespace eraser {

// Same-angle inequality. Observers A, B, C have measurement ratios that step
// by a factor rho, so A-B and B-C see K = rho and A-C sees K = rho^2. A local
// assignment of outcomes needs delta_ac <= delta_ab + delta_bc.

/// Disagreement rate of the diagonal outcomes at ratio rho:
/// 1 - ((1 + sqrt rho) / sqrt(2 + 2 rho))^2. DomainError for rho <= 0.
double delta_pair(double rho);

/// Disagreement between the outer observers, 1 - ((1 + rho) / sqrt(2 + 2 rho^2))^2.
double delta_ac(double rho);

/// delta_ac(rho) - 2 delta_pair(rho); positive inside the violation region.
double violation_margin(double rho);

struct ViolationReport {
    double rho = 1.0;
    double delta_ab = 0.0;
    double delta_ac = 0.0;
    double margin = 0.0;
    bool violated = false;
};

ViolationReport evaluate_violation(double rho);

struct ViolationRegion {
    double low = 1.0;
    double high = 1.0;
    int iterations = 0;
};

/// Locates {rho > 1 : margin(rho) > 0} = (1, high) by bisection; `high` is
/// accurate to `tolerance`. Throws ConvergenceFailure when no bracket is found.
ViolationRegion violation_region(double tolerance);

}  // namespace eraser
