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
#include "eraser/charts.hpp"

#include <cmath>
#include <ostream>

#include "eraser/config.hpp"
#include "eraser/epr.hpp"
#include "eraser/errors.hpp"
#include "eraser/inequality.hpp"
#include "eraser/polarization.hpp"

namespace eraser {

void validate(const GridSpec &grid) {
    if (!std::isfinite(grid.min) || !std::isfinite(grid.max) || !(grid.min < grid.max)) {
        throw DomainError("grid needs finite min < max");
    }
    if (grid.steps < 2) {
        throw DomainError("grid needs at least 2 steps");
    }
    if (grid.scale == GridScale::Log && !(grid.min > 0.0)) {
        throw DomainError("log grid needs min > 0");
    }
}

std::vector<double> grid_points(const GridSpec &grid) {
    validate(grid);
    std::vector<double> points(static_cast<std::size_t>(grid.steps));
    const int last = grid.steps - 1;
    for (int i = 0; i <= last; ++i) {
        double t = static_cast<double>(i) / last;
        if (grid.scale == GridScale::Linear) {
            points[i] = grid.min + t * (grid.max - grid.min);
        } else {
            points[i] = grid.min * std::pow(grid.max / grid.min, t);
        }
    }
    points.front() = grid.min;
    points.back() = grid.max;
    return points;
}

GridSpec default_grid(ChartId id) {
    if (id == ChartId::InequalityDeltasVsRho) {
        return {1.0, 20.0, 200, GridScale::Log};
    }
    return {0.0, 1.0, 101, GridScale::Linear};
}

std::string_view to_string(ChartId id) {
    switch (id) {
        case ChartId::AngleVsAlpha:
            return "angle_vs_alpha";
        case ChartId::UncertaintyVsAlpha:
            return "uncertainty_vs_alpha";
        case ChartId::EprPartsVsAlpha:
            return "epr_parts_vs_alpha";
        case ChartId::InequalityDeltasVsRho:
            return "inequality_deltas_vs_rho";
    }
    return "?";
}

std::optional<ChartId> parse_chart_id(std::string_view text) {
    for (ChartId id : {ChartId::AngleVsAlpha, ChartId::UncertaintyVsAlpha, ChartId::EprPartsVsAlpha,
                       ChartId::InequalityDeltasVsRho}) {
        if (text == to_string(id)) {
            return id;
        }
    }
    return std::nullopt;
}

std::vector<std::string> chart_columns(ChartId id) {
    switch (id) {
        case ChartId::AngleVsAlpha:
            return {"alpha", "theta_deg"};
        case ChartId::UncertaintyVsAlpha:
            return {"alpha", "delta_px", "delta_py"};
        case ChartId::EprPartsVsAlpha:
            return {"alpha", "epr_amp", "anti_epr_amp"};
        case ChartId::InequalityDeltasVsRho:
            return {"rho", "delta_ab_plus_bc", "delta_ac", "margin"};
    }
    return {};
}

namespace {

// A at alpha on its up branch, every other detector absent.
std::vector<double> epr_row(double alpha, TrackingMode mode) {
    if (mode == TrackingMode::Weighted) {
        WeightedEprAmplitudes w = weighted_epr_track({alpha, 1.0, 1.0, 1.0});
        return {alpha, w.epr, w.anti_epr};
    }
    if (alpha == 0.0) {
        // Limit of the normalized parts: the pair collapses to right-right.
        return {alpha, std::sqrt(0.5), std::sqrt(0.5)};
    }
    PairState pair = apply_partial_pair(make_epr(), Photon::A, {Axis::X, Branch::Plus, alpha}, mode);
    EprDecomposition d = epr_decompose(pair);
    return {alpha, std::abs(d.epr), std::abs(d.anti_epr)};
}

std::vector<double> angle_row(double alpha) {
    if (alpha == 0.0) {
        return {alpha, 0.0};
    }
    PolarizationState s = no_click_map({Axis::X, Branch::Plus, alpha}, PolarizationState::basis(Axis::Y, Branch::Plus),
                                       TrackingMode::Normalized);
    return {alpha, polarization_angle(s)};
}

}  // namespace

std::vector<std::vector<double>> chart_rows(const ChartRequest &request) {
    std::vector<std::vector<double>> rows;
    for (double x : grid_points(request.grid)) {
        switch (request.id) {
            case ChartId::AngleVsAlpha:
                require_unit_interval(x, "alpha");
                rows.push_back(angle_row(x));
                break;
            case ChartId::UncertaintyVsAlpha: {
                UncertaintySpreads s = uncertainty_spreads(x);
                rows.push_back({x, s.delta_px, s.delta_py});
                break;
            }
            case ChartId::EprPartsVsAlpha:
                require_unit_interval(x, "alpha");
                rows.push_back(epr_row(x, request.mode));
                break;
            case ChartId::InequalityDeltasVsRho: {
                ViolationReport r = evaluate_violation(x);
                rows.push_back({x, 2.0 * r.delta_ab, r.delta_ac, r.margin});
                break;
            }
        }
    }
    return rows;
}

void write_chart_csv(std::ostream &out, const ChartRequest &request) {
    auto rows = chart_rows(request);
    auto columns = chart_columns(request.id);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_double(row[i]);
        }
        out << '\n';
    }
}

}  // namespace eraser
