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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eraser/partial_measurement.hpp"

namespace eraser {

enum class ChartId {
    AngleVsAlpha,
    UncertaintyVsAlpha,
    EprPartsVsAlpha,
    InequalityDeltasVsRho,
};

enum class GridScale { Linear, Log };

struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    int steps = 101;
    GridScale scale = GridScale::Linear;
};

/// DomainError unless min < max, steps >= 2 and (for log grids) min > 0.
void validate(const GridSpec &grid);

/// Grid points with both end points hit exactly.
std::vector<double> grid_points(const GridSpec &grid);

struct ChartRequest {
    ChartId id = ChartId::AngleVsAlpha;
    GridSpec grid;
    TrackingMode mode = TrackingMode::Weighted;  // epr-parts chart only
};

/// [0, 1] x 101 linear for the alpha charts, [1, 20] x 200 log for the inequality chart.
GridSpec default_grid(ChartId id);

std::string_view to_string(ChartId id);
std::optional<ChartId> parse_chart_id(std::string_view text);

std::vector<std::string> chart_columns(ChartId id);

/// One row per grid point, columns as in chart_columns.
std::vector<std::vector<double>> chart_rows(const ChartRequest &request);

/// Header plus rows, comma separated, LF endings, 17 significant digits.
void write_chart_csv(std::ostream &out, const ChartRequest &request);

}  // namespace eraser
