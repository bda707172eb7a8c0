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
// partial-eraser: chart data, Monte-Carlo runs, inequality scans and a
// cascade demonstration. Exit codes: 0 ok, 2 configuration or argument
// error, 3 statistical gate failure, 4 I/O error, 5 convergence failure.

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eraser/charts.hpp"
#include "eraser/config.hpp"
#include "eraser/errors.hpp"
#include "eraser/inequality.hpp"
#include "eraser/montecarlo.hpp"

namespace {

using namespace eraser;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGate = 3;
constexpr int kExitIo = 4;
constexpr int kExitConvergence = 5;

std::string fixed(double v, int digits) {
    if (!std::isfinite(v)) {
        return format_double(v);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out.flush()) {
        throw IoError("write to '" + path + "' failed");
    }
}

void emit(const std::optional<std::string> &path, const std::string &content) {
    if (path) {
        write_file(*path, content);
    } else {
        std::cout << content;
    }
}

std::optional<std::uint64_t> env_seed() {
    const char *text = std::getenv("PARTIAL_ERASER_SEED");
    if (text == nullptr || *text == '\0') {
        return std::nullopt;
    }
    char *end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(text, &end, 10);
    if (errno != 0 || *end != '\0' || text[0] == '-') {
        throw ConfigError(std::string("PARTIAL_ERASER_SEED is not an unsigned integer: '") + text + "'");
    }
    return v;
}

struct ChartArgs {
    std::string id;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> steps;
    std::optional<std::string> scale;
    std::string mode = "weighted";
    std::optional<std::string> output;
};

int cmd_chart(const ChartArgs &args) {
    auto id = parse_chart_id(args.id);
    if (!id) {
        throw ConfigError("unknown chart '" + args.id + "'");
    }
    ChartRequest request;
    request.id = *id;
    request.grid = default_grid(*id);
    if (args.min) {
        request.grid.min = *args.min;
    }
    if (args.max) {
        request.grid.max = *args.max;
    }
    if (args.steps) {
        request.grid.steps = *args.steps;
    }
    if (args.scale) {
        if (*args.scale == "linear") {
            request.grid.scale = GridScale::Linear;
        } else if (*args.scale == "log") {
            request.grid.scale = GridScale::Log;
        } else {
            throw ConfigError("unknown scale '" + *args.scale + "'");
        }
    }
    request.mode = parse_mode(args.mode);
    std::ostringstream csv;
    write_chart_csv(csv, request);
    emit(args.output, csv.str());
    return kExitOk;
}

struct RunArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> mode;
    std::optional<double> gate;
    bool log_trials = false;
    unsigned threads = 0;
    std::optional<std::string> output;
};

int cmd_run(const RunArgs &args) {
    ParsedConfig parsed = load_config(args.config_path);
    ExperimentConfig config = parsed.config;
    if (args.seed) {
        config.master_seed = *args.seed;
    } else if (!parsed.has_seed) {
        config.master_seed = env_seed().value_or(0);
    }
    if (args.trials) {
        config.trials = *args.trials;
    }
    if (args.mode) {
        config.mode = parse_mode(*args.mode);
    }
    config.threads = args.threads;
    if (args.log_trials && !args.output) {
        throw ConfigError("--log-trials needs --output");
    }
    if (args.gate && !(*args.gate > 0.0)) {
        throw ConfigError("--gate needs a positive sigma");
    }
    validate(config);

    std::vector<TrialRecord> log;
    TrialStats stats = args.log_trials ? run_experiment(config, log) : run_experiment(config);
    double z = estimate_vs_analytic(stats);

    std::ostringstream csv;
    write_stats_csv(csv, stats);
    if (args.output) {
        write_file(*args.output, csv.str());
    }
    if (args.log_trials) {
        std::ostringstream trials;
        write_trial_log_csv(trials, log);
        write_file(*args.output + ".trials.csv", trials.str());
    }

    std::cout << "agreement=" << fixed(stats.agreement_rate, 4) << " ± " << fixed(stats.std_error, 4)
              << " predicted=" << fixed(stats.analytic_prediction, 4) << " z=" << fixed(z, 1) << '\n';

    if (args.gate && !(std::abs(z) <= *args.gate)) {
        std::cerr << "gate failed: |z| > " << *args.gate << '\n';
        return kExitGate;
    }
    return kExitOk;
}

struct ScanArgs {
    double tolerance = 1e-6;
    std::optional<std::string> output;
};

int cmd_inequality_scan(const ScanArgs &args) {
    ViolationRegion region = violation_region(args.tolerance);
    std::cout << "violation region: " << fixed(region.low, 6) << " < rho < " << fixed(region.high, 6)
              << " (tolerance " << args.tolerance << ", " << region.iterations << " bisections)\n";
    std::cout << "margin at rho=1: " << format_double(violation_margin(1.0)) << '\n';
    std::cout << "margin at rho=2: " << format_double(violation_margin(2.0)) << '\n';
    ChartRequest request{ChartId::InequalityDeltasVsRho, default_grid(ChartId::InequalityDeltasVsRho)};
    std::ostringstream csv;
    write_chart_csv(csv, request);
    if (args.output) {
        write_file(*args.output, csv.str());
    }
    return kExitOk;
}

struct DemoArgs {
    int n_beams = 100;
    int up = 1;
    int right = 0;
    std::int64_t trials = 1000000;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::optional<std::string> output;
};

int cmd_cascade_demo(const DemoArgs &args) {
    ExperimentConfig config;
    config.preparation = Preparation::SinglePhoton;
    config.n_beams = args.n_beams;
    config.trials = args.trials;
    config.master_seed = args.seed ? *args.seed : env_seed().value_or(0);
    config.threads = args.threads;
    if (args.up > 0) {
        config.plan.push_back({Photon::A, CascadeStep{Branch::Plus, args.up}});
    }
    if (args.right > 0) {
        config.plan.push_back({Photon::A, CascadeStep{Branch::Minus, args.right}});
    }
    validate(config);
    TrialStats stats = run_experiment(config);
    double survival = static_cast<double>(stats.surviving) / stats.total;
    double se = std::sqrt(survival * (1.0 - survival) / stats.total);
    std::cout << "beams per branch=" << args.n_beams << " detectors up=" << args.up << " right=" << args.right
              << " trials=" << stats.total << '\n';
    std::cout << "no-click fraction=" << fixed(survival, 5) << " ± " << fixed(se, 5)
              << " predicted=" << fixed(stats.analytic_survival, 5) << '\n';
    std::cout << "click fraction=" << fixed(1.0 - survival, 5) << " predicted=" << fixed(1.0 - stats.analytic_survival, 5)
              << '\n';
    std::cout << "NE kept among survivors=" << fixed(stats.agreement_rate, 5)
              << " predicted=" << fixed(stats.analytic_prediction, 5) << '\n';
    if (args.output) {
        std::ostringstream csv;
        write_stats_csv(csv, stats);
        write_file(*args.output, csv.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Partial measurement and quantum erasure simulator"};
    app.require_subcommand(1);

    ChartArgs chart;
    auto *chart_cmd = app.add_subcommand("chart", "Write chart data as CSV");
    chart_cmd->add_option("chart", chart.id,
                          "angle_vs_alpha | uncertainty_vs_alpha | epr_parts_vs_alpha | inequality_deltas_vs_rho")
        ->required();
    chart_cmd->add_option("--min", chart.min, "Grid start");
    chart_cmd->add_option("--max", chart.max, "Grid end");
    chart_cmd->add_option("--steps", chart.steps, "Number of grid points");
    chart_cmd->add_option("--scale", chart.scale, "linear | log");
    chart_cmd->add_option("--mode", chart.mode, "normalized | weighted (epr parts chart)");
    chart_cmd->add_option("--output", chart.output, "CSV path (default stdout)");

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Run a Monte-Carlo experiment from a config file");
    run_cmd->add_option("config", run.config_path, "Experiment config")->required();
    run_cmd->add_option("--seed", run.seed, "Master seed (overrides config and PARTIAL_ERASER_SEED)");
    run_cmd->add_option("--trials", run.trials, "Number of trials");
    run_cmd->add_option("--mode", run.mode, "normalized | weighted");
    run_cmd->add_option("--gate", run.gate, "Fail with exit 3 when |z| exceeds this many sigma");
    run_cmd->add_flag("--log-trials", run.log_trials, "Also write <output>.trials.csv");
    run_cmd->add_option("--threads", run.threads, "Worker threads, 0 for all cores");
    run_cmd->add_option("--output", run.output, "Statistics CSV path");

    ScanArgs scan;
    auto *scan_cmd = app.add_subcommand("inequality-scan", "Locate the inequality violation region");
    scan_cmd->add_option("--tolerance", scan.tolerance, "Bisection tolerance on rho");
    scan_cmd->add_option("--output", scan.output, "Chart CSV path");

    DemoArgs demo;
    auto *demo_cmd = app.add_subcommand("cascade-demo", "Detectors on the mirror cascade of an NE photon");
    demo_cmd->add_option("--beams", demo.n_beams, "Beams per branch");
    demo_cmd->add_option("--up", demo.up, "Detectors on the up branch");
    demo_cmd->add_option("--right", demo.right, "Detectors on the right branch, after the up branch");
    demo_cmd->add_option("--trials", demo.trials, "Number of trials");
    demo_cmd->add_option("--seed", demo.seed, "Master seed");
    demo_cmd->add_option("--threads", demo.threads, "Worker threads, 0 for all cores");
    demo_cmd->add_option("--output", demo.output, "Statistics CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (chart_cmd->parsed()) {
            return cmd_chart(chart);
        }
        if (run_cmd->parsed()) {
            return cmd_run(run);
        }
        if (scan_cmd->parsed()) {
            return cmd_inequality_scan(scan);
        }
        return cmd_cascade_demo(demo);
    } catch (const IoError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConvergenceFailure &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
