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

#include "eraser/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "eraser/errors.hpp"

namespace eraser {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using State = std::variant<PolarizationState, PairState>;

// Index of (a, b) in a final-outcome distribution: (+,+), (+,-), (-,+), (-,-).
constexpr int outcome_index(int a, int b) { return (a > 0 ? 0 : 2) + (b > 0 ? 0 : 1); }

State initial_state(const ExperimentConfig &cfg) {
    if (cfg.preparation == Preparation::SinglePhoton) {
        return PolarizationState::basis(Axis::Y, cfg.initial_branch);
    }
    return make_epr();
}

double branch_prob(const State &s, Photon photon, Axis axis, Branch branch) {
    if (const auto *p = std::get_if<PolarizationState>(&s)) {
        const Spinor &v = basis_vector(axis, branch);
        return std::norm(std::conj(v[0]) * p->up + std::conj(v[1]) * p->right) / p->norm_squared();
    }
    return branch_probability(std::get<PairState>(s), photon, axis, branch);
}

State silent(const State &s, Photon photon, const PartialMeasurementOp &op, TrackingMode mode) {
    if (const auto *p = std::get_if<PolarizationState>(&s)) {
        return no_click_map(op, *p, mode);
    }
    return apply_partial_pair(std::get<PairState>(s), photon, op, mode);
}

State collapsed(const State &s, Photon photon, Axis axis, Branch branch) {
    if (std::holds_alternative<PolarizationState>(s)) {
        return PolarizationState::basis(axis, branch);
    }
    return collapse(std::get<PairState>(s), photon, axis, branch);
}

double weight_of(const State &s) {
    return std::visit([](const auto &x) { return x.weight; }, s);
}

std::array<double, 4> final_distribution(const State &s, const ExperimentConfig &cfg) {
    if (const auto *p = std::get_if<PolarizationState>(&s)) {
        int ref = sign_of(cfg.initial_branch);
        double plus = branch_prob(*p, Photon::A, cfg.final_axis, Branch::Plus);
        std::array<double, 4> d{};
        d[outcome_index(1, ref)] = plus;
        d[outcome_index(-1, ref)] = 1.0 - plus;
        return d;
    }
    return joint_probabilities(std::get<PairState>(s), cfg.final_axis);
}

FinalOutcome draw_final(const std::array<double, 4> &d, double u) {
    double acc = 0.0;
    int k = -1;
    for (int i = 0; i < 4; ++i) {
        acc += d[i];
        if (u < acc) {
            k = i;
            break;
        }
    }
    if (k < 0) {
        k = 3;
        while (k > 0 && d[k] == 0.0) {
            --k;
        }
    }
    return {k < 2 ? 1 : -1, k % 2 == 0 ? 1 : -1};
}

// Operator with the action of a step when all of its detectors stay silent.
PartialMeasurementOp silent_op(const PlanStep &step, const Cascade &cascade) {
    if (const auto *op = std::get_if<PartialMeasurementOp>(&step.action)) {
        return *op;
    }
    const auto &c = std::get<CascadeStep>(step.action);
    DetectorPlacement first_beams{c.branch, std::vector<int>(c.n_detectors)};
    std::iota(first_beams.beam_indices.begin(), first_beams.beam_indices.end(), 0);
    return equivalent_op(first_beams, cascade);
}

struct StepResult {
    bool clicked = false;
    int detector = -1;
};

StepResult run_step(State &s, const PlanStep &step, const ExperimentConfig &cfg, const Cascade &cascade,
                    RandomStream &rng) {
    if (const auto *op = std::get_if<PartialMeasurementOp>(&step.action)) {
        double p_click = (1.0 - op->alpha) * branch_prob(s, step.photon, op->axis, op->branch);
        if (rng.uniform() < p_click) {
            s = collapsed(s, step.photon, op->axis, op->branch);
            return {true, -1};
        }
        s = silent(s, step.photon, *op, cfg.mode);
        return {};
    }
    const auto &c = std::get<CascadeStep>(step.action);
    DetectorPlacement placement = random_placement(c.branch, c.n_detectors, cascade, rng);
    double p_branch = branch_prob(s, step.photon, Axis::X, c.branch);
    if (auto k = select_detector(rng.uniform(), p_branch, placement, cascade)) {
        s = collapsed(s, step.photon, Axis::X, c.branch);
        return {true, placement.beam_indices[*k]};
    }
    s = silent(s, step.photon, equivalent_op(placement, cascade), cfg.mode);
    return {};
}

// Silent chain through steps [begin, end): returns the product of no-click
// probabilities, or 0 when silence is impossible.
double silent_chain(State &s, const ExperimentConfig &cfg, const Cascade &cascade, std::size_t begin,
                    std::size_t end) {
    double survival = 1.0;
    for (std::size_t i = begin; i < end; ++i) {
        const PlanStep &step = cfg.plan[i];
        PartialMeasurementOp op = silent_op(step, cascade);
        survival *= 1.0 - (1.0 - op.alpha) * branch_prob(s, step.photon, op.axis, op.branch);
        try {
            s = silent(s, step.photon, op, TrackingMode::Normalized);
        } catch (const ZeroSurvival &) {
            return 0.0;
        }
    }
    return survival;
}

template <class Fn>
void for_each_chunk(std::int64_t total, unsigned threads, Fn &&fn) {
    unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n = static_cast<unsigned>(std::min<std::int64_t>(n, std::max<std::int64_t>(total, 1)));
    if (n <= 1) {
        fn(0, std::int64_t{0}, total);
        return;
    }
    std::vector<std::thread> workers;
    std::int64_t per = (total + n - 1) / n;
    for (unsigned w = 0; w < n; ++w) {
        std::int64_t begin = std::min<std::int64_t>(total, per * w);
        std::int64_t end = std::min<std::int64_t>(total, begin + per);
        workers.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    }
    for (auto &t : workers) {
        t.join();
    }
}

bool x_only(const ExperimentConfig &cfg) {
    return std::all_of(cfg.plan.begin(), cfg.plan.end(), [](const PlanStep &s) {
        const auto *op = std::get_if<PartialMeasurementOp>(&s.action);
        return op == nullptr || op->axis == Axis::X;
    });
}

}  // namespace

void validate(const ExperimentConfig &config) {
    if (config.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (config.n_beams < 1) {
        throw ConfigError("n_beams must be at least 1");
    }
    for (std::size_t i = 0; i < config.plan.size(); ++i) {
        const PlanStep &step = config.plan[i];
        std::string where = "plan step " + std::to_string(i + 1);
        if (config.preparation == Preparation::SinglePhoton && step.photon == Photon::B) {
            throw ConfigError(where + " acts on photon B in a single-photon experiment");
        }
        if (const auto *op = std::get_if<PartialMeasurementOp>(&step.action)) {
            if (!(op->alpha >= 0.0 && op->alpha <= 1.0)) {
                throw ConfigError(where + ": alpha must lie in [0, 1]");
            }
        } else {
            const auto &c = std::get<CascadeStep>(step.action);
            if (c.n_detectors < 0 || c.n_detectors > config.n_beams) {
                throw ConfigError(where + ": detector count must lie in [0, " + std::to_string(config.n_beams) + "]");
            }
        }
    }
}

AnalyticExpectation analytic_expectation(const ExperimentConfig &config) {
    validate(config);
    Cascade cascade = build_cascade(config.n_beams);
    State s = initial_state(config);
    AnalyticExpectation e;
    e.survival = silent_chain(s, config, cascade, 0, config.plan.size());
    if (e.survival <= 0.0) {
        e.agreement = kNaN;
        return e;
    }
    if (x_only(config) && config.final_axis == Axis::Y) {
        IntensityQuadruple q;
        for (const PlanStep &step : config.plan) {
            PartialMeasurementOp op = silent_op(step, cascade);
            bool up = op.branch == Branch::Plus;
            double &slot = step.photon == Photon::A ? (up ? q.alpha : q.beta) : (up ? q.gamma : q.delta);
            slot *= op.alpha;
        }
        e.agreement = y_correlation_pair(q);
        return e;
    }
    std::array<double, 4> d = final_distribution(s, config);
    e.agreement = d[0] + d[3];
    return e;
}

namespace {

TrialStats run_trials(const ExperimentConfig &config, std::vector<TrialRecord> *log) {
    validate(config);
    Cascade cascade = build_cascade(config.n_beams);
    const State start = initial_state(config);
    if (log != nullptr) {
        log->assign(static_cast<std::size_t>(config.trials), TrialRecord{});
    }

    struct Counts {
        std::int64_t clicked = 0;
        std::int64_t agree = 0;
        std::int64_t agree_all = 0;
    };
    unsigned n_workers = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.threads;
    std::vector<Counts> partial(n_workers + 1);

    for_each_chunk(config.trials, config.threads, [&](unsigned w, std::int64_t begin, std::int64_t end) {
        Counts &c = partial[w];
        for (std::int64_t t = begin; t < end; ++t) {
            RandomStream rng = RandomStream::for_trial(config.master_seed, static_cast<std::uint64_t>(t));
            TrialRecord rec;
            rec.trial = t;
            State s = start;
            for (std::size_t i = 0; i < config.plan.size(); ++i) {
                StepResult r = run_step(s, config.plan[i], config, cascade, rng);
                if (r.clicked) {
                    rec.clicked_step = static_cast<int>(i);
                    rec.detector = r.detector;
                    break;
                }
            }
            FinalOutcome out = draw_final(final_distribution(s, config), rng.uniform());
            rec.a_result = out.a;
            rec.b_result = out.b;
            rec.weight = weight_of(s);
            if (rec.survived()) {
                c.agree += out.agree();
            } else {
                ++c.clicked;
            }
            c.agree_all += out.agree();
            if (log != nullptr) {
                (*log)[static_cast<std::size_t>(t)] = rec;
            }
        }
    });

    TrialStats stats;
    stats.total = config.trials;
    for (const Counts &c : partial) {
        stats.clicked += c.clicked;
        stats.agreement_count += c.agree;
        stats.unconditional_agreement_count += c.agree_all;
    }
    stats.surviving = stats.total - stats.clicked;
    if (stats.surviving > 0) {
        double r = static_cast<double>(stats.agreement_count) / static_cast<double>(stats.surviving);
        stats.agreement_rate = r;
        stats.std_error = std::sqrt(r * (1.0 - r) / static_cast<double>(stats.surviving));
    } else {
        stats.agreement_rate = kNaN;
        stats.std_error = kNaN;
    }
    AnalyticExpectation e = analytic_expectation(config);
    stats.analytic_prediction = e.agreement;
    stats.analytic_survival = e.survival;
    return stats;
}

}  // namespace

TrialStats run_experiment(const ExperimentConfig &config) { return run_trials(config, nullptr); }

TrialStats run_experiment(const ExperimentConfig &config, std::vector<TrialRecord> &log) {
    return run_trials(config, &log);
}

double estimate_vs_analytic(const TrialStats &stats) {
    double diff = stats.agreement_rate - stats.analytic_prediction;
    if (stats.std_error > 0.0) {
        return diff / stats.std_error;
    }
    if (std::abs(diff) < kTolerance) {
        return 0.0;
    }
    return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

ConditionalClickReport conditional_click_stat(const ExperimentConfig &config, std::size_t counter_start,
                                              const OutcomePredicate &condition) {
    validate(config);
    if (counter_start > config.plan.size()) {
        throw ConfigError("counter stage starts past the end of the plan");
    }
    Cascade cascade = build_cascade(config.n_beams);

    // Every survivor of the measurement stage holds the same silent-chain state.
    State entering = initial_state(config);
    double before = silent_chain(entering, config, cascade, 0, counter_start);
    ConditionalClickReport report;
    report.weight_before_counter = before;
    if (before <= 0.0) {
        throw InsufficientStatistics("no trial can survive the measurement stage");
    }
    State leaving = entering;
    double counter_silent = silent_chain(leaving, config, cascade, counter_start, config.plan.size());
    report.weight_after_counter = before * counter_silent;

    // No-counter outcome distribution d0 and the counter-stage distribution
    // d1 over {(silent, y)} plus a click.
    const std::array<double, 4> d0 = final_distribution(entering, config);
    std::array<double, 4> d1_silent{};
    if (counter_silent > 0.0) {
        std::array<double, 4> f = final_distribution(leaving, config);
        for (int i = 0; i < 4; ++i) {
            d1_silent[i] = counter_silent * f[i];
        }
    }
    // Residual mass of the coupling: what d1 has beyond d0 per outcome; the
    // click outcome has no d0 mass at all.
    std::array<double, 5> residual{};
    for (int i = 0; i < 4; ++i) {
        residual[i] = std::max(0.0, d1_silent[i] - d0[i]);
    }
    residual[4] = 1.0 - counter_silent;
    double residual_total = std::accumulate(residual.begin(), residual.end(), 0.0);

    double cond_mass = 0.0;
    double cond_click_mass = 0.0;
    for (int i = 0; i < 4; ++i) {
        FinalOutcome y{i < 2 ? 1 : -1, i % 2 == 0 ? 1 : -1};
        if (d0[i] > 0.0 && condition(y)) {
            cond_mass += d0[i];
            cond_click_mass += d0[i] - std::min(d0[i], d1_silent[i]);
        }
    }
    report.analytic_click_given_condition = cond_mass > 0.0 ? cond_click_mass / cond_mass : kNaN;

    std::int64_t counter_clicks = 0;
    for (std::int64_t t = 0; t < config.trials; ++t) {
        RandomStream rng = RandomStream::for_trial(config.master_seed, static_cast<std::uint64_t>(t));
        State s = initial_state(config);
        bool clicked = false;
        for (std::size_t i = 0; i < counter_start && !clicked; ++i) {
            clicked = run_step(s, config.plan[i], config, cascade, rng).clicked;
        }
        if (clicked) {
            continue;
        }
        ++report.survivors;

        FinalOutcome would_be = draw_final(d0, rng.uniform());
        int k = outcome_index(would_be.a, would_be.b);
        double keep = d0[k] > 0.0 ? std::min(1.0, d1_silent[k] / d0[k]) : 0.0;
        int coupled = k;  // 0..3 silent with that outcome, 4 = click
        if (rng.uniform() >= keep) {
            double u = rng.uniform() * residual_total;
            double acc = 0.0;
            coupled = 4;
            for (int i = 0; i < 5; ++i) {
                acc += residual[i];
                if (u < acc) {
                    coupled = i;
                    break;
                }
            }
        }

        bool counter_click = coupled == 4;
        counter_clicks += counter_click;
        if (condition(would_be)) {
            ++report.condition_count;
            report.condition_clicks += counter_click;
        }
        if (!counter_click) {
            ++report.counter_survivors;
            FinalOutcome after{coupled < 2 ? 1 : -1, coupled % 2 == 0 ? 1 : -1};
            report.counter_survivor_disagreements += !after.agree();
        }
    }

    if (report.condition_count < 100) {
        throw InsufficientStatistics("only " + std::to_string(report.condition_count) +
                                     " survivors meet the condition; need at least 100");
    }
    report.condition_rate = static_cast<double>(report.condition_count) / static_cast<double>(report.survivors);
    report.click_given_condition =
        static_cast<double>(report.condition_clicks) / static_cast<double>(report.condition_count);
    report.counter_click_rate = static_cast<double>(counter_clicks) / static_cast<double>(report.survivors);
    report.disagreement_after_counter =
        report.counter_survivors > 0 ? static_cast<double>(report.counter_survivor_disagreements) /
                                           static_cast<double>(report.counter_survivors)
                                     : kNaN;
    return report;
}

}  // namespace eraser
