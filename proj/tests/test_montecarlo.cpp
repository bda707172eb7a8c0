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
#include <vector>

#include "eraser/errors.hpp"
#include "eraser/montecarlo.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

namespace eraser {
namespace {

constexpr double kTol = 1e-12;

PlanStep op_step(Photon p, Axis axis, Branch b, double alpha) { return {p, PartialMeasurementOp{axis, b, alpha}}; }

ExperimentConfig epr_config(std::vector<PlanStep> plan, std::int64_t trials = 100000, std::uint64_t seed = 1) {
    ExperimentConfig c;
    c.preparation = Preparation::EprPair;
    c.plan = std::move(plan);
    c.trials = trials;
    c.master_seed = seed;
    return c;
}

double binomial_sigma(double p, std::int64_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

TEST(RunExperiment, HalfMeasuredUpOnA) {
    ExperimentConfig c = epr_config({op_step(Photon::A, Axis::X, Branch::Plus, 0.5)});
    TrialStats s = run_experiment(c);
    EXPECT_EQ(s.total, 100000);
    EXPECT_EQ(s.clicked + s.surviving, s.total);
    EXPECT_NEAR(s.analytic_prediction, 0.9714, 5e-5);
    EXPECT_NEAR(s.analytic_survival, 0.75, kTol);
    EXPECT_NEAR(s.agreement_rate, s.analytic_prediction, 3.0 * s.std_error);
    double survival = static_cast<double>(s.surviving) / s.total;
    EXPECT_NEAR(survival, 0.75, 3.0 * binomial_sigma(0.75, s.total));
    EXPECT_NEAR(s.std_error, binomial_sigma(s.agreement_rate, s.surviving), kTol);
}

TEST(RunExperiment, EmptyPlanAlwaysAgrees) {
    TrialStats s = run_experiment(epr_config({}, 10000));
    EXPECT_EQ(s.clicked, 0);
    EXPECT_EQ(s.agreement_rate, 1.0);
    EXPECT_EQ(s.std_error, 0.0);
    EXPECT_EQ(estimate_vs_analytic(s), 0.0);
}

TEST(RunExperiment, CrossPhotonErasureRestoresAgreement) {
    ExperimentConfig c = epr_config(
        {op_step(Photon::A, Axis::X, Branch::Plus, 0.5), op_step(Photon::B, Axis::X, Branch::Minus, 0.5)});
    TrialStats s = run_experiment(c);
    EXPECT_GT(s.surviving, 0);
    EXPECT_EQ(s.agreement_count, s.surviving);
    EXPECT_EQ(s.agreement_rate, 1.0);
    EXPECT_NEAR(s.analytic_prediction, 1.0, kTol);
    EXPECT_NEAR(s.analytic_survival, 0.5, kTol);
}

TEST(RunExperiment, SinglePhotonKeepsItsDiagonalValue) {
    ExperimentConfig c;
    c.preparation = Preparation::SinglePhoton;
    c.initial_branch = Branch::Minus;
    c.plan = {op_step(Photon::A, Axis::X, Branch::Plus, 0.5)};
    c.trials = 100000;
    c.master_seed = 3;
    TrialStats s = run_experiment(c);
    EXPECT_NEAR(s.analytic_prediction, y_correlation_single(0.5), kTol);
    EXPECT_NEAR(s.agreement_rate, s.analytic_prediction, 3.0 * s.std_error);
}

TEST(RunExperiment, CascadeStepsOnSinglePhoton) {
    ExperimentConfig c;
    c.preparation = Preparation::SinglePhoton;
    c.plan = {{Photon::A, CascadeStep{Branch::Plus, 50}}, {Photon::A, CascadeStep{Branch::Minus, 50}}};
    c.trials = 100000;
    c.master_seed = 4;
    std::vector<TrialRecord> log;
    TrialStats s = run_experiment(c, log);
    EXPECT_NEAR(s.analytic_survival, 0.5, kTol);
    EXPECT_NEAR(static_cast<double>(s.surviving) / s.total, 0.5, 3.0 * binomial_sigma(0.5, s.total));
    EXPECT_EQ(s.agreement_rate, 1.0);
    for (const TrialRecord &r : log) {
        if (!r.survived()) {
            EXPECT_GE(r.detector, 0);
            EXPECT_LT(r.detector, 100);
        } else {
            EXPECT_EQ(r.detector, -1);
        }
    }
}

TEST(RunExperiment, ZeroSurvivalGivesNaNRate) {
    ExperimentConfig c;
    c.preparation = Preparation::SinglePhoton;
    c.plan = {op_step(Photon::A, Axis::Y, Branch::Plus, 0.0)};
    c.trials = 100;
    TrialStats s = run_experiment(c);
    EXPECT_EQ(s.surviving, 0);
    EXPECT_TRUE(std::isnan(s.agreement_rate));
    EXPECT_TRUE(std::isnan(s.analytic_prediction));
    EXPECT_EQ(s.analytic_survival, 0.0);
}

TEST(RunExperiment, WeightedModeRecordsSurvivalWeight) {
    ExperimentConfig c = epr_config({op_step(Photon::A, Axis::X, Branch::Plus, 0.5)}, 2000);
    c.mode = TrackingMode::Weighted;
    std::vector<TrialRecord> log;
    run_experiment(c, log);
    ASSERT_EQ(log.size(), 2000u);
    for (const TrialRecord &r : log) {
        EXPECT_NEAR(r.weight, r.survived() ? 0.75 : 1.0, kTol);
    }
}

TEST(Validate, RejectsInconsistentPlans) {
    ExperimentConfig single;
    single.preparation = Preparation::SinglePhoton;
    single.plan = {op_step(Photon::B, Axis::X, Branch::Plus, 0.5)};
    EXPECT_THROW(validate(single), ConfigError);
    EXPECT_THROW(run_experiment(single), ConfigError);

    ExperimentConfig bad_alpha = epr_config({op_step(Photon::A, Axis::X, Branch::Plus, 1.5)});
    EXPECT_THROW(validate(bad_alpha), ConfigError);

    ExperimentConfig no_trials = epr_config({}, 0);
    EXPECT_THROW(validate(no_trials), ConfigError);

    ExperimentConfig too_many = epr_config({{Photon::A, CascadeStep{Branch::Plus, 101}}});
    EXPECT_THROW(validate(too_many), ConfigError);

    ExperimentConfig no_beams = epr_config({});
    no_beams.n_beams = 0;
    EXPECT_THROW(validate(no_beams), ConfigError);
}

TEST(Reproducibility, SameSeedSameStatsAndLog) {
    ExperimentConfig c = epr_config({op_step(Photon::A, Axis::X, Branch::Plus, 0.3),
                                     op_step(Photon::B, Axis::Y, Branch::Minus, 0.6),
                                     {Photon::A, CascadeStep{Branch::Minus, 20}}},
                                    20000, 99);
    std::vector<TrialRecord> l1, l2, l3;
    TrialStats a = run_experiment(c, l1);
    TrialStats b = run_experiment(c, l2);
    c.threads = 4;
    TrialStats d = run_experiment(c, l3);
    for (const TrialStats *s : {&b, &d}) {
        EXPECT_EQ(a.clicked, s->clicked);
        EXPECT_EQ(a.agreement_count, s->agreement_count);
        EXPECT_EQ(a.unconditional_agreement_count, s->unconditional_agreement_count);
        EXPECT_EQ(a.agreement_rate, s->agreement_rate);
        EXPECT_EQ(a.std_error, s->std_error);
    }
    ASSERT_EQ(l1.size(), l3.size());
    for (std::size_t i = 0; i < l1.size(); ++i) {
        EXPECT_EQ(l1[i].clicked_step, l3[i].clicked_step);
        EXPECT_EQ(l1[i].detector, l3[i].detector);
        EXPECT_EQ(l1[i].a_result, l3[i].a_result);
        EXPECT_EQ(l1[i].b_result, l3[i].b_result);
        EXPECT_EQ(l1[i].weight, l2[i].weight);
    }
}

TEST(Reproducibility, DifferentSeedsDiffer) {
    ExperimentConfig c = epr_config({op_step(Photon::A, Axis::X, Branch::Plus, 0.5)}, 10000, 1);
    TrialStats a = run_experiment(c);
    c.master_seed = 2;
    TrialStats b = run_experiment(c);
    EXPECT_NE(a.clicked, b.clicked);
}

// Silent-chain Born probabilities computed with the oracle's tensor algebra.
struct Reference {
    double survival;
    double agreement;
};

Reference reference(const ExperimentConfig &c) {
    oracle::Vec4 v = oracle::epr();
    for (const PlanStep &step : c.plan) {
        const auto &op = std::get<PartialMeasurementOp>(step.action);
        v = oracle::apply_on(step.photon == Photon::A ? 0 : 1,
                             oracle::kraus(static_cast<int>(op.axis), op.branch == Branch::Minus, op.alpha), v);
    }
    return {oracle::norm2(v), oracle::agreement(v, static_cast<int>(c.final_axis))};
}

TEST(AnalyticExpectation, MatchesTensorReferenceProperty) {
    gen::for_all(500, 81, [](gen::Source &src) {
        std::vector<PlanStep> plan;
        int len = src.integer(0, 5);
        bool x_only = src.coin();
        for (int k = 0; k < len; ++k) {
            plan.push_back(op_step(src.coin() ? Photon::A : Photon::B, x_only ? Axis::X : src.axis(), src.branch(),
                                   src.alpha(0.05)));
        }
        ExperimentConfig c = epr_config(plan);
        c.final_axis = src.coin() ? Axis::Y : src.axis();
        AnalyticExpectation e = analytic_expectation(c);
        Reference r = reference(c);
        EXPECT_NEAR(e.survival, r.survival, kTol);
        EXPECT_NEAR(e.agreement, r.agreement, kTol);
    });
}

TEST(SurvivalAccounting, EmpiricalMatchesProductOfNoClickProbabilities) {
    gen::for_all(12, 82, [](gen::Source &src) {
        std::vector<PlanStep> plan;
        int len = src.integer(1, 4);
        for (int k = 0; k < len; ++k) {
            plan.push_back(op_step(src.coin() ? Photon::A : Photon::B, src.axis(), src.branch(), src.alpha(0.2)));
        }
        ExperimentConfig c = epr_config(plan, 100000, src.engine()());
        c.threads = 0;
        TrialStats s = run_experiment(c);
        double survival = static_cast<double>(s.surviving) / s.total;
        EXPECT_NEAR(survival, s.analytic_survival, 3.5 * binomial_sigma(s.analytic_survival, s.total));
        EXPECT_LT(std::abs(estimate_vs_analytic(s)), 4.0);
    });
}

TEST(EstimateVsAnalytic, Arithmetic) {
    TrialStats s;
    s.agreement_rate = 0.975;
    s.analytic_prediction = 0.9714;
    s.std_error = 0.002;
    EXPECT_NEAR(estimate_vs_analytic(s), 1.8, 1e-9);
    s.std_error = 0.0;
    s.agreement_rate = 0.9714;
    EXPECT_EQ(estimate_vs_analytic(s), 0.0);
    s.agreement_rate = 0.98;
    EXPECT_TRUE(std::isinf(estimate_vs_analytic(s)));
}

bool disagree(const FinalOutcome &o) { return !o.agree(); }

TEST(ConditionalClick, BaseRateWithoutCounterStage) {
    ExperimentConfig c = epr_config({op_step(Photon::A, Axis::X, Branch::Plus, 0.5)}, 100000, 5);
    ConditionalClickReport r = conditional_click_stat(c, 1, disagree);
    double base = std::pow(1.0 - std::sqrt(0.5), 2) / 3.0;
    EXPECT_NEAR(base, 0.02860, 5e-6);
    EXPECT_NEAR(r.condition_rate, base, 3.0 * binomial_sigma(base, r.survivors));
    EXPECT_EQ(r.condition_clicks, 0);
    EXPECT_EQ(r.counter_click_rate, 0.0);
}

TEST(ConditionalClick, VacuousConditionEmptyPlan) {
    ExperimentConfig c = epr_config({}, 1000, 6);
    ConditionalClickReport r = conditional_click_stat(c, 0, [](const FinalOutcome &) { return true; });
    EXPECT_EQ(r.survivors, 1000);
    EXPECT_EQ(r.click_given_condition, 0.0);
    EXPECT_EQ(r.counter_click_rate, 0.0);
}

TEST(ConditionalClick, CounterMeasurementCapturesWouldBeDisagreements) {
    ExperimentConfig c = epr_config(
        {op_step(Photon::A, Axis::X, Branch::Plus, 0.5), op_step(Photon::B, Axis::X, Branch::Minus, 0.5)}, 100000,
        7);
    c.mode = TrackingMode::Weighted;
    ConditionalClickReport r = conditional_click_stat(c, 1, disagree);
    EXPECT_GE(r.condition_count, 100);
    EXPECT_EQ(r.analytic_click_given_condition, 1.0);
    EXPECT_EQ(r.click_given_condition, 1.0);
    EXPECT_EQ(r.counter_survivor_disagreements, 0);
    EXPECT_EQ(r.disagreement_after_counter, 0.0);

    // Weight accounting: 0.75 survives the measurement, 0.5 survives both.
    EXPECT_NEAR(r.weight_before_counter, 0.75, kTol);
    EXPECT_NEAR(r.weight_after_counter, 0.5, kTol);
    WeightedEprAmplitudes before = weighted_epr_track({0.5, 1.0, 1.0, 1.0});
    WeightedEprAmplitudes after = weighted_epr_track({0.5, 1.0, 1.0, 0.5});
    EXPECT_NEAR(before.epr * before.epr + before.anti_epr * before.anti_epr, r.weight_before_counter, kTol);
    EXPECT_NEAR(after.epr * after.epr + after.anti_epr * after.anti_epr, r.weight_after_counter, kTol);
    // Click mass of the counter stage: the whole anti-EPR intensity plus an
    // equal share of EPR intensity.
    double pruned_anti = before.anti_epr * before.anti_epr;
    double matched_epr = before.epr * before.epr - after.epr * after.epr;
    EXPECT_NEAR(r.weight_before_counter - r.weight_after_counter, pruned_anti + matched_epr, kTol);
    double expected_click = 1.0 - r.weight_after_counter / r.weight_before_counter;
    EXPECT_NEAR(r.counter_click_rate, expected_click, 3.0 * binomial_sigma(expected_click, r.survivors));
}

TEST(ConditionalClick, ErrorPaths) {
    ExperimentConfig c = epr_config({}, 1000, 8);
    EXPECT_THROW(conditional_click_stat(c, 0, disagree), InsufficientStatistics);
    EXPECT_THROW(conditional_click_stat(c, 1, disagree), ConfigError);
    ExperimentConfig dead;
    dead.preparation = Preparation::SinglePhoton;
    dead.plan = {op_step(Photon::A, Axis::Y, Branch::Plus, 0.0)};
    dead.trials = 1000;
    EXPECT_THROW(conditional_click_stat(dead, 1, disagree), InsufficientStatistics);
}

}  // namespace
}  // namespace eraser
