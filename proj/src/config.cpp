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

#include "eraser/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "eraser/errors.hpp"

namespace eraser {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string_view> split_fields(std::string_view s) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = s.find(',', start);
        fields.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

double parse_real(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

template <class Int>
Int parse_integer(std::string_view text) {
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("not an integer: '" + std::string(text) + "'");
    }
    return v;
}

Photon parse_photon(std::string_view text) {
    std::string t = lower(text);
    if (t == "a") {
        return Photon::A;
    }
    if (t == "b") {
        return Photon::B;
    }
    throw ConfigError("unknown photon '" + std::string(text) + "' (expected A or B)");
}

std::string_view branch_name(Axis axis, Branch branch) {
    static constexpr std::string_view names[3][2] = {{"up", "right"}, {"ne", "se"}, {"odot", "otimes"}};
    return names[static_cast<int>(axis)][branch == Branch::Plus ? 0 : 1];
}

}  // namespace

Axis parse_axis(std::string_view text) {
    std::string t = lower(trim(text));
    if (t == "x") {
        return Axis::X;
    }
    if (t == "y") {
        return Axis::Y;
    }
    if (t == "z") {
        return Axis::Z;
    }
    throw ConfigError("unknown axis '" + std::string(text) + "' (expected x, y or z)");
}

Branch parse_branch(std::string_view text, Axis axis) {
    std::string t = lower(trim(text));
    if (t == "plus" || t == "+") {
        return Branch::Plus;
    }
    if (t == "minus" || t == "-") {
        return Branch::Minus;
    }
    for (Branch b : {Branch::Plus, Branch::Minus}) {
        if (t == branch_name(axis, b)) {
            return b;
        }
    }
    throw ConfigError("unknown branch '" + std::string(text) + "' for axis " + std::string(to_string(axis)));
}

TrackingMode parse_mode(std::string_view text) {
    std::string t = lower(trim(text));
    if (t == "normalized") {
        return TrackingMode::Normalized;
    }
    if (t == "weighted") {
        return TrackingMode::Weighted;
    }
    throw ConfigError("unknown mode '" + std::string(text) + "' (expected normalized or weighted)");
}

std::string_view to_string(TrackingMode mode) {
    return mode == TrackingMode::Normalized ? "normalized" : "weighted";
}

ParsedConfig parse_config(std::istream &in) {
    ParsedConfig parsed;
    ExperimentConfig &cfg = parsed.config;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty() || (line.front() == '[' && line.back() == ']')) {
            continue;
        }
        try {
            auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("expected 'key = value'");
            }
            std::string key = lower(trim(line.substr(0, eq)));
            std::string_view value = trim(line.substr(eq + 1));
            if (key == "preparation") {
                std::string v = lower(value);
                if (v == "epr") {
                    cfg.preparation = Preparation::EprPair;
                } else if (v == "single") {
                    cfg.preparation = Preparation::SinglePhoton;
                } else {
                    throw ConfigError("unknown preparation '" + std::string(value) + "' (expected epr or single)");
                }
            } else if (key == "initial_branch") {
                cfg.initial_branch = parse_branch(value, Axis::Y);
            } else if (key == "mode") {
                cfg.mode = parse_mode(value);
            } else if (key == "trials") {
                cfg.trials = parse_integer<std::int64_t>(value);
            } else if (key == "seed") {
                cfg.master_seed = parse_integer<std::uint64_t>(value);
                parsed.has_seed = true;
            } else if (key == "final_axis") {
                cfg.final_axis = parse_axis(value);
            } else if (key == "n_beams") {
                cfg.n_beams = parse_integer<int>(value);
            } else if (key == "op") {
                auto f = split_fields(value);
                if (f.size() != 4) {
                    throw ConfigError("op needs photon,axis,branch,alpha");
                }
                Axis axis = parse_axis(f[1]);
                cfg.plan.push_back({parse_photon(f[0]), PartialMeasurementOp{axis, parse_branch(f[2], axis),
                                                                             parse_real(f[3])}});
            } else if (key == "cascade") {
                auto f = split_fields(value);
                if (f.size() != 3) {
                    throw ConfigError("cascade needs photon,branch,n_detectors");
                }
                cfg.plan.push_back(
                    {parse_photon(f[0]), CascadeStep{parse_branch(f[1], Axis::X), parse_integer<int>(f[2])}});
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError &e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    validate(cfg);
    return parsed;
}

ParsedConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    return parse_config(in);
}

std::string format_config(const ExperimentConfig &config) {
    std::ostringstream out;
    out << "[experiment]\n";
    out << "preparation = " << (config.preparation == Preparation::EprPair ? "epr" : "single") << "\n";
    if (config.preparation == Preparation::SinglePhoton) {
        out << "initial_branch = " << branch_name(Axis::Y, config.initial_branch) << "\n";
    }
    out << "mode = " << to_string(config.mode) << "\n";
    out << "trials = " << config.trials << "\n";
    out << "seed = " << config.master_seed << "\n";
    out << "final_axis = " << to_string(config.final_axis) << "\n";
    out << "n_beams = " << config.n_beams << "\n";
    out << "[plan]\n";
    for (const PlanStep &step : config.plan) {
        if (const auto *op = std::get_if<PartialMeasurementOp>(&step.action)) {
            out << "op = " << to_string(step.photon) << "," << to_string(op->axis) << ","
                << branch_name(op->axis, op->branch) << "," << format_double(op->alpha) << "\n";
        } else {
            const auto &c = std::get<CascadeStep>(step.action);
            out << "cascade = " << to_string(step.photon) << "," << branch_name(Axis::X, c.branch) << ","
                << c.n_detectors << "\n";
        }
    }
    return out.str();
}

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void write_stats_csv(std::ostream &out, const TrialStats &s) {
    out << "total,clicked,surviving,agreement_count,agreement_rate,std_error,analytic_prediction,"
           "analytic_survival,z_score\n";
    out << s.total << ',' << s.clicked << ',' << s.surviving << ',' << s.agreement_count << ','
        << format_double(s.agreement_rate) << ',' << format_double(s.std_error) << ','
        << format_double(s.analytic_prediction) << ',' << format_double(s.analytic_survival) << ','
        << format_double(estimate_vs_analytic(s)) << '\n';
}

void write_trial_log_csv(std::ostream &out, const std::vector<TrialRecord> &records) {
    out << "trial,clicked_step,detector,a_result,b_result,weight\n";
    for (const TrialRecord &r : records) {
        out << r.trial << ',' << r.clicked_step << ',' << r.detector << ',' << r.a_result << ',' << r.b_result << ','
            << format_double(r.weight) << '\n';
    }
}

}  // namespace eraser
