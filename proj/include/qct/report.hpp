// Copyright 2026 The QCT Authors
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

#ifndef QCT_REPORT_HPP
#define QCT_REPORT_HPP

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qct/adversary.hpp"
#include "qct/analysis.hpp"
#include "qct/format.hpp"

namespace qct::report {

using Json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

using qct::format_double;

// Model names, in canonical output order.
inline constexpr std::string_view MODEL_PAPER = "paper-eq4";
inline constexpr std::string_view MODEL_APPENDIX = "appendix-sum";
inline constexpr std::string_view MODEL_PERMUTATION = "permutation-exact";
inline constexpr std::string_view MODEL_MONTE_CARLO = "monte-carlo";
inline constexpr std::string_view MODEL_MIN_GAMMA = "min-gamma";

struct ReportRow {
    uint32_t n_pairs = 1;
    std::string model;
    double value = 0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
    std::optional<uint64_t> trials;
    std::optional<uint64_t> seed;
    std::optional<std::string> strategy;
    std::optional<double> forced_coin_rate;
    /// Pass-probability threshold a min-gamma row was computed for.
    std::optional<double> p_threshold;
};

inline ReportRow make_row(uint32_t n, std::string_view model, double value) {
    ReportRow r;
    r.n_pairs = n;
    r.model = std::string(model);
    r.value = value;
    return r;
}

/// The three closed-form pass probabilities for one N.
inline std::vector<ReportRow> reference_rows(uint32_t n) {
    return {
        make_row(n, MODEL_PAPER, analysis::pass_prob_paper(n)),
        make_row(n, MODEL_APPENDIX, analysis::pass_prob_appendix_sum(n)),
        make_row(n, MODEL_PERMUTATION, analysis::pass_prob_permutation_model(n)),
    };
}

/// For N = 1..n_max: the pass probability under every closed-form model and the smallest
/// per-measurement fidelity that keeps honest failures below `p_threshold`.
inline std::vector<ReportRow> analyze_rows(uint32_t n_max, double p_threshold) {
    std::vector<ReportRow> rows;
    for (uint32_t n = 1; n <= n_max; n++) {
        for (auto &r : reference_rows(n)) {
            rows.push_back(std::move(r));
        }
        ReportRow g = make_row(n, MODEL_MIN_GAMMA, analysis::min_gamma(n, p_threshold));
        g.p_threshold = p_threshold;
        rows.push_back(std::move(g));
    }
    return rows;
}

inline ReportRow monte_carlo_row(const ExperimentReport &r) {
    ReportRow row = make_row(r.n_pairs, MODEL_MONTE_CARLO, r.estimate);
    row.ci_low = r.ci_low;
    row.ci_high = r.ci_high;
    row.trials = r.trials;
    row.seed = r.seed;
    row.strategy = r.strategy;
    row.forced_coin_rate = r.forced_coin_rate;
    return row;
}

/// The closed-form models agree only for N <= 2.
inline bool models_disagree(uint32_t n) {
    return analysis::pass_prob_permutation_model_exact(n) != analysis::pass_prob_appendix_sum_exact(n);
}

inline Json row_json(const ReportRow &r) {
    Json j = Json::object();
    j["n_pairs"] = r.n_pairs;
    j["model"] = r.model;
    j["value"] = r.value;
    if (r.ci_low) j["ci_low"] = *r.ci_low;
    if (r.ci_high) j["ci_high"] = *r.ci_high;
    if (r.trials) j["trials"] = *r.trials;
    if (r.seed) j["seed"] = *r.seed;
    if (r.strategy) j["strategy"] = *r.strategy;
    if (r.forced_coin_rate) j["forced_coin_rate"] = *r.forced_coin_rate;
    if (r.p_threshold) j["p_threshold"] = *r.p_threshold;
    return j;
}

inline constexpr std::string_view CSV_HEADER =
    "n_pairs,model,value,ci_low,ci_high,trials,seed,strategy,forced_coin_rate,p_threshold";

inline std::string row_csv(const ReportRow &r) {
    auto opt_d = [](const std::optional<double> &d) { return d ? format_double(*d) : std::string(); };
    auto opt_u = [](const std::optional<uint64_t> &u) { return u ? std::to_string(*u) : std::string(); };
    std::string s = std::to_string(r.n_pairs) + "," + r.model + "," + format_double(r.value);
    s += "," + opt_d(r.ci_low) + "," + opt_d(r.ci_high) + "," + opt_u(r.trials) + "," + opt_u(r.seed);
    s += "," + r.strategy.value_or("") + "," + opt_d(r.forced_coin_rate) + "," + opt_d(r.p_threshold);
    return s;
}

inline void write_rows_text(const std::vector<ReportRow> &rows, std::ostream &out) {
    out << std::left << std::setw(8) << "n_pairs" << std::setw(20) << "model" << std::setw(26) << "value"
        << "extra\n";
    for (const auto &r : rows) {
        std::string extra;
        if (r.ci_low && r.ci_high) {
            extra += "ci95=[" + format_double(*r.ci_low) + ", " + format_double(*r.ci_high) + "]";
        }
        if (r.trials) extra += " trials=" + std::to_string(*r.trials);
        if (r.seed) extra += " seed=" + std::to_string(*r.seed);
        if (r.forced_coin_rate) extra += " forced_coin_rate=" + format_double(*r.forced_coin_rate);
        if (r.p_threshold) extra += " p_threshold=" + format_double(*r.p_threshold);
        out << std::left << std::setw(8) << r.n_pairs << std::setw(20) << r.model << std::setw(26)
            << format_double(r.value) << extra << '\n';
    }
}

inline void write_rows(const std::vector<ReportRow> &rows, Format f, std::ostream &out) {
    switch (f) {
        case Format::Json: {
            Json a = Json::array();
            for (const auto &r : rows) {
                a.push_back(row_json(r));
            }
            out << a.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            out << CSV_HEADER << '\n';
            for (const auto &r : rows) {
                out << row_csv(r) << '\n';
            }
            break;
        case Format::Text:
            write_rows_text(rows, out);
            break;
    }
}

/// Monte Carlo result plus the closed-form references for the same N.
inline void write_experiment(const ExperimentReport &r, bool pass_experiment, Format f, std::ostream &out) {
    std::vector<ReportRow> rows{monte_carlo_row(r)};
    for (auto &ref : reference_rows(r.n_pairs)) {
        rows.push_back(std::move(ref));
    }
    const bool disagree = models_disagree(r.n_pairs);
    switch (f) {
        case Format::Json: {
            Json j = Json::object();
            j["strategy"] = r.strategy;
            j["n_pairs"] = r.n_pairs;
            j["seed"] = r.seed;
            j["trials"] = r.trials;
            j["successes"] = r.successes;
            j["estimate"] = r.estimate;
            j["ci_low"] = r.ci_low;
            j["ci_high"] = r.ci_high;
            j["forced_coin_rate"] = r.forced_coin_rate;
            j["invariant_violations"] = r.invariant_violations;
            j["estimate_measures"] = pass_experiment ? "pass_probability" : "desired_coin_frequency";
            Json refs = Json::array();
            for (std::size_t i = 1; i < rows.size(); i++) {
                refs.push_back(row_json(rows[i]));
            }
            j["reference"] = std::move(refs);
            j["model_discrepancy"] = disagree;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            write_rows(rows, Format::Csv, out);
            break;
        case Format::Text:
            out << "strategy: " << r.strategy << "\n";
            out << "n_pairs: " << r.n_pairs << "  trials: " << r.trials << "  seed: " << r.seed << "\n";
            out << (pass_experiment ? "pass probability: " : "desired coin frequency: ") << format_double(r.estimate)
                << "  ci95=[" << format_double(r.ci_low) << ", " << format_double(r.ci_high) << "]\n";
            out << "forced coin rate: " << format_double(r.forced_coin_rate) << "\n";
            out << "invariant violations: " << r.invariant_violations << "\n";
            write_rows_text(rows, out);
            if (disagree) {
                out << "note: paper-eq4/appendix-sum and permutation-exact differ for N >= 3; the simulated "
                       "attack follows permutation-exact\n";
            }
            break;
    }
}

}  // namespace qct::report

#endif
