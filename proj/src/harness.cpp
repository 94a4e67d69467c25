#include "triality/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "triality/rng.hpp"

namespace triality {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

std::string fixed4(double x) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

std::string full17(double x) {
    if (x == 0.0) x = 0.0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config." + field + ": " + why);
}

bool is_sweep(RunMode mode) {
    return mode == RunMode::SweepCase1 || mode == RunMode::SweepCase2;
}

// Shared by run_single and run_sweep; config.mode is Single or Exact here.
ExperimentRecord run_point(const ExperimentConfig& config) {
    ExperimentRecord record;
    record.config = config;

    const PureState3 state =
        prepare_theta_state(config.theta1, config.theta2, config.theta3);
    std::array<ComplexMatrix2, 3> exact{};
    for (QubitLabel q : kAllQubits) {
        exact[static_cast<std::size_t>(qubit_index(q))] = reduced_density_matrix(state, q);
    }
    record.exact_report = triality_report(exact);
    if (config.mode == RunMode::Exact) {
        record.report = record.exact_report;
        return record;
    }

    const int reps = config.repetitions;
    std::vector<std::array<TomographyCounts, 3>> rep_counts(
        static_cast<std::size_t>(reps));
    for (int rep = 0; rep < reps; ++rep) {
        for (QubitLabel q : kAllQubits) {
            const auto qi = static_cast<std::size_t>(qubit_index(q));
            rep_counts[static_cast<std::size_t>(rep)][qi] = simulate_counts(
                exact[qi], config.shots, config.noise,
                derive_seed(config.seed, static_cast<std::uint64_t>(qi),
                            static_cast<std::uint64_t>(rep)));
        }
    }

    // average counts across repetitions, rounded to nearest integer
    std::array<TomographyCounts, 3> averaged{};
    for (std::size_t qi = 0; qi < 3; ++qi) {
        std::int64_t sum1 = 0, sum2 = 0, sum3 = 0;
        for (int rep = 0; rep < reps; ++rep) {
            const TomographyCounts& c = rep_counts[static_cast<std::size_t>(rep)][qi];
            sum1 += c.n1;
            sum2 += c.n2;
            sum3 += c.n3;
        }
        TomographyCounts& avg = averaged[qi];
        avg.shots = config.shots;
        avg.n0 = config.shots / 2;
        avg.n1 = std::llround(static_cast<double>(sum1) / reps);
        avg.n2 = std::llround(static_cast<double>(sum2) / reps);
        avg.n3 = std::llround(static_cast<double>(sum3) / reps);
    }

    std::array<ComplexMatrix2, 3> reconstructed{};
    for (std::size_t qi = 0; qi < 3; ++qi) {
        reconstructed[qi] = reconstruct(stokes_from_counts(averaged[qi]));
    }
    record.per_qubit_counts = averaged;
    record.reconstructed = reconstructed;
    record.report = triality_report(reconstructed);

    record.per_repetition_reports.reserve(static_cast<std::size_t>(reps));
    for (int rep = 0; rep < reps; ++rep) {
        std::array<ComplexMatrix2, 3> rho{};
        for (std::size_t qi = 0; qi < 3; ++qi) {
            rho[qi] = reconstruct(
                stokes_from_counts(rep_counts[static_cast<std::size_t>(rep)][qi]));
        }
        record.per_repetition_reports.push_back(triality_report(rho));
    }
    return record;
}

const char* kMetricsColumns[8] = {"V_A", "V_B", "V_C", "P_A", "P_B", "P_C", "Q", "sum"};

std::array<double, 8> metrics_row(const TrialityReport& report) {
    return {report.per_qubit[0].visibility,     report.per_qubit[1].visibility,
            report.per_qubit[2].visibility,     report.per_qubit[0].predictability,
            report.per_qubit[1].predictability, report.per_qubit[2].predictability,
            report.q_global,                    report.triality_sum};
}

std::string counts_table(const ExperimentRecord& record) {
    if (!record.per_qubit_counts) {
        throw std::invalid_argument("emit_table: record has no counts (exact mode)");
    }
    const auto& counts = *record.per_qubit_counts;
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-4s %9s %9s %9s\n", "mu_i", "n_i", "qubit A",
                  "qubit B", "qubit C");
    out << line;
    const char* labels[4] = {"mu0 = |0><0| + |1><1|", "mu1 = |0><0|", "mu2 = |-><-|",
                             "mu3 = |R><R|"};
    const char* names[4] = {"n0", "n1", "n2", "n3"};
    for (int i = 0; i < 4; ++i) {
        auto pick = [&](const TomographyCounts& c) {
            switch (i) {
                case 0: return c.n0;
                case 1: return c.n1;
                case 2: return c.n2;
                default: return c.n3;
            }
        };
        std::snprintf(line, sizeof line, "%-22s %-4s %9lld %9lld %9lld\n", labels[i],
                      names[i], static_cast<long long>(pick(counts[0])),
                      static_cast<long long>(pick(counts[1])),
                      static_cast<long long>(pick(counts[2])));
        out << line;
    }
    return out.str();
}

std::string metrics_table(const ExperimentRecord& record) {
    std::ostringstream out;
    out << "          ";
    for (const char* col : kMetricsColumns) {
        char cell[16];
        std::snprintf(cell, sizeof cell, " %7s", col);
        out << cell;
    }
    out << "\n";
    auto emit_row = [&out](const char* label, const std::array<double, 8>& values) {
        char cell[32];
        std::snprintf(cell, sizeof cell, "%-10s", label);
        out << cell;
        for (double v : values) {
            std::snprintf(cell, sizeof cell, " %7s", fixed4(v).c_str());
            out << cell;
        }
        out << "\n";
    };
    if (record.per_qubit_counts) {
        emit_row("simulated", metrics_row(record.report));
    }
    emit_row("exact", metrics_row(record.exact_report));
    if (record.per_repetition_reports.size() > 1) {
        const std::size_t n = record.per_repetition_reports.size();
        std::array<double, 8> mean{}, stddev{};
        for (const TrialityReport& rep : record.per_repetition_reports) {
            const auto row = metrics_row(rep);
            for (std::size_t i = 0; i < 8; ++i) mean[i] += row[i];
        }
        for (double& m : mean) m /= static_cast<double>(n);
        for (const TrialityReport& rep : record.per_repetition_reports) {
            const auto row = metrics_row(rep);
            for (std::size_t i = 0; i < 8; ++i) {
                stddev[i] += (row[i] - mean[i]) * (row[i] - mean[i]);
            }
        }
        for (double& s : stddev) s = std::sqrt(s / static_cast<double>(n - 1));
        emit_row("stddev", stddev);
    }
    return out.str();
}

double record_theta(const ExperimentRecord& record) {
    return record.sweep_theta ? *record.sweep_theta : record.config.theta1.radians;
}

std::string sweep_table(const std::vector<ExperimentRecord>& records) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "%8s %8s %8s %8s %8s\n", "theta", "v_term", "p_term",
                  "Q", "sum");
    out << line;
    for (const ExperimentRecord& record : records) {
        const TrialityReport& r = record.report;
        std::snprintf(line, sizeof line, "%8s %8s %8s %8s %8s\n",
                      format_angle(record_theta(record)).c_str(),
                      fixed4(r.mean_v_squared).c_str(), fixed4(r.mean_p_squared).c_str(),
                      fixed4(r.q_global).c_str(), fixed4(r.triality_sum).c_str());
        out << line;
    }
    return out.str();
}

json to_json(const ComplexMatrix2& m) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c < 2; ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(row);
    }
    return rows;
}

json to_json(const TomographyCounts& c) {
    return json{{"n0", c.n0}, {"n1", c.n1}, {"n2", c.n2}, {"n3", c.n3}, {"shots", c.shots}};
}

json to_json(const TrialityReport& report) {
    json per_qubit;
    for (QubitLabel q : kAllQubits) {
        const DualityMetrics& m = report.per_qubit[static_cast<std::size_t>(qubit_index(q))];
        per_qubit[qubit_name(q)] = {{"visibility", m.visibility},
                                    {"predictability", m.predictability}};
    }
    return json{{"per_qubit", per_qubit},
                {"q_global", report.q_global},
                {"mean_v_squared", report.mean_v_squared},
                {"mean_p_squared", report.mean_p_squared},
                {"triality_sum", report.triality_sum}};
}

json to_json(const ExperimentConfig& config) {
    json sweep_points = json::array();
    for (RotationAngle angle : config.sweep_points) sweep_points.push_back(angle.radians);
    return json{{"theta1", config.theta1.radians},
                {"theta2", config.theta2.radians},
                {"theta3", config.theta3.radians},
                {"shots", config.shots},
                {"repetitions", config.repetitions},
                {"seed", config.seed},
                {"noise",
                 {{"readout_flip_probability", config.noise.readout_flip_probability},
                  {"depolarizing_probability", config.noise.depolarizing_probability}}},
                {"mode", run_mode_name(config.mode)},
                {"sweep_points", sweep_points}};
}

json to_json(const ExperimentRecord& record) {
    json j;
    j["config"] = to_json(record.config);
    if (record.sweep_theta) j["sweep_theta"] = *record.sweep_theta;
    if (record.per_qubit_counts) {
        json counts;
        for (QubitLabel q : kAllQubits) {
            counts[qubit_name(q)] =
                to_json((*record.per_qubit_counts)[static_cast<std::size_t>(qubit_index(q))]);
        }
        j["per_qubit_counts"] = counts;
    }
    if (record.reconstructed) {
        json matrices;
        for (QubitLabel q : kAllQubits) {
            matrices[qubit_name(q)] =
                to_json((*record.reconstructed)[static_cast<std::size_t>(qubit_index(q))]);
        }
        j["reconstructed"] = matrices;
    }
    j["report"] = to_json(record.report);
    j["exact_report"] = to_json(record.exact_report);
    if (!record.per_repetition_reports.empty()) {
        json reps = json::array();
        for (const TrialityReport& r : record.per_repetition_reports) reps.push_back(to_json(r));
        j["per_repetition_reports"] = reps;
    }
    if (record.oracle) {
        j["oracle"] = {{"v_term", record.oracle->v_term},
                       {"p_term", record.oracle->p_term},
                       {"q", record.oracle->q}};
    }
    return j;
}

long long parse_integer(const std::string& text, const std::string& original) {
    std::size_t consumed = 0;
    long long value = 0;
    try {
        value = std::stoll(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid angle '" + original + "'");
    }
    if (consumed != text.size()) {
        throw std::invalid_argument("invalid angle '" + original + "'");
    }
    return value;
}

double parse_decimal(const std::string& text, const std::string& original) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid angle '" + original + "'");
    }
    if (consumed != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("invalid angle '" + original + "'");
    }
    return value;
}

}  // namespace

const char* run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Single: return "single";
        case RunMode::SweepCase1: return "sweep_case1";
        case RunMode::SweepCase2: return "sweep_case2";
        case RunMode::Exact: return "exact";
    }
    return "?";
}

std::vector<RotationAngle> ExperimentConfig::default_sweep_points() {
    return {RotationAngle{0.0}, RotationAngle{kPi / 4}, RotationAngle{kPi / 2},
            RotationAngle{3 * kPi / 4}, RotationAngle{kPi}};
}

void validate_config(const ExperimentConfig& config) {
    if (!std::isfinite(config.theta1.radians)) fail_field("theta1", "must be finite");
    if (!std::isfinite(config.theta2.radians)) fail_field("theta2", "must be finite");
    if (!std::isfinite(config.theta3.radians)) fail_field("theta3", "must be finite");
    if (config.shots <= 0 || config.shots % 2 != 0) {
        fail_field("shots", "must be a positive even integer");
    }
    if (config.repetitions < 1) fail_field("repetitions", "must be at least 1");
    if (!(config.noise.readout_flip_probability >= 0.0 &&
          config.noise.readout_flip_probability <= 1.0)) {
        fail_field("noise.readout_flip_probability", "must lie in [0, 1]");
    }
    if (!(config.noise.depolarizing_probability >= 0.0 &&
          config.noise.depolarizing_probability <= 1.0)) {
        fail_field("noise.depolarizing_probability", "must lie in [0, 1]");
    }
    if (is_sweep(config.mode)) {
        if (config.sweep_points.empty()) {
            fail_field("sweep_points", "must be nonempty in sweep modes");
        }
        for (RotationAngle angle : config.sweep_points) {
            if (!std::isfinite(angle.radians)) {
                fail_field("sweep_points", "entries must be finite");
            }
        }
    }
}

ExperimentRecord run_single(const ExperimentConfig& config) {
    validate_config(config);
    if (config.mode != RunMode::Single && config.mode != RunMode::Exact) {
        throw std::invalid_argument("run_single: mode must be single or exact");
    }
    return run_point(config);
}

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config) {
    validate_config(config);
    if (!is_sweep(config.mode)) {
        throw std::invalid_argument("run_sweep: mode must be sweep_case1 or sweep_case2");
    }
    std::vector<ExperimentRecord> records;
    records.reserve(config.sweep_points.size());
    for (std::size_t i = 0; i < config.sweep_points.size(); ++i) {
        const RotationAngle theta = config.sweep_points[i];
        ExperimentConfig point = config;
        point.mode = RunMode::Single;
        point.seed = derive_seed(config.seed, static_cast<std::uint64_t>(i));
        if (config.mode == RunMode::SweepCase1) {
            point.theta1 = point.theta2 = point.theta3 = theta;
        } else {
            point.theta1 = theta;
            point.theta2 = RotationAngle{0.0};
            point.theta3 = RotationAngle{0.0};
        }
        ExperimentRecord record = run_point(point);
        record.config.mode = config.mode;
        record.sweep_theta = theta.radians;
        record.oracle = config.mode == RunMode::SweepCase1 ? analytic_sweep_case1(theta)
                                                           : analytic_sweep_case2(theta);
        records.push_back(std::move(record));
    }
    return records;
}

std::string emit_table(const ExperimentRecord& record, TableKind kind) {
    switch (kind) {
        case TableKind::Counts: return counts_table(record);
        case TableKind::Metrics: return metrics_table(record);
        case TableKind::Sweep: return sweep_table({record});
    }
    throw std::invalid_argument("emit_table: unknown table kind");
}

std::string emit_table(const std::vector<ExperimentRecord>& records, TableKind kind) {
    if (records.empty()) throw std::invalid_argument("emit_table: no records");
    if (kind == TableKind::Sweep) return sweep_table(records);
    std::ostringstream out;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records.size() > 1) {
            if (i > 0) out << "\n";
            out << "theta = " << format_angle(record_theta(records[i])) << "\n";
        }
        out << emit_table(records[i], kind);
    }
    return out.str();
}

std::string emit_single_csv(const ExperimentRecord& record) {
    std::ostringstream out;
    out << "source,theta1,theta2,theta3,V_A,V_B,V_C,P_A,P_B,P_C,q_global,"
           "mean_v_squared,mean_p_squared,triality_sum\n";
    auto emit_row = [&out, &record](const char* source, const TrialityReport& report) {
        out << source << "," << full17(record.config.theta1.radians) << ","
            << full17(record.config.theta2.radians) << ","
            << full17(record.config.theta3.radians);
        for (const DualityMetrics& m : report.per_qubit) out << "," << full17(m.visibility);
        for (const DualityMetrics& m : report.per_qubit) {
            out << "," << full17(m.predictability);
        }
        out << "," << full17(report.q_global) << "," << full17(report.mean_v_squared) << ","
            << full17(report.mean_p_squared) << "," << full17(report.triality_sum) << "\n";
    };
    if (record.per_qubit_counts) emit_row("simulated", record.report);
    emit_row("exact", record.exact_report);
    return out.str();
}

std::string emit_sweep_csv(const std::vector<ExperimentRecord>& records, int resolution) {
    if (records.empty()) throw std::invalid_argument("emit_sweep_csv: no records");
    if (resolution < 2) throw std::invalid_argument("emit_sweep_csv: resolution must be >= 2");
    const RunMode mode = records.front().config.mode;
    if (!is_sweep(mode)) {
        throw std::invalid_argument("emit_sweep_csv: records are not from a sweep");
    }
    double lo = 0.0, hi = kPi;
    for (const ExperimentRecord& record : records) {
        lo = std::min(lo, record_theta(record));
        hi = std::max(hi, record_theta(record));
    }
    std::ostringstream out;
    out << "theta,v_term_theory,p_term_theory,q_theory,v_term_sim,p_term_sim,q_sim,sum_sim\n";
    for (int g = 0; g < resolution; ++g) {
        const double theta = lo + (hi - lo) * g / (resolution - 1);
        const SweepTerms terms = mode == RunMode::SweepCase1
                                     ? analytic_sweep_case1(RotationAngle{theta})
                                     : analytic_sweep_case2(RotationAngle{theta});
        out << full17(theta) << "," << full17(terms.v_term) << "," << full17(terms.p_term)
            << "," << full17(terms.q) << ",,,,\n";
    }
    for (const ExperimentRecord& record : records) {
        const TrialityReport& r = record.report;
        out << full17(record_theta(record)) << ",,,," << full17(r.mean_v_squared) << ","
            << full17(r.mean_p_squared) << "," << full17(r.q_global) << ","
            << full17(r.triality_sum) << "\n";
    }
    return out.str();
}

std::string to_json_string(const ExperimentRecord& record) {
    return to_json(record).dump(2) + "\n";
}

std::string to_json_string(const std::vector<ExperimentRecord>& records) {
    json j = json::array();
    for (const ExperimentRecord& record : records) j.push_back(to_json(record));
    return j.dump(2) + "\n";
}

double parse_angle(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
        }
    }
    if (s.empty()) throw std::invalid_argument("invalid angle '" + text + "'");

    const std::size_t pos = s.find("pi");
    if (pos == std::string::npos) return parse_decimal(s, text);

    std::string head = s.substr(0, pos);
    const std::string tail = s.substr(pos + 2);
    double sign = 1.0;
    if (!head.empty() && (head.front() == '+' || head.front() == '-')) {
        if (head.front() == '-') sign = -1.0;
        head.erase(0, 1);
    }
    double numerator = 1.0;
    double denominator = 1.0;
    const std::size_t slash = head.find('/');
    if (slash != std::string::npos) {
        // "<p>/<q>pi"
        numerator = static_cast<double>(
            parse_integer(head.substr(0, slash), text));
        const long long q = parse_integer(head.substr(slash + 1), text);
        if (q == 0) throw std::invalid_argument("invalid angle '" + text + "' (zero denominator)");
        denominator = static_cast<double>(q);
        if (!tail.empty()) throw std::invalid_argument("invalid angle '" + text + "'");
    } else {
        if (!head.empty()) numerator = parse_decimal(head, text);
        if (!tail.empty()) {
            // "pi/<q>"
            if (tail.front() != '/') throw std::invalid_argument("invalid angle '" + text + "'");
            const long long q = parse_integer(tail.substr(1), text);
            if (q == 0) {
                throw std::invalid_argument("invalid angle '" + text + "' (zero denominator)");
            }
            denominator = static_cast<double>(q);
        }
    }
    return sign * numerator / denominator * kPi;
}

std::string format_angle(double radians) {
    if (radians == 0.0) return "0";
    const double turns = radians / kPi;
    for (long long den = 1; den <= 16; ++den) {
        const double scaled = turns * static_cast<double>(den);
        const double rounded = std::round(scaled);
        if (std::abs(scaled - rounded) < 1e-9 && rounded != 0.0 && std::abs(rounded) <= 64) {
            long long num = static_cast<long long>(rounded);
            long long deno = den;
            const long long g = std::gcd(std::llabs(num), deno);
            num /= g;
            deno /= g;
            std::ostringstream out;
            if (num < 0) {
                out << "-";
                num = -num;
            }
            if (deno == 1) {
                if (num != 1) out << num;
                out << "pi";
            } else {
                out << num << "/" << deno << "pi";
            }
            return out.str();
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", radians);
    return buf;
}

}  // namespace triality
