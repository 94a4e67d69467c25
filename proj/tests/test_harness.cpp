#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "triality/harness.hpp"
#include "triality/rng.hpp"

using namespace triality;
using namespace triality::testing;

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const std::invalid_argument& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

ExperimentConfig reference_config() {
    ExperimentConfig config;
    config.theta1 = RotationAngle{kPi / 4};
    config.theta2 = RotationAngle{kPi / 6};
    config.theta3 = RotationAngle{kPi / 8};
    config.seed = 20240808;
    return config;
}

}  // namespace

TEST_CASE("parse_angle accepts radians and pi fractions") {
    CHECK_NEAR(parse_angle("1/4pi"), kPi / 4, 1e-15);
    CHECK_NEAR(parse_angle("3/4pi"), 3 * kPi / 4, 1e-15);
    CHECK_NEAR(parse_angle("-1/2pi"), -kPi / 2, 1e-15);
    CHECK_NEAR(parse_angle("pi"), kPi, 1e-15);
    CHECK_NEAR(parse_angle("-pi"), -kPi, 1e-15);
    CHECK_NEAR(parse_angle("2pi"), 2 * kPi, 1e-15);
    CHECK_NEAR(parse_angle("0.5pi"), kPi / 2, 1e-15);
    CHECK_NEAR(parse_angle("pi/4"), kPi / 4, 1e-15);
    CHECK_NEAR(parse_angle("-pi/2"), -kPi / 2, 1e-15);
    CHECK_NEAR(parse_angle("0.75"), 0.75, 1e-15);
    CHECK_NEAR(parse_angle("1e-3"), 1e-3, 1e-18);
    CHECK_NEAR(parse_angle(" 1/4 pi "), kPi / 4, 1e-15);
    CHECK(parse_angle("0") == 0.0);

    CHECK_THROWS_AS(parse_angle(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("1/0pi"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pipi"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("pi4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("1/2pi/2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle("1.5.2"), std::invalid_argument);
}

TEST_CASE("format_angle round-trips through parse_angle") {
    CHECK(format_angle(0.0) == "0");
    CHECK(format_angle(kPi) == "pi");
    CHECK(format_angle(kPi / 4) == "1/4pi");
    CHECK(format_angle(3 * kPi / 4) == "3/4pi");
    CHECK(format_angle(-kPi / 2) == "-1/2pi");
    CHECK(format_angle(2 * kPi) == "2pi");
    for (double x : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi, -kPi / 6, 0.1234}) {
        CHECK_NEAR(parse_angle(format_angle(x)), x, 1e-8);
    }
}

TEST_CASE("config validation names the offending field") {
    CHECK(throws_mentioning(
        [] {
            ExperimentConfig c;
            c.shots = 9999;
            validate_config(c);
        },
        "shots"));
    CHECK(throws_mentioning(
        [] {
            ExperimentConfig c;
            c.repetitions = 0;
            validate_config(c);
        },
        "repetitions"));
    CHECK(throws_mentioning(
        [] {
            ExperimentConfig c;
            c.noise.readout_flip_probability = 1.5;
            validate_config(c);
        },
        "readout_flip_probability"));
    CHECK(throws_mentioning(
        [] {
            ExperimentConfig c;
            c.theta2 = RotationAngle{std::numeric_limits<double>::quiet_NaN()};
            validate_config(c);
        },
        "theta2"));
    CHECK(throws_mentioning(
        [] {
            ExperimentConfig c;
            c.mode = RunMode::SweepCase1;
            c.sweep_points.clear();
            validate_config(c);
        },
        "sweep_points"));
}

TEST_CASE("run_single at the reference point") {
    const ExperimentRecord record = run_single(reference_config());
    CHECK(record.per_qubit_counts.has_value());
    CHECK(record.reconstructed.has_value());
    CHECK(record.per_repetition_reports.size() == 5);
    for (const TomographyCounts& c : *record.per_qubit_counts) {
        CHECK(c.n0 == 5000);
        CHECK(c.shots == 10000);
    }
    CHECK(record.report.triality_sum >= 0.999);
    CHECK(record.report.triality_sum <= 1.001);
    CHECK_NEAR(record.exact_report.triality_sum, 1.0, 1e-12);
}

TEST_CASE("the report is recomputable from the reconstructed matrices") {
    const ExperimentRecord record = run_single(reference_config());
    const TrialityReport again = triality_report(*record.reconstructed);
    CHECK(again.q_global == record.report.q_global);
    CHECK(again.mean_v_squared == record.report.mean_v_squared);
    CHECK(again.mean_p_squared == record.report.mean_p_squared);
    CHECK(again.triality_sum == record.report.triality_sum);
    for (std::size_t q = 0; q < 3; ++q) {
        CHECK(again.per_qubit[q].visibility == record.report.per_qubit[q].visibility);
        CHECK(again.per_qubit[q].predictability ==
              record.report.per_qubit[q].predictability);
    }
}

TEST_CASE("run_single on the product state") {
    ExperimentConfig config;
    config.theta1 = config.theta2 = config.theta3 = RotationAngle{0.0};
    config.seed = 3;
    const ExperimentRecord record = run_single(config);
    for (const DualityMetrics& m : record.report.per_qubit) {
        CHECK_NEAR(m.predictability, 1.0, 0.02);
        CHECK(m.visibility <= 0.02);
    }
    CHECK(record.report.q_global <= 0.02);
    CHECK(std::abs(record.report.q_global) <= 0.02);
}

TEST_CASE("exact mode matches the entrywise closed forms") {
    ExperimentConfig config = reference_config();
    config.mode = RunMode::Exact;
    const ExperimentRecord record = run_single(config);
    CHECK_FALSE(record.per_qubit_counts.has_value());
    CHECK_FALSE(record.reconstructed.has_value());
    CHECK(record.per_repetition_reports.empty());

    const PureState3 state =
        theta_state_formula(config.theta1, config.theta2, config.theta3);
    const ComplexMatrix2 rho_a = closed_form_reduction(state, QubitLabel::A);
    const double v_a = 2.0 * std::abs(rho_a(0, 1));
    const double p_a = std::abs(rho_a(1, 1).real() - rho_a(0, 0).real());
    CHECK_NEAR(record.report.per_qubit[0].visibility, v_a, 1e-12);
    CHECK_NEAR(record.report.per_qubit[0].predictability, p_a, 1e-12);
    CHECK(record.report.triality_sum == record.exact_report.triality_sum);
}

TEST_CASE("exact mode holds the identity for arbitrary parameters") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 25; ++trial) {
        ExperimentConfig config;
        config.mode = RunMode::Exact;
        config.theta1 = RotationAngle{random_in(rng, -2.0 * kPi, 2.0 * kPi)};
        config.theta2 = RotationAngle{random_in(rng, -2.0 * kPi, 2.0 * kPi)};
        config.theta3 = RotationAngle{random_in(rng, -2.0 * kPi, 2.0 * kPi)};
        const ExperimentRecord record = run_single(config);
        CHECK_NEAR(record.report.triality_sum, 1.0, 1e-12);
    }
}

TEST_CASE("run_sweep produces one record per point with matching oracles") {
    ExperimentConfig config;
    config.mode = RunMode::SweepCase1;
    config.seed = 99;
    const std::vector<ExperimentRecord> records = run_sweep(config);
    REQUIRE(records.size() == 5);
    const std::array<double, 5> expected_theta{0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
    for (std::size_t i = 0; i < records.size(); ++i) {
        REQUIRE(records[i].sweep_theta.has_value());
        CHECK_NEAR(*records[i].sweep_theta, expected_theta[i], 1e-15);
        REQUIRE(records[i].oracle.has_value());
        const SweepTerms expect = analytic_sweep_case1(RotationAngle{expected_theta[i]});
        CHECK(records[i].oracle->v_term == expect.v_term);
        CHECK(records[i].oracle->p_term == expect.p_term);
        CHECK(records[i].oracle->q == expect.q);
        CHECK_NEAR(records[i].report.mean_v_squared, expect.v_term, 0.02);
        CHECK_NEAR(records[i].report.mean_p_squared, expect.p_term, 0.02);
        CHECK_NEAR(records[i].report.q_global, expect.q, 0.02);
    }

    ExperimentConfig case2 = config;
    case2.mode = RunMode::SweepCase2;
    const std::vector<ExperimentRecord> records2 = run_sweep(case2);
    CHECK_NEAR(records2[2].report.q_global, 1.0, 0.02);   // GHZ point
    CHECK_NEAR(records2[0].report.mean_p_squared, 1.0, 0.02);

    ExperimentConfig wrong = config;
    wrong.mode = RunMode::Single;
    CHECK_THROWS_AS(run_sweep(wrong), std::invalid_argument);
    CHECK_THROWS_AS(run_single(config), std::invalid_argument);
}

TEST_CASE("averaging consistency at repetitions = 1") {
    ExperimentConfig config = reference_config();
    config.repetitions = 1;
    config.seed = 7;
    const ExperimentRecord record = run_single(config);
    const PureState3 state =
        prepare_theta_state(config.theta1, config.theta2, config.theta3);
    for (QubitLabel q : kAllQubits) {
        const auto qi = static_cast<std::size_t>(qubit_index(q));
        const TomographyCounts direct =
            simulate_counts(reduced_density_matrix(state, q), config.shots, config.noise,
                            derive_seed(config.seed, static_cast<std::uint64_t>(qi), 0ULL));
        const TomographyCounts& averaged = (*record.per_qubit_counts)[qi];
        CHECK(averaged.n1 == direct.n1);
        CHECK(averaged.n2 == direct.n2);
        CHECK(averaged.n3 == direct.n3);
    }
}

TEST_CASE("identical configs give byte-identical outputs") {
    ExperimentConfig config;
    config.mode = RunMode::SweepCase2;
    config.seed = 42;
    const std::vector<ExperimentRecord> a = run_sweep(config);
    const std::vector<ExperimentRecord> b = run_sweep(config);
    CHECK(emit_sweep_csv(a, 101) == emit_sweep_csv(b, 101));
    CHECK(to_json_string(a) == to_json_string(b));
    CHECK(emit_table(a, TableKind::Sweep) == emit_table(b, TableKind::Sweep));
}

TEST_CASE("metrics and counts tables carry the pinned layouts") {
    const ExperimentRecord record = run_single(reference_config());

    const std::string metrics = emit_table(record, TableKind::Metrics);
    const std::vector<std::string> metric_lines = split_lines(metrics);
    REQUIRE(metric_lines.size() >= 3);
    const std::string& header = metric_lines[0];
    std::size_t last = 0;
    for (const char* column : {"V_A", "V_B", "V_C", "P_A", "P_B", "P_C", "Q"}) {
        const std::size_t pos = header.find(column, last);
        REQUIRE(pos != std::string::npos);
        last = pos;
    }
    CHECK(metric_lines[1].find("simulated") == 0);
    CHECK(metric_lines[2].find("exact") == 0);
    CHECK(metrics.find("stddev") != std::string::npos);  // repetitions > 1

    const std::string counts = emit_table(record, TableKind::Counts);
    const std::vector<std::string> count_lines = split_lines(counts);
    REQUIRE(count_lines.size() == 5);
    CHECK(count_lines[0].find("qubit A") != std::string::npos);
    CHECK(count_lines[0].find("qubit C") != std::string::npos);
    CHECK(count_lines[1].find("mu0") == 0);
    CHECK(count_lines[4].find("mu3") == 0);
    CHECK(counts.find("5000") != std::string::npos);

    ExperimentConfig exact_config = reference_config();
    exact_config.mode = RunMode::Exact;
    const ExperimentRecord exact_record = run_single(exact_config);
    CHECK_THROWS_AS(emit_table(exact_record, TableKind::Counts), std::invalid_argument);
    const std::string exact_metrics = emit_table(exact_record, TableKind::Metrics);
    CHECK(exact_metrics.find("simulated") == std::string::npos);
    CHECK(exact_metrics.find("exact") != std::string::npos);
}

TEST_CASE("sweep table has theta rows and a final sum column") {
    ExperimentConfig config;
    config.mode = RunMode::SweepCase1;
    config.seed = 5;
    const std::vector<ExperimentRecord> records = run_sweep(config);
    const std::string table = emit_table(records, TableKind::Sweep);
    const std::vector<std::string> lines = split_lines(table);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0].find("theta") != std::string::npos);
    CHECK(lines[0].rfind("sum") == lines[0].size() - 3);
    CHECK(lines[1].find("0") != std::string::npos);
    CHECK(lines[2].find("1/4pi") != std::string::npos);
    CHECK(lines[5].find("pi") != std::string::npos);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::istringstream in(lines[i]);
        std::string theta, v, p, q, sum;
        in >> theta >> v >> p >> q >> sum;
        CHECK_NEAR(std::stod(sum), 1.0, 5e-4);
    }
}

TEST_CASE("sweep csv carries the theory grid and the simulated points") {
    ExperimentConfig config;
    config.mode = RunMode::SweepCase2;
    config.seed = 11;
    const std::vector<ExperimentRecord> records = run_sweep(config);
    const int resolution = 101;
    const std::string csv = emit_sweep_csv(records, resolution);
    const std::vector<std::string> lines = split_lines(csv);
    REQUIRE(lines.size() == 1 + 101 + 5);
    CHECK(lines[0] ==
          "theta,v_term_theory,p_term_theory,q_theory,v_term_sim,p_term_sim,q_sim,sum_sim");
    for (int g = 0; g < resolution; ++g) {
        const auto cells = split_cells(lines[static_cast<std::size_t>(1 + g)]);
        REQUIRE(cells.size() == 8);
        const double theta = std::stod(cells[0]);
        const double v = std::stod(cells[1]);
        const double p = std::stod(cells[2]);
        const double q = std::stod(cells[3]);
        CHECK(cells[4].empty());
        CHECK(cells[7].empty());
        CHECK_NEAR(q, std::sin(theta) * std::sin(theta), 1e-12);
        CHECK_NEAR(v + p + q, 1.0, 1e-12);
    }
    for (std::size_t i = 102; i < lines.size(); ++i) {
        const auto cells = split_cells(lines[i]);
        REQUIRE(cells.size() == 8);
        CHECK(cells[1].empty());
        CHECK_NEAR(std::stod(cells[7]), 1.0, 5e-3);
    }

    // case 1 grid includes pi/2 when the resolution is odd
    ExperimentConfig case1 = config;
    case1.mode = RunMode::SweepCase1;
    const std::string csv1 = emit_sweep_csv(run_sweep(case1), resolution);
    const auto lines1 = split_lines(csv1);
    const auto mid = split_cells(lines1[1 + 50]);
    CHECK_NEAR(std::stod(mid[0]), kPi / 2, 1e-12);
    CHECK_NEAR(std::stod(mid[1]), 1.0, 1e-12);

    CHECK_THROWS_AS(emit_sweep_csv(records, 1), std::invalid_argument);
    CHECK_THROWS_AS(emit_sweep_csv({}, 101), std::invalid_argument);
    CHECK_THROWS_AS(emit_sweep_csv({run_single(reference_config())}, 101),
                    std::invalid_argument);
}

TEST_CASE("single-record csv rows match the header width") {
    const ExperimentRecord record = run_single(reference_config());
    const std::vector<std::string> lines = split_lines(emit_single_csv(record));
    REQUIRE(lines.size() == 3);  // header + simulated + exact
    const std::size_t width = split_cells(lines[0]).size();
    CHECK(width == 14);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split_cells(lines[i]);
        REQUIRE(cells.size() == width);
    }
    const auto exact_cells = split_cells(lines[2]);
    CHECK(exact_cells[0] == "exact");
    CHECK(std::abs(std::stod(exact_cells[13]) - 1.0) <= 1e-12);
}

TEST_CASE("json mirrors the record fields") {
    ExperimentConfig config = reference_config();
    const std::string json = to_json_string(run_single(config));
    for (const char* key :
         {"\"config\"", "\"theta1\"", "\"shots\"", "\"repetitions\"", "\"seed\"", "\"noise\"",
          "\"mode\"", "\"per_qubit_counts\"", "\"reconstructed\"", "\"report\"",
          "\"exact_report\"", "\"per_repetition_reports\"", "\"q_global\"",
          "\"mean_v_squared\"", "\"triality_sum\"", "\"visibility\"", "\"predictability\""}) {
        CHECK(json.find(key) != std::string::npos);
    }
    CHECK(json.find("\"mode\": \"single\"") != std::string::npos);
}
