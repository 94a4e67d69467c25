// harness.hpp
// Experiment runner: configures the state family, shots, repetitions, seed
// and noise; runs the tomography -> metrics pipeline; renders counts,
// metrics and sweep tables, sweep CSV with analytic theory curves, and JSON
// records.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triality/circuit.hpp"
#include "triality/duality.hpp"
#include "triality/tomography.hpp"

namespace triality {

enum class RunMode { Single, SweepCase1, SweepCase2, Exact };

const char* run_mode_name(RunMode mode);

struct ExperimentConfig {
    RotationAngle theta1{0.0};
    RotationAngle theta2{0.0};
    RotationAngle theta3{0.0};
    std::int64_t shots = 10000;
    int repetitions = 5;
    std::uint64_t seed = 0;
    NoiseConfig noise;
    RunMode mode = RunMode::Single;

    static std::vector<RotationAngle> default_sweep_points();  // {0, pi/4, pi/2, 3pi/4, pi}
    std::vector<RotationAngle> sweep_points = default_sweep_points();
};

// Throws std::invalid_argument naming the offending field.
void validate_config(const ExperimentConfig& config);

struct ExperimentRecord {
    ExperimentConfig config;
    std::optional<double> sweep_theta;  // set for sweep records
    std::optional<std::array<TomographyCounts, 3>> per_qubit_counts;
    std::optional<std::array<ComplexMatrix2, 3>> reconstructed;
    TrialityReport report;        // from reconstructions; equals exact_report in exact mode
    TrialityReport exact_report;  // from exact reductions
    std::vector<TrialityReport> per_repetition_reports;
    std::optional<SweepTerms> oracle;  // analytic values at sweep_theta
};

// Full pipeline for one parameter point. Counts are averaged over
// repetitions (rounded to nearest integer) before inversion; sub-seeds are
// derive_seed(config.seed, qubit_index, repetition_index). mode must be
// Single or Exact; Exact skips sampling entirely.
ExperimentRecord run_single(const ExperimentConfig& config);

// One record per sweep point (case 1: theta,theta,theta; case 2: theta,0,0),
// each with the matching analytic oracle attached. Point i runs with master
// seed derive_seed(config.seed, i).
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config);

enum class TableKind { Counts, Metrics, Sweep };

// Human tables, 4-decimal rounding. Counts requires a shot-mode record.
std::string emit_table(const ExperimentRecord& record, TableKind kind);
std::string emit_table(const std::vector<ExperimentRecord>& records, TableKind kind);

// Flat full-precision CSV for a single-point record.
std::string emit_single_csv(const ExperimentRecord& record);

// Full-precision CSV: a dense analytic-theory grid (`resolution` points)
// plus one simulated row per sweep point; enough to redraw the sweep
// figures with any plotting tool.
std::string emit_sweep_csv(const std::vector<ExperimentRecord>& records, int resolution);

std::string to_json_string(const ExperimentRecord& record);
std::string to_json_string(const std::vector<ExperimentRecord>& records);

// Accepts decimal radians ("0.785", "-1.2e-3") or pi fractions: "pi",
// "-pi", "2pi", "1/4pi", "-3/4pi", "pi/4". Throws on anything else.
double parse_angle(const std::string& text);

// Renders radians as "<p>/<q>pi" when theta/pi is a small fraction,
// otherwise as a decimal; parse_angle() accepts every output.
std::string format_angle(double radians);

}  // namespace triality
