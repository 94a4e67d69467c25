// Command-line runner for the three-qubit tomography / duality pipeline.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "triality/harness.hpp"

namespace {

using namespace triality;

struct CliOptions {
    std::string theta1 = "1/4pi";
    std::string theta2 = "1/6pi";
    std::string theta3 = "1/8pi";
    std::vector<std::string> theta_list;
    std::int64_t shots = 10000;
    int reps = 5;
    std::uint64_t seed = 1;
    double readout_flip = 0.0;
    double depolarizing = 0.0;
    int case_number = 1;
    std::string format = "table";
    std::string out_path;
    int resolution = 201;
};

void add_theta_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--theta1", opt.theta1, "first rotation angle (radians or pi fraction)");
    cmd->add_option("--theta2", opt.theta2, "second rotation angle");
    cmd->add_option("--theta3", opt.theta3, "third rotation angle");
}

void add_sampling_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--shots", opt.shots, "shots per measurement operator (positive, even)");
    cmd->add_option("--reps", opt.reps, "repetitions to average over");
    cmd->add_option("--seed", opt.seed, "master seed for all sampling");
    cmd->add_option("--readout-flip", opt.readout_flip, "readout flip probability [0,1]");
    cmd->add_option("--depolarizing", opt.depolarizing, "depolarizing probability [0,1]");
}

void add_output_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--out", opt.out_path, "write output to this file instead of stdout");
}

ExperimentConfig build_config(const CliOptions& opt, RunMode mode) {
    ExperimentConfig config;
    config.theta1 = RotationAngle{parse_angle(opt.theta1)};
    config.theta2 = RotationAngle{parse_angle(opt.theta2)};
    config.theta3 = RotationAngle{parse_angle(opt.theta3)};
    config.shots = opt.shots;
    config.repetitions = opt.reps;
    config.seed = opt.seed;
    config.noise.readout_flip_probability = opt.readout_flip;
    config.noise.depolarizing_probability = opt.depolarizing;
    config.mode = mode;
    if (!opt.theta_list.empty()) {
        config.sweep_points.clear();
        for (const std::string& item : opt.theta_list) {
            config.sweep_points.push_back(RotationAngle{parse_angle(item)});
        }
    }
    return config;
}

void write_output(const CliOptions& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + opt.out_path + "'");
    file << text;
    if (!file) throw std::runtime_error("failed writing output file '" + opt.out_path + "'");
}

std::string single_header(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "theta = (" << format_angle(config.theta1.radians) << ", "
        << format_angle(config.theta2.radians) << ", " << format_angle(config.theta3.radians)
        << ")";
    if (config.mode != RunMode::Exact) {
        out << "  shots = " << config.shots << "  repetitions = " << config.repetitions
            << "  seed = " << config.seed;
    }
    out << "\n";
    return out.str();
}

int cmd_single(const CliOptions& opt, RunMode mode) {
    const ExperimentConfig config = build_config(opt, mode);
    const ExperimentRecord record = run_single(config);
    if (opt.format == "json") {
        write_output(opt, to_json_string(record));
    } else if (opt.format == "csv") {
        write_output(opt, emit_single_csv(record));
    } else {
        std::ostringstream out;
        out << single_header(config) << "\n";
        if (record.per_qubit_counts) {
            out << "counts:\n" << emit_table(record, TableKind::Counts) << "\n";
        }
        out << "metrics:\n" << emit_table(record, TableKind::Metrics);
        write_output(opt, out.str());
    }
    return 0;
}

int cmd_sweep(const CliOptions& opt) {
    const RunMode mode = opt.case_number == 1 ? RunMode::SweepCase1 : RunMode::SweepCase2;
    const ExperimentConfig config = build_config(opt, mode);
    const std::vector<ExperimentRecord> records = run_sweep(config);
    if (opt.format == "json") {
        write_output(opt, to_json_string(records));
    } else if (opt.format == "csv") {
        write_output(opt, emit_sweep_csv(records, opt.resolution));
    } else {
        std::ostringstream out;
        out << "sweep case " << opt.case_number << "  shots = " << config.shots
            << "  repetitions = " << config.repetitions << "  seed = " << config.seed
            << "\n\n"
            << emit_table(records, TableKind::Sweep);
        write_output(opt, out.str());
    }
    return 0;
}

int cmd_tables(const CliOptions& opt) {
    const ExperimentConfig single_config = build_config(opt, RunMode::Single);
    const ExperimentRecord single = run_single(single_config);

    CliOptions sweep_opt = opt;
    sweep_opt.case_number = 1;
    const std::vector<ExperimentRecord> case1 =
        run_sweep(build_config(sweep_opt, RunMode::SweepCase1));
    const std::vector<ExperimentRecord> case2 =
        run_sweep(build_config(sweep_opt, RunMode::SweepCase2));

    if (opt.format == "json") {
        std::ostringstream out;
        out << "{\n\"single\": " << to_json_string(single) << ",\n\"sweep_case1\": "
            << to_json_string(case1) << ",\n\"sweep_case2\": " << to_json_string(case2)
            << "}\n";
        write_output(opt, out.str());
        return 0;
    }
    if (opt.format == "csv") {
        std::ostringstream out;
        out << "# single\n" << emit_single_csv(single) << "# sweep case 1\n"
            << emit_sweep_csv(case1, opt.resolution) << "# sweep case 2\n"
            << emit_sweep_csv(case2, opt.resolution);
        write_output(opt, out.str());
        return 0;
    }
    std::ostringstream out;
    out << single_header(single_config) << "\n";
    out << "counts:\n" << emit_table(single, TableKind::Counts) << "\n";
    out << "metrics:\n" << emit_table(single, TableKind::Metrics) << "\n";
    out << "sweep case 1 (theta1 = theta2 = theta3 = theta):\n"
        << emit_table(case1, TableKind::Sweep) << "\n";
    out << "sweep case 2 (theta1 = theta, theta2 = theta3 = 0):\n"
        << emit_table(case2, TableKind::Sweep);
    write_output(opt, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-qubit state preparation, shot-based single-qubit tomography, "
                 "and duality/entanglement metrics"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* single = app.add_subcommand(
        "single", "run the tomography pipeline at one (theta1, theta2, theta3)");
    add_theta_flags(single, opt);
    add_sampling_flags(single, opt);
    add_output_flags(single, opt);

    CLI::App* sweep =
        app.add_subcommand("sweep", "sweep theta over a list of points for case 1 or 2");
    sweep->add_option("--case", opt.case_number, "1: theta1=theta2=theta3; 2: theta2=theta3=0")
        ->check(CLI::IsMember({1, 2}))
        ->required();
    sweep->add_option("--theta-list", opt.theta_list,
                      "comma-separated sweep angles (default 0,1/4pi,1/2pi,3/4pi,pi)")
        ->delimiter(',');
    sweep->add_option("--resolution", opt.resolution,
                      "grid points for the analytic theory curves in CSV output");
    add_sampling_flags(sweep, opt);
    add_output_flags(sweep, opt);

    CLI::App* exact = app.add_subcommand(
        "exact", "exact metrics from the reduced density matrices, no sampling");
    add_theta_flags(exact, opt);
    add_output_flags(exact, opt);

    CLI::App* tables = app.add_subcommand(
        "tables", "counts + metrics at the default point plus both sweep tables");
    add_theta_flags(tables, opt);
    add_sampling_flags(tables, opt);
    tables->add_option("--resolution", opt.resolution,
                       "grid points for the analytic theory curves in CSV output");
    add_output_flags(tables, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (single->parsed()) return cmd_single(opt, RunMode::Single);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (exact->parsed()) return cmd_single(opt, RunMode::Exact);
        if (tables->parsed()) return cmd_tables(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
