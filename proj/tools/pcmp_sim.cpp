// SPDX-License-Identifier: Apache-2.0
//
// pcmp-sim: Monte Carlo driver for partially coherent sparse channel
// estimation experiments. Subcommands:
//   simulate           run the sweep described by a config file
//   sweep-snr          convenience SNR sweep
//   sweep-measurements convenience sweep over the packet count (MP = M*P)
//   prop1-validate     empirical check of the support-detection guarantee
//   bench              wall-clock comparison of pcmp vs pccpr-x10

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pcmp/baselines.hpp"
#include "pcmp/channel.hpp"
#include "pcmp/guarantees.hpp"
#include "pcmp/harness.hpp"
#include "pcmp/metrics.hpp"
#include "pcmp/pcmp.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    long long trials = 0;
    int parallel = 1;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_config = true) {
    if (with_config) cmd->add_option("--config", opts.config_path, "Config file (TOML subset)");
    cmd->add_option("--out", opts.out_path, "Output path (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opts.seed, "Override master_seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_option("--trials", opts.trials, "Override n_trials");
    cmd->add_option("--parallel", opts.parallel,
                    "Worker threads (PCMP_THREADS env overrides this flag)");
    cmd->add_flag("--timing", opts.timing,
                  "Fill runtime_ms with measured wall clock; breaks byte-identical "
                  "reproducibility of result files");
}

pcmp::ExperimentConfig resolve_config(const CommonOptions& opts) {
    pcmp::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = pcmp::load_config(opts.config_path);
    if (opts.seed_set) cfg.master_seed = opts.seed;
    if (opts.trials > 0) cfg.n_trials = static_cast<pcmp::Index>(opts.trials);
    return cfg;
}

int emit_sweep(const pcmp::ExperimentConfig& cfg, const CommonOptions& opts) {
    const int workers = pcmp::resolve_thread_count(opts.parallel);
    const pcmp::SweepResult result = pcmp::run_sweep(cfg, workers, opts.timing);

    std::ostringstream body;
    if (opts.format == "json") {
        pcmp::write_json(body, result);
    } else {
        pcmp::write_csv(body, result.rows);
    }
    if (opts.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file: " << opts.out_path << "\n";
            return 1;
        }
        out << body.str();
    }
    return 0;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<pcmp::Index> parse_index_list(const std::string& csv) {
    std::vector<pcmp::Index> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(static_cast<pcmp::Index>(std::stoll(item)));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partially coherent sparse mmWave channel estimation simulator"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    CLI::App* simulate = app.add_subcommand("simulate", "Run the sweep from a config file");
    add_common(simulate, sim_opts);

    CommonOptions snr_opts;
    std::string snr_list = "0,5,10,15,20";
    CLI::App* sweep_snr = app.add_subcommand("sweep-snr", "Sweep SNR at a fixed packet count");
    add_common(sweep_snr, snr_opts);
    sweep_snr->add_option("--snr", snr_list, "Comma-separated SNR (dB) list");

    CommonOptions mp_opts;
    std::string packet_list = "2,4,8,16";
    CLI::App* sweep_mp =
        app.add_subcommand("sweep-measurements", "Sweep the packet count P (MP = M*P)");
    add_common(sweep_mp, mp_opts);
    sweep_mp->add_option("--packets", packet_list, "Comma-separated packet counts");

    CommonOptions prop_opts;
    long long prop_n = 64, prop_m = 32, prop_p = 4, prop_k = 2;
    double prop_beta = 1.0, prop_sigma = 0.01, prop_xmax = 1.0;
    CLI::App* prop1 = app.add_subcommand("prop1-validate",
                                         "Empirical first-iteration support detection check");
    prop1->add_option("--out", prop_opts.out_path, "Output path (default: stdout)");
    prop1->add_option("--seed", prop_opts.seed, "Master seed");
    prop1->add_option("--trials", prop_opts.trials, "Trial count")->default_val(2000);
    prop1->add_option("--n", prop_n, "Columns N");
    prop1->add_option("--m", prop_m, "Rows per packet M");
    prop1->add_option("--p", prop_p, "Packets P");
    prop1->add_option("--k", prop_k, "Sparsity K");
    prop1->add_option("--beta", prop_beta, "Beta");
    prop1->add_option("--sigma", prop_sigma, "Noise std");
    prop1->add_option("--xmax", prop_xmax, "|x_max|");

    CommonOptions bench_opts;
    CLI::App* bench = app.add_subcommand(
        "bench", "Wall-clock ratio of pccpr-x10 to pcmp on one configuration");
    add_common(bench, bench_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return emit_sweep(resolve_config(sim_opts), sim_opts);
        }
        if (sweep_snr->parsed()) {
            pcmp::ExperimentConfig cfg = resolve_config(snr_opts);
            cfg.snr_db = parse_double_list(snr_list);
            return emit_sweep(cfg, snr_opts);
        }
        if (sweep_mp->parsed()) {
            pcmp::ExperimentConfig cfg = resolve_config(mp_opts);
            cfg.packets = parse_index_list(packet_list);
            return emit_sweep(cfg, mp_opts);
        }
        if (prop1->parsed()) {
            const auto report = pcmp::empirical_first_iteration_success(
                prop_n, prop_m, prop_p, prop_k, prop_beta, prop_sigma, prop_xmax,
                prop_opts.trials > 0 ? prop_opts.trials : 2000, prop_opts.seed);
            std::ostringstream body;
            body.precision(12);
            body << "{\n"
                 << "  \"success_rate\": " << report.success_rate << ",\n"
                 << "  \"bound\": " << report.bound << ",\n"
                 << "  \"condition_held_rate\": " << report.condition_held_rate << ",\n"
                 << "  \"conditional_success_rate\": " << report.conditional_success_rate
                 << ",\n"
                 << "  \"n_trials\": " << report.n_trials << ",\n"
                 << "  \"noise_model\": \"real-gaussian\"\n"
                 << "}\n";
            if (prop_opts.out_path.empty()) {
                std::cout << body.str();
            } else {
                std::ofstream out(prop_opts.out_path, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot open output file: " << prop_opts.out_path << "\n";
                    return 1;
                }
                out << body.str();
            }
            return 0;
        }
        if (bench->parsed()) {
            pcmp::ExperimentConfig cfg = resolve_config(bench_opts);
            if (bench_opts.config_path.empty()) {
                cfg.packets = {8};
                cfg.snr_db = {15.0};
                cfg.n_trials = bench_opts.trials > 0
                                   ? static_cast<pcmp::Index>(bench_opts.trials)
                                   : 10;
            }
            cfg.algorithms = {"pcmp", "pccpr-x10"};
            const pcmp::SweepResult result = pcmp::run_sweep(cfg, 1, /*collect_timing=*/true);
            double pcmp_ms = 0.0, pccpr_ms = 0.0;
            long long pcmp_n = 0, pccpr_n = 0;
            for (const auto& row : result.rows) {
                if (row.algorithm == "pcmp") {
                    pcmp_ms += row.runtime_ms;
                    ++pcmp_n;
                } else if (row.algorithm == "pccpr-x10") {
                    pccpr_ms += row.runtime_ms;
                    ++pccpr_n;
                }
            }
            pcmp_ms /= std::max(1LL, pcmp_n);
            pccpr_ms /= std::max(1LL, pccpr_n);
            const double ratio = pcmp_ms > 0.0 ? pccpr_ms / pcmp_ms : 0.0;
            std::ostringstream body;
            body << "{\n"
                 << "  \"pcmp_ms_mean\": " << pcmp_ms << ",\n"
                 << "  \"pccpr_x10_ms_mean\": " << pccpr_ms << ",\n"
                 << "  \"ratio\": " << ratio << ",\n"
                 << "  \"trials\": " << pcmp_n << "\n"
                 << "}\n";
            if (bench_opts.out_path.empty()) {
                std::cout << body.str();
            } else {
                std::ofstream out(bench_opts.out_path, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot open output file: " << bench_opts.out_path << "\n";
                    return 1;
                }
                out << body.str();
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
