// SPDX-License-Identifier: Apache-2.0
#include "pcmp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <thread>

#include "pcmp/baselines.hpp"
#include "pcmp/channel.hpp"
#include "pcmp/metrics.hpp"
#include "pcmp/pcmp.hpp"

namespace pcmp {

namespace {

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Fixed numeric formatting so identical runs produce identical bytes.
std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

class StopWatch {
public:
    void start() { begin_ = std::chrono::steady_clock::now(); }
    double stop_ms() const {
        const auto end = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(end - begin_).count();
    }

private:
    std::chrono::steady_clock::time_point begin_;
};

} // namespace

std::vector<ResultRow> run_trial(const ExperimentConfig& cfg, Index sweep_index,
                                 Index n_packets, double snr_db, Index trial_index,
                                 bool collect_timing) {
    const std::uint64_t stream_key = Rng::stream_key(
        cfg.master_seed, static_cast<std::uint64_t>(sweep_index),
        static_cast<std::uint64_t>(trial_index));
    Rng rng(stream_key);

    // Shared realization: channel, beamformers, phases, noise drawn once so
    // every algorithm sees the identical measurements (paired comparison).
    const ChannelRealization chan = sample_sparse_channel(cfg.n_antennas, cfg.sparsity, rng);
    const CMat beams =
        zadoff_chu_beamformers(cfg.n_antennas, cfg.beams_per_packet * n_packets, rng);
    const SoundingSet sounding = build_cs_matrix(beams, cfg.beams_per_packet);

    RVec trajectory;
    PhasingMode phasing = PhasingMode::per_sample;
    switch (cfg.phase_mode) {
        case PhaseMode::wiener:
            trajectory = sample_phase_trajectory(cfg.phase_params, cfg.beams_per_packet,
                                                 n_packets, rng);
            phasing = PhasingMode::per_sample;
            break;
        case PhaseMode::packet_constant:
            trajectory = sample_phase_trajectory(cfg.phase_params, cfg.beams_per_packet,
                                                 n_packets, rng);
            phasing = PhasingMode::packet_constant;
            break;
        case PhaseMode::none:
            trajectory = RVec::Zero(cfg.beams_per_packet * n_packets);
            phasing = PhasingMode::per_sample;
            break;
    }
    const double noise_std = snr_to_noise_std(snr_db);
    const MeasurementSet meas = measure(chan.x, sounding, trajectory, noise_std, rng, phasing);
    const double noise_var = noise_std * noise_std;

    PcmpOptions pcmp_opts;
    pcmp_opts.sparsity = cfg.sparsity;
    pcmp_opts.am_max_iters = cfg.pcmp_am_max_iters;
    pcmp_opts.am_tolerance = cfg.pcmp_am_tolerance;

    // Equal-complexity pairing: PC-CPR gets one iteration per PC-MP outer
    // iteration (K), and the x10 variant gets 10K.
    int paired_budget = static_cast<int>(cfg.sparsity);
    if (cfg.pccpr_n_iters > 0) paired_budget = cfg.pccpr_n_iters;

    Estimate pcmp_est;
    const bool wants_pcmp =
        std::find(cfg.algorithms.begin(), cfg.algorithms.end(), "pcmp") != cfg.algorithms.end();
    double pcmp_ms = 0.0;
    if (wants_pcmp) {
        StopWatch watch;
        watch.start();
        pcmp_est = pcmp_recover(meas, sounding, pcmp_opts);
        pcmp_ms = watch.stop_ms();
    }

    std::vector<ResultRow> rows;
    rows.reserve(cfg.algorithms.size());
    for (const std::string& name : cfg.algorithms) {
        Estimate est;
        double elapsed_ms = 0.0;
        StopWatch watch;
        watch.start();
        if (name == "pcmp") {
            est = pcmp_est; // timed above
            elapsed_ms = pcmp_ms;
        } else if (name == "omp") {
            est = omp_recover(meas.stacked(), sounding.cs_matrix, cfg.sparsity);
            elapsed_ms = watch.stop_ms();
        } else if (name == "omp-genie") {
            est = omp_recover(meas.stacked(), sounding.cs_matrix, cfg.sparsity,
                              meas.true_phases);
            elapsed_ms = watch.stop_ms();
        } else if (name == "pccpr") {
            est = pccpr_recover(meas, sounding, cfg.sparsity, paired_budget);
            elapsed_ms = watch.stop_ms();
        } else if (name == "pccpr-x10") {
            est = pccpr_recover(meas, sounding, cfg.sparsity, 10 * paired_budget);
            elapsed_ms = watch.stop_ms();
        } else if (name == "sparselift") {
            double weight = cfg.sparselift_l1_weight;
            if (weight <= 0.0) {
                weight = noise_std * std::sqrt(2.0 * std::log(static_cast<double>(
                                                    cfg.n_antennas * n_packets)));
                if (weight <= 0.0) weight = 1e-6; // noiseless runs still need a positive weight
            }
            est = sparse_lift_recover(meas, sounding, cfg.sparsity, weight,
                                      cfg.sparselift_n_iters);
            elapsed_ms = watch.stop_ms();
        }

        const CVec h_est = from_angle_domain(est.x_hat);
        const TrialMetrics m =
            evaluate_estimate(h_est, chan.h, est.support, chan.support, noise_var);

        ResultRow row;
        row.algorithm = name;
        row.n_antennas = cfg.n_antennas;
        row.sparsity = cfg.sparsity;
        row.beams_per_packet = cfg.beams_per_packet;
        row.packets = n_packets;
        row.snr_db = snr_db;
        row.trial_index = trial_index;
        row.nmse_db = m.nmse_db;
        row.rate_bps_hz = m.rate_bps_hz;
        row.support_recall = m.support_recall;
        row.runtime_ms = collect_timing ? elapsed_ms : 0.0;
        row.seed = stream_key;
        rows.push_back(std::move(row));
    }
    return rows;
}

SweepResult run_sweep(const ExperimentConfig& cfg, int n_threads, bool collect_timing) {
    struct Task {
        Index sweep_index;
        Index n_packets;
        double snr_db;
        Index trial_index;
    };
    std::vector<Task> tasks;
    Index sweep_index = 0;
    for (Index packet_count : cfg.packets) {
        for (double snr : cfg.snr_db) {
            for (Index trial = 0; trial < cfg.n_trials; ++trial) {
                tasks.push_back({sweep_index, packet_count, snr, trial});
            }
            ++sweep_index;
        }
    }

    std::vector<std::vector<ResultRow>> slots(tasks.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, n_threads);
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& t = tasks[i];
            slots[i] = run_trial(cfg, t.sweep_index, t.n_packets, t.snr_db, t.trial_index,
                                 collect_timing);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SweepResult result;
    for (auto& slot : slots) {
        for (auto& row : slot) result.rows.push_back(std::move(row));
    }
    result.summary = summarize(cfg, result.rows);
    return result;
}

std::vector<SummaryCell> summarize(const ExperimentConfig& cfg,
                                   const std::vector<ResultRow>& rows) {
    std::vector<SummaryCell> cells;
    for (const std::string& name : cfg.algorithms) {
        for (Index packet_count : cfg.packets) {
            for (double snr : cfg.snr_db) {
                std::vector<double> nmse_linear;
                std::vector<double> nmse_db;
                std::vector<double> rate;
                for (const ResultRow& row : rows) {
                    if (row.algorithm != name || row.packets != packet_count ||
                        row.snr_db != snr) {
                        continue;
                    }
                    if (std::isfinite(row.nmse_db)) {
                        nmse_linear.push_back(std::pow(10.0, row.nmse_db / 10.0));
                        nmse_db.push_back(row.nmse_db);
                    } else {
                        nmse_linear.push_back(1.0); // zero-estimate sentinel: unit NMSE
                        nmse_db.push_back(0.0);
                    }
                    rate.push_back(row.rate_bps_hz);
                }
                if (rate.empty()) continue;
                SummaryCell cell;
                cell.algorithm = name;
                cell.packets = packet_count;
                cell.snr_db = snr;
                cell.n_trials = static_cast<Index>(rate.size());
                const double lin_mean =
                    std::accumulate(nmse_linear.begin(), nmse_linear.end(), 0.0) /
                    static_cast<double>(nmse_linear.size());
                cell.nmse_db_linear_mean = 10.0 * std::log10(lin_mean);
                cell.nmse_db_mean = std::accumulate(nmse_db.begin(), nmse_db.end(), 0.0) /
                                    static_cast<double>(nmse_db.size());
                cell.nmse_db_median = median_of(nmse_db);
                const double rate_mean =
                    std::accumulate(rate.begin(), rate.end(), 0.0) / static_cast<double>(rate.size());
                cell.rate_mean = rate_mean;
                cell.rate_median = median_of(rate);
                double var = 0.0;
                for (double r : rate) var += (r - rate_mean) * (r - rate_mean);
                cell.rate_std = rate.size() > 1
                                    ? std::sqrt(var / static_cast<double>(rate.size() - 1))
                                    : 0.0;
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "algorithm,n_antennas,sparsity,beams_per_packet,packets,snr_db,trial_index,"
           "nmse_db,rate_bps_hz,support_recall,runtime_ms,seed\n";
    for (const ResultRow& r : rows) {
        out << r.algorithm << ',' << r.n_antennas << ',' << r.sparsity << ','
            << r.beams_per_packet << ',' << r.packets << ',' << format_double(r.snr_db) << ','
            << r.trial_index << ',' << format_double(r.nmse_db) << ','
            << format_double(r.rate_bps_hz) << ',' << format_double(r.support_recall) << ','
            << format_double(r.runtime_ms) << ',' << r.seed << '\n';
    }
}

void write_json(std::ostream& out, const SweepResult& result) {
    auto json_number = [](double v) -> std::string {
        if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
        if (std::isnan(v)) return "\"nan\"";
        return format_double(v);
    };
    out << "{\n  \"rows\": [\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const ResultRow& r = result.rows[i];
        out << "    {\"algorithm\": \"" << r.algorithm << "\", \"n_antennas\": " << r.n_antennas
            << ", \"sparsity\": " << r.sparsity << ", \"beams_per_packet\": " << r.beams_per_packet
            << ", \"packets\": " << r.packets << ", \"snr_db\": " << json_number(r.snr_db)
            << ", \"trial_index\": " << r.trial_index << ", \"nmse_db\": " << json_number(r.nmse_db)
            << ", \"rate_bps_hz\": " << json_number(r.rate_bps_hz)
            << ", \"support_recall\": " << json_number(r.support_recall)
            << ", \"runtime_ms\": " << json_number(r.runtime_ms) << ", \"seed\": " << r.seed
            << "}" << (i + 1 < result.rows.size() ? "," : "") << "\n";
    }
    out << "  ],\n  \"summary\": [\n";
    for (std::size_t i = 0; i < result.summary.size(); ++i) {
        const SummaryCell& c = result.summary[i];
        out << "    {\"algorithm\": \"" << c.algorithm << "\", \"packets\": " << c.packets
            << ", \"snr_db\": " << json_number(c.snr_db) << ", \"n_trials\": " << c.n_trials
            << ", \"nmse_db_linear_mean\": " << json_number(c.nmse_db_linear_mean)
            << ", \"nmse_db_mean\": " << json_number(c.nmse_db_mean)
            << ", \"nmse_db_median\": " << json_number(c.nmse_db_median)
            << ", \"rate_mean\": " << json_number(c.rate_mean)
            << ", \"rate_median\": " << json_number(c.rate_median)
            << ", \"rate_std\": " << json_number(c.rate_std) << "}"
            << (i + 1 < result.summary.size() ? "," : "") << "\n";
    }
    out << "  ]\n}\n";
}

int resolve_thread_count(int requested) {
    if (const char* env = std::getenv("PCMP_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed >= 1) return parsed;
    }
    return std::max(1, requested);
}

} // namespace pcmp
