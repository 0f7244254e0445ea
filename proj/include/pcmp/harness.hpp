// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcmp/config.hpp"
#include "pcmp/types.hpp"

namespace pcmp {

/// One output record: algorithm x trial x sweep point.
struct ResultRow {
    std::string algorithm;
    Index n_antennas = 0;
    Index sparsity = 0;
    Index beams_per_packet = 0;
    Index packets = 0;
    double snr_db = 0.0;
    Index trial_index = 0;
    double nmse_db = 0.0;
    double rate_bps_hz = 0.0;
    double support_recall = 0.0;
    double runtime_ms = 0.0; // populated only when timing collection is on
    std::uint64_t seed = 0;  // the derived per-trial stream key
};

/// Per-(algorithm, sweep point) aggregate for the JSON summary.
struct SummaryCell {
    std::string algorithm;
    Index packets = 0;
    double snr_db = 0.0;
    Index n_trials = 0;
    double nmse_db_linear_mean = 0.0; // 10*log10(mean of linear NMSE)
    double nmse_db_mean = 0.0;        // mean of per-trial dB values
    double nmse_db_median = 0.0;
    double rate_mean = 0.0;
    double rate_median = 0.0;
    double rate_std = 0.0;
};

/// Run every configured algorithm on one shared measurement realization.
/// sweep_index enumerates (packets x snr) row-major; the RNG stream is
/// keyed on (master_seed, sweep_index, trial_index) only.
std::vector<ResultRow> run_trial(const ExperimentConfig& cfg, Index sweep_index,
                                 Index n_packets, double snr_db, Index trial_index,
                                 bool collect_timing);

struct SweepResult {
    std::vector<ResultRow> rows; // ordered by (sweep point, trial, algorithm)
    std::vector<SummaryCell> summary;
};

/// Cartesian product of sweep axes x trials on a worker pool. Output order is
/// independent of n_threads.
SweepResult run_sweep(const ExperimentConfig& cfg, int n_threads, bool collect_timing);

/// CSV with the fixed header
/// algorithm,n_antennas,sparsity,beams_per_packet,packets,snr_db,trial_index,nmse_db,rate_bps_hz,support_recall,runtime_ms,seed
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

/// JSON document: {"rows": [...], "summary": [...]}.
void write_json(std::ostream& out, const SweepResult& result);

std::vector<SummaryCell> summarize(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

/// Worker count: PCMP_THREADS env var wins over the requested value.
int resolve_thread_count(int requested);

} // namespace pcmp
