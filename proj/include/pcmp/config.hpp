// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcmp/sounding.hpp"
#include "pcmp/toml_lite.hpp"
#include "pcmp/types.hpp"

namespace pcmp {

/// How phase errors are injected into the simulated measurements.
enum class PhaseMode { wiener, packet_constant, none };

PhaseMode phase_mode_from_string(const std::string& name);
std::string to_string(PhaseMode mode);

/// Closed set of algorithm labels accepted in configs.
bool is_known_algorithm(const std::string& label);

struct ExperimentConfig {
    Index n_antennas = 256;
    Index sparsity = 4;
    Index beams_per_packet = 16;
    std::vector<Index> packets = {8};    // sweep axis
    std::vector<double> snr_db = {15.0}; // sweep axis
    PhaseMode phase_mode = PhaseMode::wiener;
    PhaseNoiseParams phase_params;
    std::vector<std::string> algorithms = {"pcmp"};
    Index n_trials = 100;
    std::uint64_t master_seed = 1;

    // Per-algorithm options.
    int pcmp_am_max_iters = 50;
    double pcmp_am_tolerance = 1e-8;
    int pccpr_n_iters = 0;          // 0: pair to PC-MP's actually-used AM iterations
    int sparselift_n_iters = 500;
    double sparselift_l1_weight = 0.0; // 0: sigma * sqrt(2 ln(N P))

    Index n_sweep_points() const {
        return static_cast<Index>(packets.size() * snr_db.size());
    }
};

/// Parse and validate a config document; throws std::runtime_error naming the
/// offending field.
ExperimentConfig config_from(const toml::Table& table);
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

} // namespace pcmp
