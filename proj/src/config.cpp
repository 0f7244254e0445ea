// SPDX-License-Identifier: Apache-2.0
#include "pcmp/config.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pcmp {

namespace {

constexpr std::array<const char*, 6> kAlgorithms = {"pcmp",  "omp",       "omp-genie",
                                                    "pccpr", "pccpr-x10", "sparselift"};

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw std::runtime_error("config field '" + field + "': " + why);
}

std::vector<Index> to_index_list(const std::vector<std::int64_t>& in, const std::string& field) {
    std::vector<Index> out;
    for (std::int64_t v : in) {
        if (v < 1) bad_field(field, "entries must be positive");
        out.push_back(static_cast<Index>(v));
    }
    if (out.empty()) bad_field(field, "must not be empty");
    return out;
}

} // namespace

PhaseMode phase_mode_from_string(const std::string& name) {
    if (name == "wiener") return PhaseMode::wiener;
    if (name == "packet-constant") return PhaseMode::packet_constant;
    if (name == "none") return PhaseMode::none;
    bad_field("phase_mode", "must be one of wiener|packet-constant|none, got '" + name + "'");
}

std::string to_string(PhaseMode mode) {
    switch (mode) {
        case PhaseMode::wiener: return "wiener";
        case PhaseMode::packet_constant: return "packet-constant";
        case PhaseMode::none: return "none";
    }
    return "?";
}

bool is_known_algorithm(const std::string& label) {
    return std::find(kAlgorithms.begin(), kAlgorithms.end(), label) != kAlgorithms.end();
}

ExperimentConfig config_from(const toml::Table& table) {
    ExperimentConfig cfg;
    cfg.n_antennas = static_cast<Index>(table.get_int("n_antennas", cfg.n_antennas));
    cfg.sparsity = static_cast<Index>(table.get_int("sparsity", cfg.sparsity));
    cfg.beams_per_packet =
        static_cast<Index>(table.get_int("beams_per_packet", cfg.beams_per_packet));
    cfg.packets = to_index_list(
        table.get_int_list("packets", {static_cast<std::int64_t>(cfg.packets[0])}), "packets");
    cfg.snr_db = table.get_double_list("snr_db", cfg.snr_db);
    cfg.phase_mode = phase_mode_from_string(table.get_string("phase_mode", to_string(cfg.phase_mode)));
    cfg.algorithms = table.get_string_list("algorithms", cfg.algorithms);
    cfg.n_trials = static_cast<Index>(table.get_int("n_trials", cfg.n_trials));
    cfg.master_seed = static_cast<std::uint64_t>(
        table.get_int("master_seed", static_cast<std::int64_t>(cfg.master_seed)));

    cfg.phase_params.carrier_hz = table.get_double("phase_params.carrier_hz", cfg.phase_params.carrier_hz);
    cfg.phase_params.osc_constant =
        table.get_double("phase_params.osc_constant", cfg.phase_params.osc_constant);
    cfg.phase_params.intra_packet_s =
        table.get_double("phase_params.intra_packet_s", cfg.phase_params.intra_packet_s);
    cfg.phase_params.inter_packet_s =
        table.get_double("phase_params.inter_packet_s", cfg.phase_params.inter_packet_s);

    cfg.pcmp_am_max_iters = static_cast<int>(table.get_int("pcmp.am_max_iters", cfg.pcmp_am_max_iters));
    cfg.pcmp_am_tolerance = table.get_double("pcmp.am_tolerance", cfg.pcmp_am_tolerance);
    cfg.pccpr_n_iters = static_cast<int>(table.get_int("pccpr.n_iters", cfg.pccpr_n_iters));
    cfg.sparselift_n_iters =
        static_cast<int>(table.get_int("sparselift.n_iters", cfg.sparselift_n_iters));
    cfg.sparselift_l1_weight =
        table.get_double("sparselift.l1_weight", cfg.sparselift_l1_weight);

    // Validation, with field names in the message.
    if (cfg.n_antennas < 2) bad_field("n_antennas", "must be >= 2");
    if (cfg.sparsity < 1 || cfg.sparsity > cfg.n_antennas) bad_field("sparsity", "need 1 <= K <= N");
    if (cfg.beams_per_packet < 1) bad_field("beams_per_packet", "must be >= 1");
    if (cfg.snr_db.empty()) bad_field("snr_db", "must not be empty");
    if (cfg.n_trials < 1) bad_field("n_trials", "must be >= 1");
    if (cfg.algorithms.empty()) bad_field("algorithms", "must not be empty");
    for (const auto& name : cfg.algorithms) {
        if (!is_known_algorithm(name)) {
            bad_field("algorithms", "unknown algorithm '" + name +
                                        "' (known: pcmp omp omp-genie pccpr pccpr-x10 sparselift)");
        }
    }
    if (cfg.phase_params.carrier_hz <= 0.0) bad_field("phase_params.carrier_hz", "must be > 0");
    if (cfg.phase_params.osc_constant < 0.0) bad_field("phase_params.osc_constant", "must be >= 0");
    if (cfg.phase_params.intra_packet_s <= 0.0) bad_field("phase_params.intra_packet_s", "must be > 0");
    if (cfg.phase_params.inter_packet_s <= 0.0) bad_field("phase_params.inter_packet_s", "must be > 0");
    if (cfg.pcmp_am_max_iters < 1) bad_field("pcmp.am_max_iters", "must be >= 1");
    if (cfg.pcmp_am_tolerance <= 0.0) bad_field("pcmp.am_tolerance", "must be > 0");
    if (cfg.pccpr_n_iters < 0) bad_field("pccpr.n_iters", "must be >= 0 (0 pairs to pcmp)");
    if (cfg.sparselift_n_iters < 1) bad_field("sparselift.n_iters", "must be >= 1");
    if (cfg.sparselift_l1_weight < 0.0) bad_field("sparselift.l1_weight", "must be >= 0 (0 = auto)");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    return config_from(toml::parse_file(path));
}

ExperimentConfig parse_config(const std::string& text) { return config_from(toml::parse(text)); }

} // namespace pcmp
