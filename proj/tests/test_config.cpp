// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcmp/config.hpp"
#include "pcmp/toml_lite.hpp"

using namespace pcmp;

TEST_CASE("toml subset: scalars, arrays, tables, comments") {
    const auto table = toml::parse(R"(
# header comment
count = 42
ratio = 2.5e-3
label = "hello # not a comment"
flag = true
values = [1, 2, 3]   # trailing comment
mixed = [1.5, 2, 3.25]
names = ["a", "b"]

[nested]
inner = -7
)");
    CHECK(table.get_int("count", 0) == 42);
    CHECK(table.get_double("ratio", 0.0) == doctest::Approx(2.5e-3));
    CHECK(table.get_string("label", "") == "hello # not a comment");
    CHECK(table.get_bool("flag", false));
    CHECK(table.get_int_list("values", {}) == std::vector<std::int64_t>{1, 2, 3});
    CHECK(table.get_double_list("mixed", {}) == std::vector<double>{1.5, 2.0, 3.25});
    CHECK(table.get_string_list("names", {}) == std::vector<std::string>{"a", "b"});
    CHECK(table.get_int("nested.inner", 0) == -7);
    CHECK(table.get_int("missing", 123) == 123);
    // scalars promote to one-element lists
    CHECK(table.get_double_list("ratio", {}) == std::vector<double>{2.5e-3});
}

TEST_CASE("toml subset: malformed input reports the line") {
    CHECK_THROWS_WITH_AS(toml::parse("a ="), doctest::Contains("line 1"), std::runtime_error);
    CHECK_THROWS_WITH_AS(toml::parse("\nnot a pair\n"), doctest::Contains("line 2"),
                         std::runtime_error);
    CHECK_THROWS_AS(toml::parse("x = [1, 2"), std::runtime_error);
    CHECK_THROWS_AS(toml::parse("x = zzz"), std::runtime_error);
    CHECK_THROWS_AS(toml::parse_file("/nonexistent/path.toml"), std::runtime_error);
}

TEST_CASE("toml subset: type mismatches are rejected") {
    const auto table = toml::parse("x = 1\ny = \"s\"");
    CHECK_THROWS_AS(table.get_string("x", ""), std::runtime_error);
    CHECK_THROWS_AS(table.get_int("y", 0), std::runtime_error);
    CHECK_THROWS_AS(table.get_int_list("y", {}), std::runtime_error);
}

TEST_CASE("config: defaults stand in for missing keys") {
    const ExperimentConfig cfg = parse_config("n_trials = 7\n");
    CHECK(cfg.n_antennas == 256);
    CHECK(cfg.sparsity == 4);
    CHECK(cfg.beams_per_packet == 16);
    CHECK(cfg.n_trials == 7);
    CHECK(cfg.phase_mode == PhaseMode::wiener);
    CHECK(cfg.phase_params.carrier_hz == doctest::Approx(60e9));
    CHECK(cfg.phase_params.osc_constant == doctest::Approx(4.7e-18));
    CHECK(cfg.phase_params.intra_packet_s == doctest::Approx(128e-9));
    CHECK(cfg.phase_params.inter_packet_s == doctest::Approx(44e-6));
}

TEST_CASE("config: full document round trip") {
    const ExperimentConfig cfg = parse_config(R"(
n_antennas = 64
sparsity = 3
beams_per_packet = 8
packets = [2, 4]
snr_db = [0, 15]
phase_mode = "packet-constant"
algorithms = ["pcmp", "omp-genie"]
n_trials = 12
master_seed = 99

[phase_params]
inter_packet_s = 3e-6

[pcmp]
am_max_iters = 25
am_tolerance = 1e-6

[sparselift]
n_iters = 100
l1_weight = 0.5
)");
    CHECK(cfg.n_antennas == 64);
    CHECK(cfg.packets == std::vector<Index>{2, 4});
    CHECK(cfg.snr_db == std::vector<double>{0.0, 15.0});
    CHECK(cfg.phase_mode == PhaseMode::packet_constant);
    CHECK(cfg.algorithms == std::vector<std::string>{"pcmp", "omp-genie"});
    CHECK(cfg.master_seed == 99);
    CHECK(cfg.phase_params.inter_packet_s == doctest::Approx(3e-6));
    CHECK(cfg.phase_params.intra_packet_s == doctest::Approx(128e-9)); // untouched default
    CHECK(cfg.pcmp_am_max_iters == 25);
    CHECK(cfg.pcmp_am_tolerance == doctest::Approx(1e-6));
    CHECK(cfg.sparselift_n_iters == 100);
    CHECK(cfg.sparselift_l1_weight == doctest::Approx(0.5));
    CHECK(cfg.n_sweep_points() == 4);
}

TEST_CASE("config: validation failures name the field") {
    CHECK_THROWS_WITH_AS(parse_config("sparsity = 0\n"), doctest::Contains("sparsity"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config("algorithms = [\"nope\"]\n"),
                         doctest::Contains("algorithms"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config("phase_mode = \"sometimes\"\n"),
                         doctest::Contains("phase_mode"), std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config("packets = [0]\n"), doctest::Contains("packets"),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(parse_config("n_antennas = 8\nsparsity = 9\n"),
                         doctest::Contains("sparsity"), std::runtime_error);
}

TEST_CASE("config: the shipped paper sweep file matches its pinned values") {
    const ExperimentConfig cfg = load_config(std::string(PCMP_SOURCE_DIR) + "/configs/paper-fig3.toml");
    CHECK(cfg.n_antennas == 256);
    CHECK(cfg.sparsity == 4);
    CHECK(cfg.beams_per_packet == 16);
    CHECK(cfg.packets == std::vector<Index>{2, 4, 8, 16});
    CHECK(cfg.snr_db == std::vector<double>{15.0});
    CHECK(cfg.phase_mode == PhaseMode::wiener);
    CHECK(cfg.n_trials == 200);
}
