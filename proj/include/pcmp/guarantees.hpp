// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "pcmp/types.hpp"

namespace pcmp {

/// Inputs to the first-iteration support-detection guarantee.
struct Prop1Inputs {
    Index n_cols = 0;   // N
    Index n_packets = 0; // P
    Index sparsity = 0; // K
    double beta = 1.0;
    double noise_std = 0.0;
    RVec coherences; // mu_p per packet, each in [0,1]
    double x_max = 1.0;
};

/// 1 - 1/(N^beta P^beta sqrt(pi (1+beta) ln(NP))). Throws when N*P < 2.
double prop1_success_probability(Index n_cols, Index n_packets, double beta);

struct Prop1Condition {
    bool holds = false;           // |x_max| (1 - (2K-1)/P sum mu_p) > 2 sigma sqrt(2(1+beta) ln(NP))
    double lhs = 0.0;
    double rhs = 0.0;
    double avg_coherence = 0.0;   // sum mu_p / P
    bool coherence_sufficient = false; // avg_coherence < 1/(2K-1)
};

Prop1Condition prop1_condition_holds(const Prop1Inputs& inputs);

struct Prop1Validation {
    double success_rate = 0.0;       // fraction of trials with a correct first pick
    double bound = 0.0;              // the closed-form success probability
    double condition_held_rate = 0.0; // fraction of trials where the condition held
    std::int64_t n_trials = 0;
    std::int64_t n_condition_trials = 0; // trials where the condition held
    double conditional_success_rate = 0.0; // success rate over those trials (0 if none)
};

/**
 * Monte Carlo validation of the first-iteration detection rule under the
 * proposition's own model: real Gaussian A_p with unit-norm columns,
 * K-sparse x with one entry pinned to |x_max| (the K-1 others smaller),
 * arbitrary per-packet phases, real Gaussian noise of std sigma. A trial
 * succeeds when max_{i in support} sum_p |A_p(:,i)^T y_p| strictly exceeds
 * the off-support maximum.
 */
Prop1Validation empirical_first_iteration_success(Index n_cols, Index beams_per_packet,
                                                  Index n_packets, Index sparsity, double beta,
                                                  double sigma, double x_max,
                                                  std::int64_t n_trials, std::uint64_t seed);

} // namespace pcmp
