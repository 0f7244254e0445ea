// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "pcmp/pcmp.hpp"
#include "pcmp/sounding.hpp"
#include "pcmp/types.hpp"

namespace pcmp {

/// Standard orthogonal matching pursuit on the stacked system y = A x.
/// When genie_phases (one per measurement) is given, y is de-rotated by
/// e^{-j*phi_m} first, which removes the phase errors exactly.
Estimate omp_recover(const CVec& y, const CMat& a, Index sparsity,
                     const std::optional<RVec>& genie_phases = std::nullopt);

/// Partially coherent compressive phase retrieval: energy-based support,
/// spectral initialization, then n_iters rounds of exact per-packet phase
/// updates and gradient steps with hard thresholding to the K largest entries.
Estimate pccpr_recover(const MeasurementSet& meas, const SoundingSet& sounding, Index sparsity,
                       int n_iters);

/// The lifted linear system: row m = kron(a_m^T, b_m^T) acting on vec(X),
/// X = p x^T of shape P x N (column-major vec).
struct LiftedProblem {
    CMat sensing_rows; // (M*P) x (N*P)
    CVec measurements; // M*P
    Index n_cols = 0;  // N
    Index n_packets = 0;
};

LiftedProblem build_lifted_problem(const MeasurementSet& meas, const SoundingSet& sounding);

/// Complex soft-threshold: shrink magnitudes by t, preserving phase.
CVec soft_threshold(const CVec& v, double t);

/// Sparse-Lift: l1-regularized least squares on vec(X) via monotone
/// accelerated proximal gradient, rank-1 SVD extraction, scalar LS scale fit,
/// and truncation of the result to the K largest magnitudes.
Estimate sparse_lift_recover(const MeasurementSet& meas, const SoundingSet& sounding,
                             Index sparsity, double l1_weight, int n_iters);

/// Largest eigenvalue of A^H A by power iteration (deterministic start).
double operator_norm_squared(const CMat& a, int n_iters = 50);

} // namespace pcmp
