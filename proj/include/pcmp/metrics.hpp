// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "pcmp/types.hpp"

namespace pcmp {

/**
 * Global-phase-aligned NMSE as a linear ratio:
 *   min_delta ||e^{j*delta} h_est - h_true||^2 / ||h_true||^2.
 * The minimizer is delta* = phase(h_est^H h_true) (expand the quadratic:
 * the cross term is -2*Re(e^{-j*delta} h_est^H h_true), maximized at
 * delta = arg(h_est^H h_true)), so the value is
 * (||h_est||^2 + ||h_true||^2 - 2*|h_est^H h_true|) / ||h_true||^2.
 * Throws on zero h_true.
 */
double aligned_nmse(const CVec& h_est, const CVec& h_true);

/// log2(1 + |<h_est, h_true>|^2 / (||h_est||^2 sigma^2)): the rate of the
/// unit-norm conjugate beamformer built from h_est. Throws on zero h_est.
double achievable_rate(const CVec& h_est, const CVec& h_true, double noise_var);

/// SNR defined as 10*log10(1/sigma^2), so sigma = 10^(-snr_db/20).
double snr_to_noise_std(double snr_db);

/// |est ∩ truth| / |truth|.
double support_recall(const std::vector<Index>& est, const std::vector<Index>& truth);

struct TrialMetrics {
    std::string algorithm;
    double nmse_db = 0.0; // +inf sentinel when the estimate is the zero vector
    double rate_bps_hz = 0.0;
    double support_recall = 0.0;
    double runtime_ms = 0.0;
};

/// Metrics for one estimate against the truth. A zero estimate gets the +inf
/// NMSE sentinel and zero rate (no beamformer can be formed).
TrialMetrics evaluate_estimate(const CVec& h_est, const CVec& h_true,
                               const std::vector<Index>& support_est,
                               const std::vector<Index>& support_true, double noise_var);

} // namespace pcmp
