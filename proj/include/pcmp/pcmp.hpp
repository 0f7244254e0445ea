// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pcmp/sounding.hpp"
#include "pcmp/types.hpp"

namespace pcmp {

struct PcmpOptions {
    Index sparsity = 1;        // K
    int am_max_iters = 50;     // L
    double am_tolerance = 1e-8; // epsilon on ||x^(l) - x^(l-1)||_2
};

/// Output of a sparse recovery run. x_hat is zero outside support; support is
/// in selection order for greedy methods.
struct Estimate {
    CVec x_hat;
    std::vector<Index> support;
    RVec phases_hat;                            // one per packet
    std::vector<double> objective_trace;        // joint objective after each outer iteration
    std::vector<int> am_iterations;             // AM iterations used per outer iteration
    std::vector<std::vector<double>> am_traces; // per-outer AM objective sequences
};

/// r_p = y_p - e^{j*phi_p} A_{p,support} x_hat(support), for every packet.
std::vector<CVec> residuals(const MeasurementSet& meas, const SoundingSet& sounding,
                            const CVec& x_hat, const RVec& phases_hat,
                            const std::vector<Index>& support);

/// argmax over k not in `excluded` of sum_p |A_p(:,k)^* r_p|; ties -> smallest k.
Index detect_support_element(const std::vector<CVec>& residuals, const SoundingSet& sounding,
                             const std::vector<Index>& excluded);

/// Minimizer of ||y_p - e^{j*delta} v||_2 over delta given the prediction
/// v = A z: -phase(y_p^H v). Returns 0 when the inner product is exactly zero
/// (any phase is optimal).
double phase_from_prediction(const CVec& y_p, const CVec& prediction);

/// Minimizer of ||y_p - e^{j*delta} A z||_2 over delta: -phase(y_p^H A z).
double estimate_phase(const CVec& y_p, const Eigen::Ref<const CMat>& a_p_restricted,
                      const CVec& z);

/// Joint least squares for the on-support coefficients given per-packet phases:
/// (sum_p A_p^H A_p)^+ sum_p e^{-j*phi_p} A_p^H y_p, columns restricted to `support`.
CVec estimate_signal(const MeasurementSet& meas, const SoundingSet& sounding,
                     const std::vector<Index>& support, const RVec& phases_hat);

struct AmResult {
    CVec coeffs;  // |support| entries
    RVec phases;  // P entries
    std::vector<double> objective_trace;
    int iterations = 0;
};

/// Alternate exact phase and exact signal updates until the coefficient
/// change drops to am_tolerance or am_max_iters is hit.
AmResult alternating_minimization(const MeasurementSet& meas, const SoundingSet& sounding,
                                  const std::vector<Index>& support, const CVec& z_init,
                                  const PcmpOptions& options);

/// Partially coherent matching pursuit: K rounds of cross-packet support
/// detection, each followed by alternating minimization over the augmented
/// support and a residual refresh.
Estimate pcmp_recover(const MeasurementSet& meas, const SoundingSet& sounding,
                      const PcmpOptions& options);

} // namespace pcmp
