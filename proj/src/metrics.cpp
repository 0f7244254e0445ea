// SPDX-License-Identifier: Apache-2.0
#include "pcmp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcmp {

double aligned_nmse(const CVec& h_est, const CVec& h_true) {
    const double true_energy = h_true.squaredNorm();
    if (true_energy == 0.0) throw std::invalid_argument("aligned_nmse: zero reference channel");
    const double cross = std::abs(h_est.dot(h_true));
    const double err = h_est.squaredNorm() + true_energy - 2.0 * cross;
    return std::max(err, 0.0) / true_energy;
}

double achievable_rate(const CVec& h_est, const CVec& h_true, double noise_var) {
    const double est_norm = h_est.norm();
    if (est_norm == 0.0) throw std::invalid_argument("achievable_rate: zero channel estimate");
    const double gain = std::abs(h_est.dot(h_true)) / est_norm;
    return std::log2(1.0 + gain * gain / noise_var);
}

double snr_to_noise_std(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

double support_recall(const std::vector<Index>& est, const std::vector<Index>& truth) {
    if (truth.empty()) return 0.0;
    std::size_t hits = 0;
    for (Index k : truth) {
        if (std::find(est.begin(), est.end(), k) != est.end()) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

TrialMetrics evaluate_estimate(const CVec& h_est, const CVec& h_true,
                               const std::vector<Index>& support_est,
                               const std::vector<Index>& support_true, double noise_var) {
    TrialMetrics out;
    out.support_recall = support_recall(support_est, support_true);
    if (h_est.norm() == 0.0) {
        out.nmse_db = std::numeric_limits<double>::infinity();
        out.rate_bps_hz = 0.0;
        return out;
    }
    out.nmse_db = 10.0 * std::log10(aligned_nmse(h_est, h_true));
    out.rate_bps_hz = achievable_rate(h_est, h_true, noise_var);
    return out;
}

} // namespace pcmp
