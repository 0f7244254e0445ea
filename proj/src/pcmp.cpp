// SPDX-License-Identifier: Apache-2.0
#include "pcmp/pcmp.hpp"

#include <cmath>
#include <stdexcept>

namespace pcmp {

namespace {

/// Columns of the full CS matrix gathered for a support set: (M*P) x |support|.
CMat gather_columns(const CMat& a, const std::vector<Index>& support) {
    CMat sub(a.rows(), static_cast<Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
        sub.col(static_cast<Index>(i)) = a.col(support[i]);
    }
    return sub;
}

double joint_objective(const MeasurementSet& meas, const CMat& a_sub, Index m_per,
                       const CVec& coeffs, const RVec& phases) {
    double obj = 0.0;
    const CVec fit = a_sub * coeffs;
    for (Index p = 0; p < meas.n_packets(); ++p) {
        obj += (meas.packets[static_cast<std::size_t>(p)] -
                std::polar(1.0, phases(p)) * fit.segment(p * m_per, m_per))
                   .squaredNorm();
    }
    return obj;
}

} // namespace

std::vector<CVec> residuals(const MeasurementSet& meas, const SoundingSet& sounding,
                            const CVec& x_hat, const RVec& phases_hat,
                            const std::vector<Index>& support) {
    const Index m_per = sounding.beams_per_packet;
    if (meas.n_packets() != sounding.n_packets || phases_hat.size() != sounding.n_packets) {
        throw std::invalid_argument("residuals: dimension mismatch");
    }
    CVec coeffs(static_cast<Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) coeffs(static_cast<Index>(i)) = x_hat(support[i]);
    const CMat a_sub = gather_columns(sounding.cs_matrix, support);
    const CVec fit = a_sub * coeffs;

    std::vector<CVec> r;
    r.reserve(static_cast<std::size_t>(meas.n_packets()));
    for (Index p = 0; p < meas.n_packets(); ++p) {
        r.push_back(meas.packets[static_cast<std::size_t>(p)] -
                    std::polar(1.0, phases_hat(p)) * fit.segment(p * m_per, m_per));
    }
    return r;
}

Index detect_support_element(const std::vector<CVec>& residuals, const SoundingSet& sounding,
                             const std::vector<Index>& excluded) {
    const Index n = sounding.n_antennas;
    std::vector<bool> skip(static_cast<std::size_t>(n), false);
    for (Index k : excluded) skip[static_cast<std::size_t>(k)] = true;

    RVec score = RVec::Zero(n);
    for (Index p = 0; p < sounding.n_packets; ++p) {
        score += (sounding.packet(p).adjoint() * residuals[static_cast<std::size_t>(p)])
                     .cwiseAbs();
    }

    Index best = -1;
    double best_score = -1.0;
    for (Index k = 0; k < n; ++k) {
        if (skip[static_cast<std::size_t>(k)]) continue;
        if (score(k) > best_score) { // strict: ties keep the smallest index
            best_score = score(k);
            best = k;
        }
    }
    if (best < 0) throw std::invalid_argument("detect_support_element: all indices excluded");
    return best;
}

double phase_from_prediction(const CVec& y_p, const CVec& prediction) {
    const Complex inner = y_p.dot(prediction); // y_p^H v
    if (inner == Complex{0.0, 0.0}) return 0.0;
    return -std::arg(inner);
}

double estimate_phase(const CVec& y_p, const Eigen::Ref<const CMat>& a_p_restricted,
                      const CVec& z) {
    return phase_from_prediction(y_p, a_p_restricted * z);
}

CVec estimate_signal(const MeasurementSet& meas, const SoundingSet& sounding,
                     const std::vector<Index>& support, const RVec& phases_hat) {
    const Index m_per = sounding.beams_per_packet;
    const CMat a_sub = gather_columns(sounding.cs_matrix, support);
    const Index width = a_sub.cols();

    CMat gram = CMat::Zero(width, width);
    CVec rhs = CVec::Zero(width);
    for (Index p = 0; p < sounding.n_packets; ++p) {
        const auto block = a_sub.middleRows(p * m_per, m_per);
        gram.noalias() += block.adjoint() * block;
        rhs.noalias() += std::polar(1.0, -phases_hat(p)) *
                         (block.adjoint() * meas.packets[static_cast<std::size_t>(p)]);
    }
    // Pseudo-inverse solve; tolerates a rank-deficient Gram matrix.
    return gram.completeOrthogonalDecomposition().solve(rhs);
}

AmResult alternating_minimization(const MeasurementSet& meas, const SoundingSet& sounding,
                                  const std::vector<Index>& support, const CVec& z_init,
                                  const PcmpOptions& options) {
    if (support.empty()) throw std::invalid_argument("alternating_minimization: empty support");
    const Index m_per = sounding.beams_per_packet;
    const Index n_pkts = sounding.n_packets;
    const Index width = static_cast<Index>(support.size());
    const CMat a_sub = gather_columns(sounding.cs_matrix, support);

    // The support is fixed for the whole AM run, so the Gram matrix, its
    // decomposition, and the per-packet correlations A_p^H y_p are computed
    // once; each iteration only rebuilds the phase-weighted right-hand side.
    CMat gram = CMat::Zero(width, width);
    CMat packet_corr(width, n_pkts);
    for (Index p = 0; p < n_pkts; ++p) {
        const auto block = a_sub.middleRows(p * m_per, m_per);
        gram.noalias() += block.adjoint() * block;
        packet_corr.col(p) = block.adjoint() * meas.packets[static_cast<std::size_t>(p)];
    }
    const auto solver = gram.completeOrthogonalDecomposition();

    AmResult result;
    result.phases = RVec::Zero(n_pkts);
    CVec z = z_init;

    for (int iter = 1; iter <= options.am_max_iters; ++iter) {
        for (Index p = 0; p < n_pkts; ++p) {
            result.phases(p) = estimate_phase(meas.packets[static_cast<std::size_t>(p)],
                                              a_sub.middleRows(p * m_per, m_per), z);
        }
        CVec rhs = CVec::Zero(width);
        for (Index p = 0; p < n_pkts; ++p) {
            rhs.noalias() += std::polar(1.0, -result.phases(p)) * packet_corr.col(p);
        }
        const CVec z_next = solver.solve(rhs);
        const double change = (z_next - z).norm();
        z = z_next;
        result.iterations = iter;
        result.objective_trace.push_back(joint_objective(meas, a_sub, m_per, z, result.phases));
        if (change <= options.am_tolerance) break;
    }
    result.coeffs = std::move(z);
    return result;
}

Estimate pcmp_recover(const MeasurementSet& meas, const SoundingSet& sounding,
                      const PcmpOptions& options) {
    const Index n = sounding.n_antennas;
    const Index k_target = options.sparsity;
    if (k_target < 1 || k_target > n) throw std::invalid_argument("pcmp_recover: need 1 <= K <= N");
    if (k_target > sounding.n_beams()) {
        throw std::invalid_argument("pcmp_recover: K exceeds measurement count");
    }

    Estimate est;
    est.x_hat = CVec::Zero(n);
    est.phases_hat = RVec::Zero(sounding.n_packets);

    std::vector<CVec> r;
    r.reserve(static_cast<std::size_t>(meas.n_packets()));
    for (const auto& y : meas.packets) r.push_back(y);

    for (Index t = 0; t < k_target; ++t) {
        const Index picked = detect_support_element(r, sounding, est.support);
        est.support.push_back(picked);

        // Warm start: previous coefficients, zero at the new index. If that is
        // all-zero (first iteration) seed the new atom with its matched-filter
        // average sum_p A_p(:,k)^H y_p / sum_p ||A_p(:,k)||^2.
        CVec z_init(static_cast<Index>(est.support.size()));
        for (std::size_t i = 0; i < est.support.size(); ++i) {
            z_init(static_cast<Index>(i)) = est.x_hat(est.support[i]);
        }
        if (z_init.norm() == 0.0) {
            const auto col = sounding.cs_matrix.col(picked);
            Complex num{0.0, 0.0};
            for (Index p = 0; p < sounding.n_packets; ++p) {
                num += col.segment(p * sounding.beams_per_packet, sounding.beams_per_packet)
                           .dot(meas.packets[static_cast<std::size_t>(p)]);
            }
            const double denom = col.squaredNorm();
            z_init(z_init.size() - 1) = (denom > 0.0) ? num / denom : Complex{0.0, 0.0};
        }

        AmResult am = alternating_minimization(meas, sounding, est.support, z_init, options);
        est.x_hat.setZero();
        for (std::size_t i = 0; i < est.support.size(); ++i) {
            est.x_hat(est.support[i]) = am.coeffs(static_cast<Index>(i));
        }
        est.phases_hat = am.phases;
        est.am_iterations.push_back(am.iterations);
        est.objective_trace.push_back(am.objective_trace.back());
        est.am_traces.push_back(std::move(am.objective_trace));

        r = residuals(meas, sounding, est.x_hat, est.phases_hat, est.support);
    }
    return est;
}

} // namespace pcmp
