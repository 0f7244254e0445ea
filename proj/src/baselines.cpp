// SPDX-License-Identifier: Apache-2.0
#include "pcmp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pcmp {

namespace {

CMat gather_columns(const CMat& a, const std::vector<Index>& support) {
    CMat sub(a.rows(), static_cast<Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) {
        sub.col(static_cast<Index>(i)) = a.col(support[i]);
    }
    return sub;
}

/// Indices of the K largest values, ties resolved toward smaller indices.
std::vector<Index> top_k_indices(const RVec& values, Index k) {
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return values(a) > values(b); });
    order.resize(static_cast<std::size_t>(k));
    return order;
}

/// Keep the K largest-magnitude entries of v, zero the rest.
CVec hard_threshold(const CVec& v, Index k, std::vector<Index>* kept = nullptr) {
    const auto idx = top_k_indices(v.cwiseAbs(), k);
    CVec out = CVec::Zero(v.size());
    for (Index i : idx) out(i) = v(i);
    if (kept) *kept = idx;
    return out;
}

} // namespace

double operator_norm_squared(const CMat& a, int n_iters) {
    CVec v = CVec::Ones(a.cols());
    v /= v.norm();
    double lambda = 0.0;
    for (int i = 0; i < n_iters; ++i) {
        CVec w = a.adjoint() * (a * v);
        lambda = w.norm();
        if (lambda == 0.0) return 0.0;
        v = w / lambda;
    }
    return lambda;
}

Estimate omp_recover(const CVec& y, const CMat& a, Index sparsity,
                     const std::optional<RVec>& genie_phases) {
    const Index n = a.cols();
    if (sparsity < 1 || sparsity > n) throw std::invalid_argument("omp_recover: need 1 <= K <= N");
    if (y.size() != a.rows()) throw std::invalid_argument("omp_recover: dimension mismatch");

    CVec y_work = y;
    if (genie_phases) {
        if (genie_phases->size() != y.size()) {
            throw std::invalid_argument("omp_recover: genie phase length mismatch");
        }
        for (Index m = 0; m < y.size(); ++m) {
            y_work(m) *= std::polar(1.0, -(*genie_phases)(m));
        }
    }

    Estimate est;
    est.x_hat = CVec::Zero(n);
    est.phases_hat = RVec::Zero(0);
    CVec r = y_work;
    std::vector<bool> used(static_cast<std::size_t>(n), false);

    for (Index t = 0; t < sparsity; ++t) {
        const RVec corr = (a.adjoint() * r).cwiseAbs();
        Index best = -1;
        double best_corr = -1.0;
        for (Index k = 0; k < n; ++k) {
            if (used[static_cast<std::size_t>(k)]) continue;
            if (corr(k) > best_corr) {
                best_corr = corr(k);
                best = k;
            }
        }
        est.support.push_back(best);
        used[static_cast<std::size_t>(best)] = true;

        const CMat a_sub = gather_columns(a, est.support);
        const CVec coeffs = a_sub.completeOrthogonalDecomposition().solve(y_work);
        r = y_work - a_sub * coeffs;
        est.objective_trace.push_back(r.squaredNorm());

        est.x_hat.setZero();
        for (std::size_t i = 0; i < est.support.size(); ++i) {
            est.x_hat(est.support[i]) = coeffs(static_cast<Index>(i));
        }
    }
    return est;
}

Estimate pccpr_recover(const MeasurementSet& meas, const SoundingSet& sounding, Index sparsity,
                       int n_iters) {
    const Index n = sounding.n_antennas;
    const Index m_per = sounding.beams_per_packet;
    const Index n_pkts = sounding.n_packets;
    if (sparsity < 1 || sparsity > n) throw std::invalid_argument("pccpr_recover: need 1 <= K <= N");

    // Stage 1: energy-based support, z[k] = sum_p |A_p(:,k)^H y_p|^2 / M.
    RVec energy = RVec::Zero(n);
    for (Index p = 0; p < n_pkts; ++p) {
        energy += (sounding.packet(p).adjoint() * meas.packets[static_cast<std::size_t>(p)])
                      .cwiseAbs2();
    }
    energy /= static_cast<double>(m_per);
    std::vector<Index> support = top_k_indices(energy, sparsity);

    // Spectral initialization (surrogate): leading eigenvector of
    // sum_p (A_pS^H y_p)(A_pS^H y_p)^H, scaled so ||A x|| = ||y||.
    const CMat a_sub = gather_columns(sounding.cs_matrix, support);
    CMat spectral = CMat::Zero(sparsity, sparsity);
    for (Index p = 0; p < n_pkts; ++p) {
        const CVec v = a_sub.middleRows(p * m_per, m_per).adjoint() *
                       meas.packets[static_cast<std::size_t>(p)];
        spectral.noalias() += v * v.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<CMat> eig(spectral);
    CVec coeffs = eig.eigenvectors().col(sparsity - 1); // largest eigenvalue is last
    const double fit_norm = (a_sub * coeffs).norm();
    const double y_norm = meas.stacked().norm();
    if (fit_norm > 0.0) coeffs *= y_norm / fit_norm;

    CVec x = CVec::Zero(n);
    for (std::size_t i = 0; i < support.size(); ++i) {
        x(support[i]) = coeffs(static_cast<Index>(i));
    }

    // Stage 2: alternating exact phase updates and IHT steps, step 1/L with
    // L the largest eigenvalue of A^H A.
    const double step = 1.0 / std::max(operator_norm_squared(sounding.cs_matrix), 1e-30);

    Estimate est;
    est.support = support; // stage-1 support; overwritten by the IHT rounds below
    est.phases_hat = RVec::Zero(n_pkts);
    for (int it = 0; it < n_iters; ++it) {
        const CVec fit = sounding.cs_matrix * x;
        CVec derotated(sounding.n_beams());
        double objective = 0.0;
        for (Index p = 0; p < n_pkts; ++p) {
            const auto& y_p = meas.packets[static_cast<std::size_t>(p)];
            // Same exact per-packet minimizer as PC-MP's phase half-step.
            est.phases_hat(p) = phase_from_prediction(y_p, fit.segment(p * m_per, m_per));
            const Complex rot = std::polar(1.0, -est.phases_hat(p));
            derotated.segment(p * m_per, m_per) = rot * y_p;
            objective += (y_p - std::polar(1.0, est.phases_hat(p)) * fit.segment(p * m_per, m_per))
                             .squaredNorm();
        }
        est.objective_trace.push_back(objective);
        const CVec grad_step =
            x + step * (sounding.cs_matrix.adjoint() * (derotated - fit));
        x = hard_threshold(grad_step, sparsity, &est.support);
    }
    std::sort(est.support.begin(), est.support.end());
    est.x_hat = std::move(x);
    return est;
}

LiftedProblem build_lifted_problem(const MeasurementSet& meas, const SoundingSet& sounding) {
    const Index n = sounding.n_antennas;
    const Index m_per = sounding.beams_per_packet;
    const Index n_pkts = sounding.n_packets;
    const Index rows = sounding.n_beams();

    LiftedProblem lifted;
    lifted.n_cols = n;
    lifted.n_packets = n_pkts;
    lifted.measurements = meas.stacked();
    // Row m of B kron-selects packet(m): entry (m, k*P + p(m)) = A(m, k).
    lifted.sensing_rows = CMat::Zero(rows, n * n_pkts);
    for (Index m = 0; m < rows; ++m) {
        const Index pkt = m / m_per;
        for (Index k = 0; k < n; ++k) {
            lifted.sensing_rows(m, k * n_pkts + pkt) = sounding.cs_matrix(m, k);
        }
    }
    return lifted;
}

CVec soft_threshold(const CVec& v, double t) {
    CVec out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v(i));
        out(i) = (mag <= t) ? Complex{0.0, 0.0} : v(i) * ((mag - t) / mag);
    }
    return out;
}

Estimate sparse_lift_recover(const MeasurementSet& meas, const SoundingSet& sounding,
                             Index sparsity, double l1_weight, int n_iters) {
    if (l1_weight <= 0.0) throw std::invalid_argument("sparse_lift_recover: l1_weight must be > 0");
    if (sparsity < 1 || sparsity > sounding.n_antennas) {
        throw std::invalid_argument("sparse_lift_recover: need 1 <= K <= N");
    }
    const LiftedProblem lifted = build_lifted_problem(meas, sounding);
    const CMat& b_mat = lifted.sensing_rows;
    const CVec& y = lifted.measurements;
    const Index dim = b_mat.cols();

    const double step = 1.0 / std::max(operator_norm_squared(b_mat), 1e-30);
    const auto objective = [&](const CVec& v) {
        return 0.5 * (b_mat * v - y).squaredNorm() + l1_weight * v.cwiseAbs().sum();
    };

    // Monotone FISTA: accelerated proximal gradient that never lets the
    // objective increase (plain FISTA is not monotone).
    CVec x = CVec::Zero(dim);
    CVec x_prev = x;
    CVec momentum = x;
    double t_k = 1.0;
    double obj_x = objective(x);

    Estimate est;
    for (int it = 0; it < n_iters; ++it) {
        const CVec candidate =
            soft_threshold(momentum - step * (b_mat.adjoint() * (b_mat * momentum - y)),
                           step * l1_weight);
        const double obj_candidate = objective(candidate);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_k * t_k));
        x_prev = x;
        if (obj_candidate <= obj_x) {
            x = candidate;
            obj_x = obj_candidate;
        }
        momentum = x + (t_k / t_next) * (candidate - x) + ((t_k - 1.0) / t_next) * (x - x_prev);
        t_k = t_next;
        est.objective_trace.push_back(obj_x);
    }

    // Rank-1 extraction: X = p x^T, so x is the conjugate of the leading right
    // singular vector; one complex scalar is LS-fit to the measurements and
    // split as ||p|| = sqrt(P).
    const Eigen::Map<const CMat> x_mat(x.data(), lifted.n_packets, lifted.n_cols);
    Eigen::JacobiSVD<CMat> svd(x_mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const CVec u1 = svd.matrixU().col(0);
    const CVec v1 = svd.matrixV().col(0);

    const CMat rank1 = u1 * v1.adjoint();
    const CVec g = b_mat * Eigen::Map<const CVec>(rank1.data(), rank1.size());
    const double g_norm2 = g.squaredNorm();
    const Complex scale_fit = (g_norm2 > 0.0) ? g.dot(y) / g_norm2 : Complex{0.0, 0.0};
    const CVec x_full =
        (scale_fit / std::sqrt(static_cast<double>(lifted.n_packets))) * v1.conjugate();

    est.x_hat = hard_threshold(x_full, std::min(sparsity, x_full.size()), &est.support);
    std::sort(est.support.begin(), est.support.end());
    est.phases_hat = RVec(lifted.n_packets);
    for (Index p = 0; p < lifted.n_packets; ++p) est.phases_hat(p) = std::arg(u1(p));
    return est;
}

} // namespace pcmp
