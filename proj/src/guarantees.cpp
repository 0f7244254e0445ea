// SPDX-License-Identifier: Apache-2.0
#include "pcmp/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pcmp/rng.hpp"

namespace pcmp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double prop1_success_probability(Index n_cols, Index n_packets, double beta) {
    if (n_cols * n_packets < 2) throw std::invalid_argument("prop1_success_probability: need N*P >= 2");
    if (beta <= 0.0) throw std::invalid_argument("prop1_success_probability: need beta > 0");
    const double np = static_cast<double>(n_cols) * static_cast<double>(n_packets);
    const double denom = std::pow(static_cast<double>(n_cols), beta) *
                         std::pow(static_cast<double>(n_packets), beta) *
                         std::sqrt(kPi * (1.0 + beta) * std::log(np));
    return 1.0 - 1.0 / denom;
}

Prop1Condition prop1_condition_holds(const Prop1Inputs& inputs) {
    Prop1Condition cond;
    const double p = static_cast<double>(inputs.n_packets);
    const double mu_sum = inputs.coherences.sum();
    cond.avg_coherence = mu_sum / p;
    cond.coherence_sufficient =
        cond.avg_coherence < 1.0 / (2.0 * static_cast<double>(inputs.sparsity) - 1.0);
    const double np = static_cast<double>(inputs.n_cols) * p;
    cond.lhs = inputs.x_max *
               (1.0 - (2.0 * static_cast<double>(inputs.sparsity) - 1.0) / p * mu_sum);
    cond.rhs = 2.0 * inputs.noise_std * std::sqrt(2.0 * (1.0 + inputs.beta) * std::log(np));
    cond.holds = cond.lhs > cond.rhs;
    return cond;
}

Prop1Validation empirical_first_iteration_success(Index n_cols, Index beams_per_packet,
                                                  Index n_packets, Index sparsity, double beta,
                                                  double sigma, double x_max,
                                                  std::int64_t n_trials, std::uint64_t seed) {
    if (n_trials < 1) throw std::invalid_argument("empirical_first_iteration_success: trials >= 1");
    if (sparsity < 1 || sparsity > n_cols) {
        throw std::invalid_argument("empirical_first_iteration_success: need 1 <= K <= N");
    }

    std::int64_t successes = 0;
    std::int64_t condition_held = 0;
    std::int64_t conditional_successes = 0;

    for (std::int64_t trial = 0; trial < n_trials; ++trial) {
        Rng rng = Rng::stream(seed, 0, static_cast<std::uint64_t>(trial));

        // Real Gaussian sensing matrices with unit-norm columns.
        std::vector<RMat> mats;
        mats.reserve(static_cast<std::size_t>(n_packets));
        for (Index p = 0; p < n_packets; ++p) {
            RMat a(beams_per_packet, n_cols);
            for (Index i = 0; i < beams_per_packet; ++i) {
                for (Index k = 0; k < n_cols; ++k) a(i, k) = rng.normal();
            }
            for (Index k = 0; k < n_cols; ++k) a.col(k) /= a.col(k).norm();
            mats.push_back(std::move(a));
        }

        // K-sparse real x: entry support[0] pinned to +/- x_max, the rest smaller.
        std::vector<Index> pool(static_cast<std::size_t>(n_cols));
        std::iota(pool.begin(), pool.end(), Index{0});
        for (Index i = 0; i < sparsity; ++i) {
            const Index j =
                i + static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n_cols - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        std::vector<Index> support(pool.begin(), pool.begin() + sparsity);
        RVec x = RVec::Zero(n_cols);
        x(support[0]) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * x_max;
        for (Index i = 1; i < sparsity; ++i) {
            x(support[static_cast<std::size_t>(i)]) =
                (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.1, 0.9) * x_max;
        }

        // y_p = e^{j*phi_p} A_p x + w_p with real Gaussian noise.
        RVec scores = RVec::Zero(n_cols);
        for (Index p = 0; p < n_packets; ++p) {
            const Complex rot = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
            const RVec clean = mats[static_cast<std::size_t>(p)] * x;
            CVec y(beams_per_packet);
            for (Index i = 0; i < beams_per_packet; ++i) {
                y(i) = rot * clean(i) + sigma * rng.normal();
            }
            scores += (mats[static_cast<std::size_t>(p)].transpose() * y).cwiseAbs();
        }

        double in_support_max = 0.0;
        for (Index i : support) in_support_max = std::max(in_support_max, scores(i));
        double out_support_max = 0.0;
        std::vector<bool> on(static_cast<std::size_t>(n_cols), false);
        for (Index i : support) on[static_cast<std::size_t>(i)] = true;
        for (Index k = 0; k < n_cols; ++k) {
            if (!on[static_cast<std::size_t>(k)]) out_support_max = std::max(out_support_max, scores(k));
        }
        const bool success = in_support_max > out_support_max;
        if (success) ++successes;

        Prop1Inputs inputs;
        inputs.n_cols = n_cols;
        inputs.n_packets = n_packets;
        inputs.sparsity = sparsity;
        inputs.beta = beta;
        inputs.noise_std = sigma;
        inputs.x_max = x_max;
        inputs.coherences = RVec(n_packets);
        for (Index p = 0; p < n_packets; ++p) {
            // Columns are unit-norm, so the coherence is the largest
            // off-diagonal |entry| of the Gram matrix.
            const RMat gram = mats[static_cast<std::size_t>(p)].transpose() *
                              mats[static_cast<std::size_t>(p)];
            double mu = 0.0;
            for (Index i = 0; i < n_cols; ++i) {
                for (Index k = i + 1; k < n_cols; ++k) {
                    mu = std::max(mu, std::abs(gram(i, k)));
                }
            }
            inputs.coherences(p) = mu;
        }
        if (prop1_condition_holds(inputs).holds) {
            ++condition_held;
            if (success) ++conditional_successes;
        }
    }

    Prop1Validation report;
    report.n_trials = n_trials;
    report.success_rate = static_cast<double>(successes) / static_cast<double>(n_trials);
    report.bound = prop1_success_probability(n_cols, n_packets, beta);
    report.condition_held_rate =
        static_cast<double>(condition_held) / static_cast<double>(n_trials);
    report.n_condition_trials = condition_held;
    report.conditional_success_rate =
        (condition_held > 0)
            ? static_cast<double>(conditional_successes) / static_cast<double>(condition_held)
            : 0.0;
    return report;
}

} // namespace pcmp
