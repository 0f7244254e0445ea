// SPDX-License-Identifier: Apache-2.0
#include "pcmp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pcmp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

CVec array_response(double theta, Index n_antennas) {
    if (n_antennas < 1) throw std::invalid_argument("array_response: n_antennas must be >= 1");
    CVec a(n_antennas);
    const double step = kPi * std::sin(theta);
    for (Index k = 0; k < n_antennas; ++k) {
        a(k) = std::polar(1.0, step * static_cast<double>(k));
    }
    return a;
}

CVec synthesize_channel(const std::vector<PathComponent>& paths, Index n_antennas) {
    if (paths.empty()) throw std::invalid_argument("synthesize_channel: no paths");
    CVec h = CVec::Zero(n_antennas);
    for (const auto& path : paths) {
        h += path.gain * array_response(path.aoa, n_antennas);
    }
    return h;
}

CMat dft_matrix(Index n) {
    CMat u(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index k = 0; k < n; ++k) {
        for (Index m = 0; m < n; ++m) {
            // exp(-j*2*pi*k*m/n), argument reduced mod n to keep precision for large k*m
            const double frac = static_cast<double>((k * m) % n) / static_cast<double>(n);
            u(k, m) = scale * std::polar(1.0, -2.0 * kPi * frac);
        }
    }
    return u;
}

CVec to_angle_domain(const CVec& h) { return dft_matrix(h.size()) * h; }

CVec from_angle_domain(const CVec& x) { return dft_matrix(x.size()).adjoint() * x; }

ChannelRealization sample_sparse_channel(Index n_antennas, Index sparsity, Rng& rng) {
    if (sparsity < 1 || sparsity > n_antennas) {
        throw std::invalid_argument("sample_sparse_channel: need 1 <= K <= N");
    }
    // Partial Fisher-Yates for a uniform K-subset.
    std::vector<Index> pool(static_cast<std::size_t>(n_antennas));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < sparsity; ++i) {
        const Index j = i + static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n_antennas - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    std::vector<Index> support(pool.begin(), pool.begin() + sparsity);
    std::sort(support.begin(), support.end());

    ChannelRealization chan;
    chan.n_antennas = n_antennas;
    chan.x = CVec::Zero(n_antennas);
    for (Index idx : support) chan.x(idx) = rng.cnormal();
    chan.support = std::move(support);
    chan.h = from_angle_domain(chan.x);
    return chan;
}

ChannelRealization sample_offgrid_channel(Index n_antennas, Index n_paths, Rng& rng) {
    if (n_paths < 1) throw std::invalid_argument("sample_offgrid_channel: need n_paths >= 1");
    std::vector<PathComponent> paths;
    paths.reserve(static_cast<std::size_t>(n_paths));
    for (Index k = 0; k < n_paths; ++k) {
        paths.push_back({rng.cnormal(), rng.uniform(-kPi / 2.0, kPi / 2.0)});
    }
    ChannelRealization chan;
    chan.n_antennas = n_antennas;
    chan.h = synthesize_channel(paths, n_antennas);
    chan.x = to_angle_domain(chan.h);

    // Off-grid x has no exact support; report the n_paths dominant bins.
    std::vector<Index> order(static_cast<std::size_t>(n_antennas));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        return std::abs(chan.x(a)) > std::abs(chan.x(b));
    });
    chan.support.assign(order.begin(), order.begin() + n_paths);
    std::sort(chan.support.begin(), chan.support.end());
    return chan;
}

} // namespace pcmp
