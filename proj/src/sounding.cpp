// SPDX-License-Identifier: Apache-2.0
#include "pcmp/sounding.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pcmp/channel.hpp"

namespace pcmp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_prime(Index n) {
    if (n < 2) return false;
    for (Index d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

Index zc_root(Index n) {
    for (Index u = n - 1; u >= 2; --u) {
        if (is_prime(u) && std::gcd(u, n) == 1) return u;
    }
    return 1; // only reached for N = 2
}

/// Length-n Zadoff-Chu sequence with the even/odd-length exponent.
CVec zadoff_chu_sequence(Index n, Index root) {
    CVec z(n);
    for (Index k = 0; k < n; ++k) {
        // even n: u*k^2/n, odd n: u*k*(k+1)/n; reduce mod 2n before the division
        const Index quad = (n % 2 == 0) ? k * k : k * (k + 1);
        const Index arg = (root * quad) % (2 * n);
        z(k) = std::polar(1.0, -kPi * static_cast<double>(arg) / static_cast<double>(n));
    }
    return z;
}

} // namespace

CVec MeasurementSet::stacked() const {
    Index total = 0;
    for (const auto& y : packets) total += y.size();
    CVec out(total);
    Index at = 0;
    for (const auto& y : packets) {
        out.segment(at, y.size()) = y;
        at += y.size();
    }
    return out;
}

CMat zadoff_chu_beamformers(Index n_antennas, Index n_beams, Rng& rng) {
    if (n_antennas < 2) throw std::invalid_argument("zadoff_chu_beamformers: need N >= 2");
    const Index root = zc_root(n_antennas);
    const CVec base = zadoff_chu_sequence(n_antennas, root);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_antennas));

    CMat f(n_antennas, n_beams);
    for (Index m = 0; m < n_beams; ++m) {
        const Index shift = static_cast<Index>(rng.bounded(static_cast<std::uint64_t>(n_antennas)));
        for (Index k = 0; k < n_antennas; ++k) {
            f(k, m) = scale * base((k + shift) % n_antennas);
        }
    }
    return f;
}

SoundingSet build_cs_matrix(CMat beamformers, Index beams_per_packet) {
    const Index n_beams = beamformers.cols();
    if (beams_per_packet < 1 || n_beams % beams_per_packet != 0) {
        throw std::invalid_argument("build_cs_matrix: beam count must be a multiple of M");
    }
    SoundingSet s;
    s.n_antennas = beamformers.rows();
    s.beams_per_packet = beams_per_packet;
    s.n_packets = n_beams / beams_per_packet;
    // Row m of A is f_m^* U_N^*, i.e. A = (U_N F)^H.
    s.cs_matrix = (dft_matrix(s.n_antennas) * beamformers).adjoint();
    s.beamformers = std::move(beamformers);
    return s;
}

double tau_of(const PhaseNoiseParams& params, double dt_s) {
    if (dt_s <= 0.0) throw std::invalid_argument("tau_of: dt must be > 0");
    return 2.0 * kPi * params.carrier_hz * std::sqrt(params.osc_constant * dt_s);
}

RVec sample_phase_trajectory(const PhaseNoiseParams& params, Index beams_per_packet,
                             Index n_packets, Rng& rng) {
    if (beams_per_packet < 1 || n_packets < 1) {
        throw std::invalid_argument("sample_phase_trajectory: need M, P >= 1");
    }
    const double tau_intra = tau_of(params, params.intra_packet_s);
    const double tau_inter = tau_of(params, params.inter_packet_s);

    const Index total = beams_per_packet * n_packets;
    RVec phi(total);
    phi(0) = 0.0;
    for (Index m = 1; m < total; ++m) {
        const bool packet_boundary = (m % beams_per_packet == 0);
        const double tau = packet_boundary ? tau_inter : tau_intra;
        phi(m) = phi(m - 1) + tau * rng.normal();
    }
    return phi;
}

MeasurementSet measure(const CVec& x, const SoundingSet& sounding, const RVec& phases,
                       double noise_std, Rng& rng, PhasingMode mode) {
    const Index m_per = sounding.beams_per_packet;
    const Index n_pkts = sounding.n_packets;
    if (x.size() != sounding.n_antennas || phases.size() != sounding.n_beams()) {
        throw std::invalid_argument("measure: dimension mismatch");
    }
    if (noise_std < 0.0) throw std::invalid_argument("measure: noise_std must be >= 0");

    MeasurementSet meas;
    meas.noise_std = noise_std;
    meas.mode = mode;
    meas.true_phases = RVec(phases.size());
    meas.packets.reserve(static_cast<std::size_t>(n_pkts));

    const CVec clean = sounding.cs_matrix * x;
    for (Index p = 0; p < n_pkts; ++p) {
        CVec y(m_per);
        for (Index i = 0; i < m_per; ++i) {
            const Index m = p * m_per + i;
            const double phi = (mode == PhasingMode::packet_constant) ? phases(p * m_per) : phases(m);
            meas.true_phases(m) = phi;
            Complex w{0.0, 0.0};
            if (noise_std > 0.0) w = noise_std * rng.cnormal();
            y(i) = std::polar(1.0, phi) * clean(m) + w;
        }
        meas.packets.push_back(std::move(y));
    }
    return meas;
}

double coherence(const Eigen::Ref<const CMat>& matrix) {
    const Index n = matrix.cols();
    RVec norms(n);
    for (Index k = 0; k < n; ++k) {
        norms(k) = matrix.col(k).norm();
        if (norms(k) == 0.0) throw std::invalid_argument("coherence: zero column");
    }
    double mu = 0.0;
    for (Index i = 0; i < n; ++i) {
        for (Index k = i + 1; k < n; ++k) {
            const double c = std::abs(matrix.col(i).dot(matrix.col(k))) / (norms(i) * norms(k));
            mu = std::max(mu, c);
        }
    }
    return mu;
}

} // namespace pcmp
