// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pcmp/rng.hpp"
#include "pcmp/types.hpp"

namespace pcmp {

/**
 * Beamformers and the CS matrix they induce.
 *
 * Row m of cs_matrix is f_m^* U_N^*, so a noiseless phase-free measurement is
 * y[m] = A(m,:) x with x the angle-domain channel. Packet p owns rows
 * [p*M, (p+1)*M).
 */
struct SoundingSet {
    CMat beamformers; // N x (M*P), unit-norm constant-modulus columns
    CMat cs_matrix;   // (M*P) x N
    Index n_antennas = 0;
    Index beams_per_packet = 0;
    Index n_packets = 0;

    Index n_beams() const { return beams_per_packet * n_packets; }

    /// A_p, the M x N row block of packet p.
    Eigen::Block<const CMat> packet(Index p) const {
        return cs_matrix.middleRows(p * beams_per_packet, beams_per_packet);
    }
};

/// Wiener phase-noise parameters. Defaults are the 60 GHz oscillator profile
/// with IEEE 802.11ad timing (128 ns per in-packet measurement, 44 us packet gap).
struct PhaseNoiseParams {
    double carrier_hz = 60e9;      // f_c
    double osc_constant = 4.7e-18; // c, (rad*Hz)^-1
    double intra_packet_s = 128e-9;
    double inter_packet_s = 44e-6;
};

/// How phases enter the measurements: the raw per-sample Wiener trajectory,
/// or collapsed to each packet's first-sample value (the algorithm's model).
enum class PhasingMode { per_sample, packet_constant };

struct MeasurementSet {
    std::vector<CVec> packets; // P vectors of length M
    RVec true_phases;          // applied phase per measurement; diagnostics/genie only
    double noise_std = 0.0;
    PhasingMode mode = PhasingMode::per_sample;

    Index n_packets() const { return static_cast<Index>(packets.size()); }

    /// All P*M measurements stacked in packet order.
    CVec stacked() const;
};

/// Random circularly shifted Zadoff-Chu columns, scaled to unit norm.
/// Root = largest prime below N coprime with N (root 1 for N = 2).
CMat zadoff_chu_beamformers(Index n_antennas, Index n_beams, Rng& rng);

/// Assemble the CS matrix A = (U_N F)^H and per-packet structure from a
/// beamformer matrix F with M*P columns.
SoundingSet build_cs_matrix(CMat beamformers, Index beams_per_packet);

/// Per-step phase-noise standard deviation tau = 2*pi*f_c*sqrt(c*dt).
double tau_of(const PhaseNoiseParams& params, double dt_s);

/// Wiener trajectory over M*P measurements. First sample is 0; in-packet
/// steps use tau(intra_packet_s), packet boundaries tau(inter_packet_s).
RVec sample_phase_trajectory(const PhaseNoiseParams& params, Index beams_per_packet,
                             Index n_packets, Rng& rng);

/// y[m] = e^{j*phi_m} A(m,:) x + w[m], w ~ CN(0, noise_std^2), split into packets.
/// In packet_constant mode phi_m is replaced by its packet's first-sample value.
MeasurementSet measure(const CVec& x, const SoundingSet& sounding, const RVec& phases,
                       double noise_std, Rng& rng,
                       PhasingMode mode = PhasingMode::per_sample);

/// Mutual coherence: max |<a_i, a_k>| / (||a_i|| ||a_k||) over column pairs.
/// Throws on a zero column.
double coherence(const Eigen::Ref<const CMat>& matrix);

} // namespace pcmp
