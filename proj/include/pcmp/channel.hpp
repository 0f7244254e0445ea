// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "pcmp/rng.hpp"
#include "pcmp/types.hpp"

namespace pcmp {

/// One propagation path: complex gain and angle of arrival in [-pi/2, pi/2].
struct PathComponent {
    Complex gain;
    double aoa;
};

/// Ground-truth channel in both domains. x = U_N h, K-sparse in the angle
/// domain when generated on-grid.
struct ChannelRealization {
    CVec h;                     // spatial channel, length N
    CVec x;                     // angle-domain channel, length N
    std::vector<Index> support; // ascending indices of the non-zeros of x
    Index n_antennas = 0;
};

/// Transmit array response of a half-wavelength ULA:
/// entry k = exp(j*pi*k*sin(theta)), k = 0..N-1.
CVec array_response(double theta, Index n_antennas);

/// Sum of gain * array_response(aoa) over the given paths.
/// Throws std::invalid_argument on an empty path list.
CVec synthesize_channel(const std::vector<PathComponent>& paths, Index n_antennas);

/// The N x N unitary DFT matrix U_N, U(k,n) = exp(-j*2*pi*k*n/N)/sqrt(N).
CMat dft_matrix(Index n);

/// Angle-domain transform x = U_N h and its inverse h = U_N^H x.
CVec to_angle_domain(const CVec& h);
CVec from_angle_domain(const CVec& x);

/// Draw an exactly K-sparse angle-domain channel: support uniform without
/// replacement, non-zero entries CN(0,1), h = U_N^H x.
ChannelRealization sample_sparse_channel(Index n_antennas, Index sparsity, Rng& rng);

/// Off-grid variant: n_paths continuous angles uniform in [-pi/2, pi/2] with
/// CN(0,1) gains. x is dense in general; support lists the n_paths largest
/// |x| entries. Not used by the acceptance experiments.
ChannelRealization sample_offgrid_channel(Index n_antennas, Index n_paths, Rng& rng);

} // namespace pcmp
