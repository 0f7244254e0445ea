// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "pcmp/channel.hpp"
#include "pcmp/pcmp.hpp"
#include "pcmp/sounding.hpp"

namespace pcmp::testing {

struct Instance {
    ChannelRealization chan;
    SoundingSet sounding;
    MeasurementSet meas;
    RVec trajectory;
};

/// One random problem instance with iid uniform per-packet phases applied
/// packet-constant. sigma = 0 gives noiseless data.
inline Instance make_instance(std::uint64_t seed, Index n, Index m, Index p, Index k,
                              double sigma, bool zero_phases = false) {
    Rng rng(seed);
    Instance inst;
    inst.chan = sample_sparse_channel(n, k, rng);
    inst.sounding = build_cs_matrix(zadoff_chu_beamformers(n, m * p, rng), m);
    inst.trajectory = RVec::Zero(m * p);
    if (!zero_phases) {
        for (Index pkt = 0; pkt < p; ++pkt) {
            const double phi = rng.uniform(0.0, 2.0 * 3.141592653589793);
            inst.trajectory.segment(pkt * m, m).setConstant(phi);
        }
    }
    inst.meas = measure(inst.chan.x, inst.sounding, inst.trajectory, sigma, rng,
                        PhasingMode::packet_constant);
    return inst;
}

} // namespace pcmp::testing
