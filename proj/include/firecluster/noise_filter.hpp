#pragma once

#include "firecluster/config.hpp"
#include "firecluster/engine.hpp"

#include <span>
#include <vector>

namespace firecluster {

/// Demotes every cluster with fewer than `cfg.min_pts` members or a duration
/// (latest minus earliest observation, in `cfg.time.unit`) below
/// `cfg.min_time` to kNoise. Survivors are renumbered 1..K by ascending
/// ignition time; equal ignition times keep the order of their raw labels,
/// which cluster_sweep numbers independently of row order.
///
/// `labels[i]` belongs to `hotspots[i]`; every label must be assigned.
std::vector<Label> apply_noise_filter(std::span<const Label> labels, std::span<const Hotspot> hotspots,
                                      const ClusterConfig &cfg);

} // namespace firecluster
