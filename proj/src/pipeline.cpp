#include "firecluster/pipeline.hpp"

#include "firecluster/engine.hpp"
#include "firecluster/error.hpp"
#include "firecluster/noise_filter.hpp"

#include <algorithm>

namespace firecluster {

std::vector<Hotspot> index_observations(std::span<const Observation> obs, const TimeConfig &cfg) {
  cfg.validate();
  if (obs.empty())
    throw DomainError("cannot cluster an empty dataset");
  Timestamp origin = obs.front().obs_time;
  for (const auto &o : obs)
    origin = std::min(origin, o.obs_time);

  std::vector<Hotspot> out;
  out.reserve(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    geo::require_valid(obs[i].coord);
    out.push_back({i, obs[i].coord, obs[i].obs_time, assign_time_index(obs[i].obs_time, origin, cfg)});
  }
  return out;
}

ClusterResult hotspot_cluster(std::span<const Observation> obs, const ClusterConfig &cfg) {
  cfg.validate();
  const auto hotspots = index_observations(obs, cfg.time);
  const auto raw = cluster_sweep(hotspots, cfg);
  const auto labels = apply_noise_filter(raw, hotspots, cfg);
  return build_result(hotspots, labels, cfg);
}

} // namespace firecluster
