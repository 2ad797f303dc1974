#pragma once

#include "firecluster/config.hpp"
#include "firecluster/geo.hpp"
#include "firecluster/results.hpp"
#include "firecluster/temporal.hpp"

#include <span>
#include <vector>

namespace firecluster {

// A raw detection before time indexing.
struct Observation {
  geo::Coordinate coord;
  Timestamp obs_time;
};

// Time indices counted from the earliest observation. Throws DomainError on
// an empty dataset.
std::vector<Hotspot> index_observations(std::span<const Observation> obs, const TimeConfig &cfg);

/// Full four-step run: time indexing, window sweep, noise filter and result
/// assembly. Throws ConfigError on bad parameters and DomainError on an empty
/// dataset.
ClusterResult hotspot_cluster(std::span<const Observation> obs, const ClusterConfig &cfg);

} // namespace firecluster
