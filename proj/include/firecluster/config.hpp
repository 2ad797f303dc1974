#pragma once

#include "firecluster/geo.hpp"
#include "firecluster/temporal.hpp"

#include <string_view>

namespace firecluster {

enum class IgnitionCenter { mean };

std::string_view to_string(IgnitionCenter center);

// The algorithm parameters. Defaults are the demonstrated Victoria settings.
struct ClusterConfig {
  int active_time = 24;    // time indices a fire may go undetected
  double adj_dist = 3000;  // meters joining two hotspots
  int min_pts = 4;         // hotspots a cluster needs to survive
  double min_time = 3;     // duration in time.unit a cluster needs to survive
  TimeConfig time;
  IgnitionCenter ignition_center = IgnitionCenter::mean;
  geo::DistanceMethod distance = geo::DistanceMethod::geodesic;

  // Throws ConfigError on the first out-of-range field.
  void validate() const;
};

} // namespace firecluster
