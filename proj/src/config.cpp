#include "firecluster/config.hpp"

#include "firecluster/error.hpp"

#include <cmath>

namespace firecluster {

std::string_view to_string(IgnitionCenter) { return "mean"; }

void ClusterConfig::validate() const {
  if (active_time < 0)
    throw ConfigError("activeTime must be a non-negative integer");
  if (!(std::isfinite(adj_dist) && adj_dist > 0))
    throw ConfigError("adjDist must be a positive number of meters");
  if (min_pts < 1)
    throw ConfigError("minPts must be a positive integer");
  if (!(std::isfinite(min_time) && min_time >= 0))
    throw ConfigError("minTime must be a non-negative number");
  time.validate();
}

} // namespace firecluster
