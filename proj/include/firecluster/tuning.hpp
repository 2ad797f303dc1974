#pragma once

#include "firecluster/config.hpp"
#include "firecluster/pipeline.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace firecluster {

struct TuningGrid {
  std::vector<int> active_times; // strictly ascending, >= 0
  std::vector<double> adj_dists; // strictly ascending, > 0
  ClusterConfig fixed;           // active_time and adj_dist are overridden per cell

  // Throws ConfigError.
  void validate() const;
};

struct TuningRow {
  int active_time = 0;
  double adj_dist = 0;
  double noise_percent = 0;
  std::size_t cluster_count = 0;
  std::optional<std::string> error; // set when the cell failed

  bool ok() const noexcept { return !error.has_value(); }
};

/// Runs the pipeline once per grid cell. Rows come back ordered by
/// (active_time, adj_dist). A failing cell is recorded in its row rather
/// than aborting the scan. `threads` == 0 picks the hardware concurrency.
std::vector<TuningRow> noise_scan(std::span<const Observation> obs, const TuningGrid &grid, unsigned threads = 0);

enum class TuningAxis { adj_dist, active_time };

// The cell right after the largest decrease in noise_percent along one axis,
// the other parameter held at `fixed_value`.
struct DropHint {
  TuningAxis axis = TuningAxis::adj_dist;
  double fixed_value = 0;
  double chosen_value = 0;
  double drop = 0; // percentage points
};

// One hint per line of the grid that has at least one decrease. Failed
// cells break the line at that point.
std::vector<DropHint> largest_drops(std::span<const TuningRow> rows, TuningAxis axis);

} // namespace firecluster
