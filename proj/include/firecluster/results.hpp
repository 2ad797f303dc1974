#pragma once

#include "firecluster/config.hpp"
#include "firecluster/engine.hpp"
#include "firecluster/geo.hpp"
#include "firecluster/temporal.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace firecluster {

struct HotspotRecord {
  geo::Coordinate coord;
  Timestamp obs_time;
  int time_id = 1;
  Label membership = kNoise;
  bool noise = true;
  std::optional<double> dist_to_ignition;   // meters; absent for noise
  std::optional<double> time_from_ignition; // settings time unit; absent for noise
};

struct IgnitionRecord {
  Label membership = 1;
  geo::Coordinate coord;
  Timestamp obs_time;
  int time_id = 1;
  std::size_t obs_in_cluster = 0;
  double cluster_time_len = 0; // settings time unit
};

// Immutable once built.
struct ClusterResult {
  std::vector<HotspotRecord> hotspots; // input order
  std::vector<IgnitionRecord> ignitions; // ignitions[k].membership == k + 1
  ClusterConfig settings;

  std::size_t cluster_count() const noexcept { return ignitions.size(); }
  std::size_t noise_count() const noexcept;
  // Throws DomainError for noise or unknown ids.
  const IgnitionRecord &ignition(Label membership) const;
};

/// Assembles the result tables from final (noise-filtered) labels.
///
/// A cluster's ignition point is its sole earliest observation, or the mean
/// of all members sharing that earliest observation time. The ignition time
/// is that earliest observation time and its index the matching time index.
ClusterResult build_result(std::span<const Hotspot> hotspots, std::span<const Label> labels, const ClusterConfig &cfg);

enum class RowType { hotspot, ignition, noise };
std::string_view to_string(RowType type);

struct FireRow {
  geo::Coordinate coord;
  Timestamp obs_time;
  int time_id = 1;
  Label membership = kNoise;
  bool noise = true;
  std::optional<double> dist_to_ignition;
  std::optional<double> time_from_ignition;
  RowType type = RowType::hotspot;
  std::optional<std::size_t> obs_in_cluster;
  std::optional<double> cluster_time_len;
};

/// Flattens hotspots and ignitions into one table. Rows are grouped by
/// cluster (ascending) and ordered by observation time within a cluster, the
/// ignition row following hotspots observed at or before it. Noise rows come
/// last when `include_noise` is set. An empty `clusters` selects every
/// cluster. Throws DomainError for unknown cluster ids.
std::vector<FireRow> extract_fire(const ClusterResult &result, std::span<const Label> clusters = {},
                                  bool include_noise = true);

struct Distribution {
  double min = 0;
  double q1 = 0;
  double median = 0;
  double mean = 0;
  double q3 = 0;
  double max = 0;
};

// Quartiles use linear interpolation between order statistics.
// Throws DomainError on empty input.
Distribution describe(std::span<const double> values);

struct Summary {
  std::size_t cluster_count = 0;
  std::size_t hotspot_count = 0;
  std::size_t noise_count = 0;
  TimeUnit unit = TimeUnit::hours;
  // Absent when there is nothing to describe (no clusters).
  std::optional<Distribution> obs_in_cluster;
  std::optional<Distribution> cluster_time_len;
  std::optional<Distribution> dist_to_ignition;
  std::optional<Distribution> time_from_ignition;
};

Summary summarize(const ClusterResult &result);

struct PathPoint {
  int block_start = 1; // first time index covered by the block
  geo::Coordinate centroid;
  std::size_t obs_count = 0;
};

struct FirePath {
  Label membership = 1;
  int step = 1;
  std::vector<PathPoint> points; // ascending block_start
};

/// Centroid trajectory of one cluster. Time indices are cut into consecutive
/// blocks of `step` starting at the cluster's first index; each non-empty
/// block contributes the mean position of its members. Throws DomainError
/// for noise, unknown ids or step < 1.
FirePath fire_movement(const ClusterResult &result, Label membership, int step);

} // namespace firecluster
