#pragma once

#include "firecluster/config.hpp"
#include "firecluster/geo.hpp"
#include "firecluster/temporal.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace firecluster {

using Label = int;
inline constexpr Label kUnassigned = 0;
inline constexpr Label kNoise = -1;

struct Hotspot {
  std::size_t id = 0; // dense ordinal, indexes MembershipState::label
  geo::Coordinate coord;
  Timestamp obs_time;
  int time_id = 1;
};

// Global label assignment while sweeping windows. Labels are written once.
struct MembershipState {
  std::vector<Label> label; // kUnassigned until the hotspot's window is processed
  Label next_label = 1;
  std::map<Label, int> first_seen_window;

  MembershipState() = default;
  explicit MembershipState(std::size_t hotspot_count) : label(hotspot_count, kUnassigned) {}
};

// Connected components of the graph joining points at distance <= adj_dist.
// Each component holds ascending indices into `points`; components are
// ordered by their smallest index. Throws DomainError if adj_dist <= 0.
std::vector<std::vector<std::size_t>> local_components(std::span<const geo::Coordinate> points, double adj_dist,
                                                       geo::DistanceMethod method = geo::DistanceMethod::geodesic);

/// Labels the hotspots of window S_t whose time index equals `t`.
///
/// Every point in `window_points` with time_id < t must already carry a
/// label in `state`; points with time_id == t must be unassigned. A new point
/// takes the label of the nearest labelled point of its connected component
/// (ties within 1e-9 m go to the smaller label). Components without any
/// labelled point get one fresh label each, numbered in order of their
/// smallest hotspot id. Throws InvariantError when the preconditions fail.
void propagate_labels(std::span<const Hotspot> window_points, MembershipState &state, double adj_dist, int t,
                      geo::DistanceMethod method = geo::DistanceMethod::geodesic);

/// Runs the window sweep t = 1..T over the whole dataset and returns one
/// pre-noise label per input hotspot, in input order.
///
/// Hotspot ids are ignored: the sweep numbers points by a canonical order
/// (time index, observation time, lat, lon, input position) so the partition
/// does not depend on row order among equal timestamps.
std::vector<Label> cluster_sweep(std::span<const Hotspot> hotspots, const ClusterConfig &cfg);

} // namespace firecluster
