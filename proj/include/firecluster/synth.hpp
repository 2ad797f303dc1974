#pragma once

#include "firecluster/geo.hpp"
#include "firecluster/pipeline.hpp"
#include "firecluster/temporal.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace firecluster::synth {

// Spacing of the detection grid in degrees.
inline constexpr double kGridDegrees = 0.02;

// Nearest node of the 0.02 degree grid.
geo::Coordinate snap_to_grid(const geo::Coordinate &c);

struct Ignition {
  geo::Coordinate coord;
  int start_index = 1;
  int duration = 24; // indices from start_index, gaps included
  // Degrees clockwise from north. When set the fire is a single front that
  // advances spread_rate meters per index in this direction; otherwise the
  // fire grows as a random walk around its earlier detections.
  std::optional<double> heading;
};

// No detections for fire `fire` at indices [start, start + length).
struct SmolderGap {
  std::size_t fire = 0;
  int start = 1;
  int length = 1;
};

struct FireScenario {
  std::vector<Ignition> ignitions;
  double spread_rate = 2500;    // meters per index; keep below adjDist
  int detections_per_index = 2; // per fire per active index
  double max_radius = 10000;    // random-walk fires stay within this of ignition
  std::vector<SmolderGap> smolder_gaps;
  std::size_t noise_points = 0;
  double noise_clearance = 9000; // meters kept between noise and anything else
  std::uint64_t seed = 1;
  // Dormancy tolerance used to split ground truth; match the clustering run.
  int active_time = 24;
  TimeConfig time;
  Timestamp origin = Timestamp{std::chrono::hours{24 * 18260}}; // 2019-12-30

  // Throws DomainError.
  void validate() const;
};

struct SyntheticData {
  std::vector<Observation> observations; // ascending obs_time
  // 1..F per fire segment, -1 for noise. A fire silent for more than
  // active_time indices starts a new segment.
  std::vector<int> truth;
  std::size_t segment_count = 0;
};

/// Deterministic for a given seed. Each detection after a fire's first lies
/// within spread_rate of a detection from the fire's previous active index,
/// so a fire stays connected while its gaps are shorter than active_time.
/// Noise points are isolated by noise_clearance from every other point.
SyntheticData generate(const FireScenario &scenario);

} // namespace firecluster::synth
