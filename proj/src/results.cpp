#include "firecluster/results.hpp"

#include "firecluster/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

namespace firecluster {

std::size_t ClusterResult::noise_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(hotspots.begin(), hotspots.end(), [](const HotspotRecord &h) { return h.noise; }));
}

const IgnitionRecord &ClusterResult::ignition(Label membership) const {
  if (membership < 1 || static_cast<std::size_t>(membership) > ignitions.size())
    throw DomainError("no cluster with membership " + std::to_string(membership));
  return ignitions[static_cast<std::size_t>(membership - 1)];
}

ClusterResult build_result(std::span<const Hotspot> hotspots, std::span<const Label> labels, const ClusterConfig &cfg) {
  if (labels.size() != hotspots.size())
    throw InvariantError("label vector does not cover the dataset");

  Label max_label = 0;
  for (Label l : labels) {
    if (l == kUnassigned || l < kNoise)
      throw InvariantError("final labels must be -1 or positive, got " + std::to_string(l));
    max_label = std::max(max_label, l);
  }
  const auto k = static_cast<std::size_t>(max_label);

  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != kNoise)
      members[static_cast<std::size_t>(labels[i] - 1)].push_back(i);

  ClusterResult result;
  result.settings = cfg;
  result.ignitions.reserve(k);
  std::vector<geo::Coordinate> founders;
  for (std::size_t c = 0; c < k; ++c) {
    const auto &m = members[c];
    if (m.empty())
      throw InvariantError("cluster labels are not contiguous: " + std::to_string(c + 1) + " is empty");
    Timestamp earliest = Timestamp::max(), latest = Timestamp::min();
    for (std::size_t i : m) {
      earliest = std::min(earliest, hotspots[i].obs_time);
      latest = std::max(latest, hotspots[i].obs_time);
    }
    founders.clear();
    int time_id = 0;
    for (std::size_t i : m) {
      if (hotspots[i].obs_time == earliest) {
        founders.push_back(hotspots[i].coord);
        time_id = hotspots[i].time_id;
      }
    }
    IgnitionRecord rec;
    rec.membership = static_cast<Label>(c + 1);
    rec.coord = geo::centroid(founders);
    rec.obs_time = earliest;
    rec.time_id = time_id;
    rec.obs_in_cluster = m.size();
    rec.cluster_time_len = elapsed_in(earliest, latest, cfg.time.unit);
    result.ignitions.push_back(rec);
  }

  result.hotspots.reserve(hotspots.size());
  for (std::size_t i = 0; i < hotspots.size(); ++i) {
    HotspotRecord rec;
    rec.coord = hotspots[i].coord;
    rec.obs_time = hotspots[i].obs_time;
    rec.time_id = hotspots[i].time_id;
    rec.membership = labels[i];
    rec.noise = labels[i] == kNoise;
    if (!rec.noise) {
      const IgnitionRecord &ig = result.ignitions[static_cast<std::size_t>(labels[i] - 1)];
      rec.dist_to_ignition = geo::distance(rec.coord, ig.coord, cfg.distance);
      rec.time_from_ignition = elapsed_in(ig.obs_time, rec.obs_time, cfg.time.unit);
    }
    result.hotspots.push_back(rec);
  }
  return result;
}

std::string_view to_string(RowType type) {
  switch (type) {
  case RowType::hotspot:
    return "hotspot";
  case RowType::ignition:
    return "ignition";
  case RowType::noise:
    return "noise";
  }
  return "hotspot";
}

std::vector<FireRow> extract_fire(const ClusterResult &result, std::span<const Label> clusters, bool include_noise) {
  std::vector<Label> selected;
  if (clusters.empty()) {
    for (const auto &ig : result.ignitions)
      selected.push_back(ig.membership);
  } else {
    for (Label l : clusters)
      (void)result.ignition(l);
    selected.assign(clusters.begin(), clusters.end());
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  }

  std::vector<std::vector<std::size_t>> by_cluster(result.ignitions.size());
  std::vector<std::size_t> noise;
  for (std::size_t i = 0; i < result.hotspots.size(); ++i) {
    const auto &h = result.hotspots[i];
    if (h.noise)
      noise.push_back(i);
    else
      by_cluster[static_cast<std::size_t>(h.membership - 1)].push_back(i);
  }

  std::vector<FireRow> rows;
  auto hotspot_row = [&](const HotspotRecord &h) {
    FireRow row;
    row.coord = h.coord;
    row.obs_time = h.obs_time;
    row.time_id = h.time_id;
    row.membership = h.membership;
    row.noise = h.noise;
    row.dist_to_ignition = h.dist_to_ignition;
    row.time_from_ignition = h.time_from_ignition;
    row.type = h.noise ? RowType::noise : RowType::hotspot;
    if (!h.noise) {
      const auto &ig = result.ignition(h.membership);
      row.obs_in_cluster = ig.obs_in_cluster;
      row.cluster_time_len = ig.cluster_time_len;
    }
    return row;
  };

  for (Label l : selected) {
    auto &idx = by_cluster[static_cast<std::size_t>(l - 1)];
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return result.hotspots[a].obs_time < result.hotspots[b].obs_time;
    });
    const auto &ig = result.ignition(l);
    bool ignition_written = false;
    for (std::size_t i : idx) {
      if (!ignition_written && result.hotspots[i].obs_time > ig.obs_time) {
        ignition_written = true;
        rows.push_back({ig.coord, ig.obs_time, ig.time_id, l, false, 0.0, 0.0, RowType::ignition, ig.obs_in_cluster,
                        ig.cluster_time_len});
      }
      rows.push_back(hotspot_row(result.hotspots[i]));
    }
    if (!ignition_written)
      rows.push_back({ig.coord, ig.obs_time, ig.time_id, l, false, 0.0, 0.0, RowType::ignition, ig.obs_in_cluster,
                      ig.cluster_time_len});
  }
  if (include_noise)
    for (std::size_t i : noise)
      rows.push_back(hotspot_row(result.hotspots[i]));
  return rows;
}

Distribution describe(std::span<const double> values) {
  if (values.empty())
    throw DomainError("cannot describe an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  auto quantile = [&](double p) {
    const double h = (static_cast<double>(v.size()) - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  Distribution d;
  d.min = v.front();
  d.max = v.back();
  d.q1 = quantile(0.25);
  d.median = quantile(0.5);
  d.q3 = quantile(0.75);
  d.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return d;
}

Summary summarize(const ClusterResult &result) {
  Summary s;
  s.cluster_count = result.cluster_count();
  s.hotspot_count = result.hotspots.size();
  s.noise_count = result.noise_count();
  s.unit = result.settings.time.unit;
  if (result.ignitions.empty())
    return s;

  std::vector<double> counts, lengths, dists, times;
  for (const auto &ig : result.ignitions) {
    counts.push_back(static_cast<double>(ig.obs_in_cluster));
    lengths.push_back(ig.cluster_time_len);
  }
  for (const auto &h : result.hotspots) {
    if (h.noise)
      continue;
    dists.push_back(*h.dist_to_ignition);
    times.push_back(*h.time_from_ignition);
  }
  s.obs_in_cluster = describe(counts);
  s.cluster_time_len = describe(lengths);
  s.dist_to_ignition = describe(dists);
  s.time_from_ignition = describe(times);
  return s;
}

FirePath fire_movement(const ClusterResult &result, Label membership, int step) {
  if (step < 1)
    throw DomainError("step must be a positive integer");
  const IgnitionRecord &ig = result.ignition(membership);

  int first = ig.time_id;
  for (const auto &h : result.hotspots)
    if (h.membership == membership)
      first = std::min(first, h.time_id);

  std::map<int, std::vector<geo::Coordinate>> blocks;
  for (const auto &h : result.hotspots) {
    if (h.membership != membership)
      continue;
    const int block = (h.time_id - first) / step;
    blocks[first + block * step].push_back(h.coord);
  }

  FirePath path;
  path.membership = membership;
  path.step = step;
  for (const auto &[start, coords] : blocks)
    path.points.push_back({start, geo::centroid(coords), coords.size()});
  return path;
}

} // namespace firecluster
