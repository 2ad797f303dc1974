#include "firecluster/tuning.hpp"

#include "firecluster/engine.hpp"
#include "firecluster/error.hpp"
#include "firecluster/noise_filter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

namespace firecluster {

void TuningGrid::validate() const {
  if (active_times.empty() || adj_dists.empty())
    throw ConfigError("tuning grid needs at least one activeTime and one adjDist");
  for (std::size_t i = 0; i < active_times.size(); ++i) {
    if (active_times[i] < 0)
      throw ConfigError("activeTime values must be non-negative");
    if (i > 0 && active_times[i] <= active_times[i - 1])
      throw ConfigError("activeTime values must be strictly ascending");
  }
  for (std::size_t i = 0; i < adj_dists.size(); ++i) {
    if (!(adj_dists[i] > 0) || !std::isfinite(adj_dists[i]))
      throw ConfigError("adjDist values must be positive");
    if (i > 0 && adj_dists[i] <= adj_dists[i - 1])
      throw ConfigError("adjDist values must be strictly ascending");
  }
}

std::vector<TuningRow> noise_scan(std::span<const Observation> obs, const TuningGrid &grid, unsigned threads) {
  grid.validate();
  const auto hotspots = index_observations(obs, grid.fixed.time);

  std::vector<TuningRow> rows;
  for (int at : grid.active_times)
    for (double ad : grid.adj_dists)
      rows.push_back({at, ad, 0, 0, std::nullopt});

  auto run_cell = [&](TuningRow &row) {
    try {
      ClusterConfig cfg = grid.fixed;
      cfg.active_time = row.active_time;
      cfg.adj_dist = row.adj_dist;
      const auto labels = apply_noise_filter(cluster_sweep(hotspots, cfg), hotspots, cfg);
      const auto noise = std::count(labels.begin(), labels.end(), kNoise);
      row.noise_percent = 100.0 * static_cast<double>(noise) / static_cast<double>(labels.size());
      row.cluster_count = static_cast<std::size_t>(std::max(0, *std::max_element(labels.begin(), labels.end())));
    } catch (const std::exception &e) {
      row.error = e.what();
    }
  };

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++)
      run_cell(rows[i]);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back(worker);
  }
  return rows;
}

std::vector<DropHint> largest_drops(std::span<const TuningRow> rows, TuningAxis axis) {
  const bool along_adj = axis == TuningAxis::adj_dist;
  std::map<double, std::vector<const TuningRow *>> lines;
  for (const auto &r : rows)
    lines[along_adj ? r.active_time : r.adj_dist].push_back(&r);

  std::vector<DropHint> hints;
  for (auto &[fixed, line] : lines) {
    std::sort(line.begin(), line.end(), [&](const TuningRow *a, const TuningRow *b) {
      return along_adj ? a->adj_dist < b->adj_dist : a->active_time < b->active_time;
    });
    std::optional<DropHint> best;
    for (std::size_t i = 1; i < line.size(); ++i) {
      if (!line[i - 1]->ok() || !line[i]->ok())
        continue;
      const double drop = line[i - 1]->noise_percent - line[i]->noise_percent;
      if (drop > 0 && (!best || drop > best->drop))
        best = DropHint{axis, fixed, along_adj ? line[i]->adj_dist : line[i]->active_time, drop};
    }
    if (best)
      hints.push_back(*best);
  }
  return hints;
}

} // namespace firecluster
