#include "firecluster/engine.hpp"

#include "firecluster/error.hpp"
#include "site_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace firecluster {
namespace {

constexpr double kTieTolerance = 1e-9;

std::vector<geo::Coordinate> coords_of(std::span<const Hotspot> hotspots) {
  std::vector<geo::Coordinate> out;
  out.reserve(hotspots.size());
  for (const auto &h : hotspots)
    out.push_back(h.coord);
  return out;
}

// Sliding-window label propagation over a fixed point set. `points` must be
// sorted by (time_id, id); steps must be taken with non-decreasing t.
class LabelSweep {
public:
  LabelSweep(std::span<const Hotspot> points, double adj_dist, geo::DistanceMethod method, int active_time)
      : points_(points), active_time_(active_time), graph_(coords_of(points), adj_dist, method),
        active_(graph_.site_count(), 0), fresh_(graph_.site_count(), 0), stamp_(graph_.site_count(), 0) {}

  void step(int t, MembershipState &state) {
    const int lo = t - active_time_ < 1 ? 1 : t - active_time_;

    while (tail_ < points_.size() && points_[tail_].time_id < lo) {
      if (tail_ < head_)
        --active_[graph_.site_of(tail_)];
      ++tail_;
    }
    head_ = std::max(head_, tail_);

    const std::size_t new_begin = head_;
    while (head_ < points_.size() && points_[head_].time_id <= t) {
      const std::size_t site = graph_.site_of(head_);
      ++active_[site];
      if (points_[head_].time_id == t)
        ++fresh_[site];
      ++head_;
    }
    window_t_ = t;

    check_preconditions(state);

    for (std::size_t i = new_begin; i < head_; ++i) {
      if (points_[i].time_id != t)
        continue;
      const std::size_t site = graph_.site_of(i);
      if (stamp_[site] == t)
        continue;
      label_component(site, state);
    }

    for (std::size_t i = new_begin; i < head_; ++i)
      fresh_[graph_.site_of(i)] = 0;
  }

private:
  void check_preconditions(const MembershipState &state) const {
    for (std::size_t i = tail_; i < head_; ++i) {
      const Hotspot &h = points_[i];
      const Label l = state.label.at(h.id);
      if (h.time_id < window_t_ && l == kUnassigned)
        throw InvariantError("hotspot " + std::to_string(h.id) + " from an earlier index is unlabelled at t=" +
                             std::to_string(window_t_));
      if (h.time_id == window_t_ && l != kUnassigned)
        throw InvariantError("hotspot " + std::to_string(h.id) + " is already labelled at its own index t=" +
                             std::to_string(window_t_));
      if (h.time_id > window_t_)
        throw InvariantError("hotspot " + std::to_string(h.id) + " lies after t=" + std::to_string(window_t_));
    }
  }

  // Points of `site` inside the current window, ascending.
  std::span<const std::size_t> window_points_at(std::size_t site) const {
    const auto all = graph_.points(site);
    const auto first = std::lower_bound(all.begin(), all.end(), tail_);
    const auto last = std::lower_bound(first, all.end(), head_);
    return {first, last};
  }

  // Smallest label among the window's previously labelled points at `site`,
  // or kUnassigned if the site only holds new points.
  Label site_label(std::size_t site, const MembershipState &state) const {
    if (active_[site] == fresh_[site])
      return kUnassigned;
    Label best = kUnassigned;
    for (std::size_t p : window_points_at(site)) {
      const Hotspot &h = points_[p];
      if (h.time_id >= window_t_)
        break;
      const Label l = state.label[h.id];
      if (best == kUnassigned || l < best)
        best = l;
    }
    return best;
  }

  void label_component(std::size_t seed, MembershipState &state) {
    component_.clear();
    component_.push_back(seed);
    stamp_[seed] = window_t_;
    for (std::size_t k = 0; k < component_.size(); ++k) {
      for (std::size_t nb : graph_.neighbors(component_[k])) {
        if (active_[nb] == 0 || stamp_[nb] == window_t_)
          continue;
        stamp_[nb] = window_t_;
        component_.push_back(nb);
      }
    }

    labelled_.clear();
    labelled_label_.clear();
    for (std::size_t s : component_) {
      const Label l = site_label(s, state);
      if (l != kUnassigned) {
        labelled_.push_back(s);
        labelled_label_.push_back(l);
      }
    }

    if (labelled_.empty()) {
      const Label fresh = state.next_label++;
      state.first_seen_window[fresh] = window_t_;
      for (std::size_t s : component_)
        assign_new_points(s, fresh, state);
      return;
    }

    for (std::size_t s : component_) {
      if (fresh_[s] == 0)
        continue;
      assign_new_points(s, nearest_label(s), state);
    }
  }

  Label nearest_label(std::size_t site) {
    const geo::Vec3 &here = graph_.embedded(site);
    chords_.resize(labelled_.size());
    std::size_t closest = 0;
    for (std::size_t k = 0; k < labelled_.size(); ++k) {
      chords_[k] = geo::chord(here, graph_.embedded(labelled_[k]));
      if (chords_[k] < chords_[closest])
        closest = k;
    }
    // Surface distance bounds the chord from above, so only sites whose chord
    // does not exceed the best surface distance so far can beat it.
    double best = graph_.distance(site, labelled_[closest]);
    Label best_label = labelled_label_[closest];
    const double bound = best + 1e-6;
    for (std::size_t k = 0; k < labelled_.size(); ++k) {
      if (k == closest || chords_[k] > bound)
        continue;
      const double d = graph_.distance(site, labelled_[k]);
      if (d < best - kTieTolerance) {
        best = d;
        best_label = labelled_label_[k];
      } else if (std::abs(d - best) <= kTieTolerance && labelled_label_[k] < best_label) {
        best = std::min(best, d);
        best_label = labelled_label_[k];
      }
    }
    return best_label;
  }

  void assign_new_points(std::size_t site, Label label, MembershipState &state) {
    for (std::size_t p : window_points_at(site)) {
      const Hotspot &h = points_[p];
      if (h.time_id == window_t_)
        state.label[h.id] = label;
    }
  }

  std::span<const Hotspot> points_;
  int active_time_;
  detail::SiteGraph graph_;
  std::vector<int> active_;
  std::vector<int> fresh_;
  std::vector<int> stamp_;
  std::size_t tail_ = 0;
  std::size_t head_ = 0;
  int window_t_ = 0;

  std::vector<std::size_t> component_;
  std::vector<std::size_t> labelled_;
  std::vector<Label> labelled_label_;
  std::vector<double> chords_;
};

bool by_time_then_id(const Hotspot &a, const Hotspot &b) {
  return a.time_id != b.time_id ? a.time_id < b.time_id : a.id < b.id;
}

} // namespace

std::vector<std::vector<std::size_t>> local_components(std::span<const geo::Coordinate> points, double adj_dist,
                                                       geo::DistanceMethod method) {
  if (!(adj_dist > 0) || !std::isfinite(adj_dist))
    throw DomainError("adjDist must be positive");
  const detail::SiteGraph graph(points, adj_dist, method);

  std::vector<int> site_component(graph.site_count(), -1);
  std::vector<std::size_t> queue;
  int count = 0;
  for (std::size_t s = 0; s < graph.site_count(); ++s) {
    if (site_component[s] >= 0)
      continue;
    queue.assign(1, s);
    site_component[s] = count;
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (std::size_t nb : graph.neighbors(queue[k]))
        if (site_component[nb] < 0) {
          site_component[nb] = count;
          queue.push_back(nb);
        }
    ++count;
  }

  // Sites are numbered by first point, so components come out ordered by
  // their smallest index.
  std::vector<std::vector<std::size_t>> components(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < points.size(); ++i)
    components[static_cast<std::size_t>(site_component[graph.site_of(i)])].push_back(i);
  return components;
}

void propagate_labels(std::span<const Hotspot> window_points, MembershipState &state, double adj_dist, int t,
                      geo::DistanceMethod method) {
  if (t < 1)
    throw DomainError("time index must be >= 1");
  for (const auto &h : window_points)
    if (h.id >= state.label.size())
      throw InvariantError("hotspot id " + std::to_string(h.id) + " outside the membership state");
    else if (h.time_id > t)
      throw InvariantError("hotspot " + std::to_string(h.id) + " lies after t=" + std::to_string(t));

  std::vector<Hotspot> sorted(window_points.begin(), window_points.end());
  std::sort(sorted.begin(), sorted.end(), by_time_then_id);
  LabelSweep sweep(sorted, adj_dist, method, std::numeric_limits<int>::max() / 2);
  sweep.step(t, state);
}

std::vector<Label> cluster_sweep(std::span<const Hotspot> hotspots, const ClusterConfig &cfg) {
  cfg.validate();
  if (hotspots.empty())
    throw DomainError("cannot cluster an empty dataset");
  for (const auto &h : hotspots)
    if (h.time_id < 1)
      throw DomainError("hotspot time index must be >= 1");

  std::vector<std::size_t> order(hotspots.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Hotspot &x = hotspots[a], &y = hotspots[b];
    if (x.time_id != y.time_id)
      return x.time_id < y.time_id;
    if (x.obs_time != y.obs_time)
      return x.obs_time < y.obs_time;
    if (x.coord.lat != y.coord.lat)
      return x.coord.lat < y.coord.lat;
    if (x.coord.lon != y.coord.lon)
      return x.coord.lon < y.coord.lon;
    return a < b;
  });

  std::vector<Hotspot> canonical(hotspots.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    canonical[rank] = hotspots[order[rank]];
    canonical[rank].id = rank;
  }

  MembershipState state(canonical.size());
  LabelSweep sweep(canonical, cfg.adj_dist, cfg.distance, cfg.active_time);
  int previous = 0;
  for (const auto &h : canonical) {
    if (h.time_id == previous)
      continue;
    previous = h.time_id;
    sweep.step(h.time_id, state);
  }

  std::vector<Label> labels(hotspots.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank)
    labels[order[rank]] = state.label[rank];
  return labels;
}

} // namespace firecluster
