#include "firecluster/noise_filter.hpp"

#include "firecluster/error.hpp"

#include <algorithm>
#include <unordered_map>

namespace firecluster {

namespace {

struct ClusterExtent {
  std::size_t count = 0;
  Timestamp earliest = Timestamp::max();
  Timestamp latest = Timestamp::min();
};

} // namespace

std::vector<Label> apply_noise_filter(std::span<const Label> labels, std::span<const Hotspot> hotspots,
                                      const ClusterConfig &cfg) {
  cfg.validate();
  if (labels.size() != hotspots.size())
    throw InvariantError("label vector does not cover the dataset");

  std::unordered_map<Label, ClusterExtent> extents;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label l = labels[i];
    if (l == kUnassigned)
      throw InvariantError("hotspot " + std::to_string(i) + " has no cluster label");
    if (l == kNoise)
      continue;
    ClusterExtent &e = extents[l];
    ++e.count;
    e.earliest = std::min(e.earliest, hotspots[i].obs_time);
    e.latest = std::max(e.latest, hotspots[i].obs_time);
  }

  struct Survivor {
    Label old_label;
    Timestamp ignition;
  };
  std::vector<Survivor> survivors;
  for (const auto &[label, e] : extents) {
    const double duration = elapsed_in(e.earliest, e.latest, cfg.time.unit);
    const bool big_enough = e.count >= static_cast<std::size_t>(cfg.min_pts);
    const bool long_enough = duration + 1e-9 >= cfg.min_time;
    if (big_enough && long_enough)
      survivors.push_back({label, e.earliest});
  }
  std::sort(survivors.begin(), survivors.end(), [](const Survivor &a, const Survivor &b) {
    return a.ignition != b.ignition ? a.ignition < b.ignition : a.old_label < b.old_label;
  });

  std::unordered_map<Label, Label> renumber;
  for (std::size_t k = 0; k < survivors.size(); ++k)
    renumber.emplace(survivors[k].old_label, static_cast<Label>(k + 1));

  std::vector<Label> out(labels.size(), kNoise);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = renumber.find(labels[i]);
    if (it != renumber.end())
      out[i] = it->second;
  }
  return out;
}

} // namespace firecluster
