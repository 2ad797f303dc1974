#include "firecluster/synth.hpp"

#include "firecluster/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

namespace firecluster::synth {
namespace {

constexpr double kMetersPerDegree = 111320.0;

double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }

// Equirectangular estimate, only used to skip far pairs and rank nearby nodes.
double rough_distance(const geo::Coordinate &a, const geo::Coordinate &b) {
  const double coslat = std::cos(deg_to_rad(0.5 * (a.lat + b.lat)));
  const double dx = (a.lon - b.lon) * coslat * kMetersPerDegree;
  const double dy = (a.lat - b.lat) * kMetersPerDegree;
  return std::hypot(dx, dy);
}

bool within(const geo::Coordinate &a, const geo::Coordinate &b, double meters) {
  if (rough_distance(a, b) > 1.5 * meters + 100)
    return false;
  return geo::geodesic_distance(a, b) <= meters;
}

// Grid nodes no farther than `radius` meters from grid node `p`.
std::vector<geo::Coordinate> reachable(const geo::Coordinate &p, double radius) {
  const double cell = kGridDegrees * kMetersPerDegree * std::max(0.05, std::cos(deg_to_rad(p.lat)));
  const int r = std::min(50, static_cast<int>(std::ceil(radius / cell)) + 1);
  std::vector<geo::Coordinate> out;
  for (int i = -r; i <= r; ++i) {
    for (int j = -r; j <= r; ++j) {
      geo::Coordinate c = snap_to_grid({p.lon + i * kGridDegrees, p.lat + j * kGridDegrees});
      if (!geo::is_valid(c))
        continue;
      if (c == p || geo::geodesic_distance(p, c) <= radius)
        out.push_back(c);
    }
  }
  return out;
}

geo::Coordinate advance(const geo::Coordinate &from, double meters, double heading_deg) {
  const double h = deg_to_rad(heading_deg);
  const double dlat = meters * std::cos(h) / kMetersPerDegree;
  const double dlon = meters * std::sin(h) / (kMetersPerDegree * std::max(0.05, std::cos(deg_to_rad(from.lat))));
  return {std::clamp(from.lon + dlon, -180.0, 180.0), std::clamp(from.lat + dlat, -90.0, 90.0)};
}

class Clock {
public:
  explicit Clock(const FireScenario &s) : origin_(s.origin), step_(s.time.step_seconds()) {}

  // A time inside index t, `fraction` in [0, 1) of the way through it.
  Timestamp at(int t, double fraction) const {
    const auto begin = static_cast<long long>(std::ceil(static_cast<long double>(t - 1) * step_));
    const auto end = static_cast<long long>(std::ceil(static_cast<long double>(t) * step_));
    long long offset = 0;
    if (end - begin > 1) {
      const long long grain = end - begin >= 1200 ? 600 : 1;
      const long long slots = (end - begin - 1) / grain + 1;
      offset = std::min(slots - 1, static_cast<long long>(fraction * static_cast<double>(slots))) * grain;
    }
    return origin_ + std::chrono::seconds{begin + offset};
  }

private:
  Timestamp origin_;
  double step_;
};

} // namespace

geo::Coordinate snap_to_grid(const geo::Coordinate &c) {
  auto snap = [](double v) { return std::round(v / kGridDegrees) * kGridDegrees; };
  return {std::clamp(snap(c.lon), -180.0, 180.0), std::clamp(snap(c.lat), -90.0, 90.0)};
}

void FireScenario::validate() const {
  if (ignitions.empty())
    throw DomainError("scenario has no ignitions");
  if (detections_per_index < 1)
    throw DomainError("detections per index must be positive");
  if (!(std::isfinite(spread_rate) && spread_rate >= 0))
    throw DomainError("spread rate must be a non-negative number of meters");
  if (!(std::isfinite(max_radius) && max_radius > 0))
    throw DomainError("max radius must be positive");
  if (!(std::isfinite(noise_clearance) && noise_clearance >= 0))
    throw DomainError("noise clearance must be non-negative");
  if (active_time < 0)
    throw DomainError("activeTime must be non-negative");
  time.validate();
  for (const auto &ig : ignitions) {
    geo::require_valid(ig.coord);
    if (ig.start_index < 1 || ig.duration < 1)
      throw DomainError("ignition start index and duration must be positive");
    if (ig.heading && !std::isfinite(*ig.heading))
      throw DomainError("heading must be finite");
  }
  for (const auto &g : smolder_gaps)
    if (g.fire >= ignitions.size() || g.length < 1)
      throw DomainError("smolder gap refers to a missing fire or has no length");
}

SyntheticData generate(const FireScenario &scenario) {
  scenario.validate();
  std::mt19937_64 rng(scenario.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(unit(rng) * static_cast<double>(n))); };
  const Clock clock(scenario);

  std::vector<Observation> obs;
  std::vector<int> truth;
  int segment = 0;

  for (std::size_t f = 0; f < scenario.ignitions.size(); ++f) {
    const Ignition &ig = scenario.ignitions[f];
    std::set<int> silent;
    for (const auto &g : scenario.smolder_gaps)
      if (g.fire == f)
        for (int k = 0; k < g.length; ++k)
          silent.insert(g.start + k);

    const geo::Coordinate home = snap_to_grid(ig.coord);
    geo::Coordinate front = home;      // heading mode: last front node
    geo::Coordinate target = ig.coord; // heading mode: continuous position
    std::vector<geo::Coordinate> previous, current;
    int last_active = 0;
    bool any = false;

    for (int t = ig.start_index; t < ig.start_index + ig.duration; ++t) {
      if (silent.count(t))
        continue;
      if (!any || t - last_active > scenario.active_time)
        ++segment;
      current.clear();

      if (!any) {
        current.push_back(home);
        obs.push_back({home, clock.at(t, 0.0)});
        truth.push_back(segment);
      } else if (ig.heading) {
        target = advance(target, scenario.spread_rate, *ig.heading);
        const auto options = reachable(front, scenario.spread_rate);
        front = *std::min_element(options.begin(), options.end(), [&](const auto &a, const auto &b) {
          return rough_distance(a, target) < rough_distance(b, target);
        });
        current.push_back(front);
        obs.push_back({front, clock.at(t, unit(rng))});
        truth.push_back(segment);
      }

      while (current.size() < static_cast<std::size_t>(scenario.detections_per_index)) {
        geo::Coordinate parent;
        if (ig.heading || !any)
          parent = current.front();
        else
          parent = previous[pick(previous.size())];
        auto options = reachable(parent, scenario.spread_rate);
        if (!ig.heading)
          std::erase_if(options, [&](const auto &c) { return !within(c, home, scenario.max_radius); });
        const geo::Coordinate child = options.empty() ? parent : options[pick(options.size())];
        current.push_back(child);
        obs.push_back({child, clock.at(t, unit(rng))});
        truth.push_back(segment);
      }

      previous = current;
      last_active = t;
      any = true;
    }
    if (!any)
      throw DomainError("fire " + std::to_string(f) + " has no detections outside its smolder gaps");
  }

  if (scenario.noise_points > 0) {
    double lon_lo = 180, lon_hi = -180, lat_lo = 90, lat_hi = -90;
    int t_lo = scenario.ignitions.front().start_index, t_hi = t_lo;
    for (const auto &o : obs) {
      lon_lo = std::min(lon_lo, o.coord.lon);
      lon_hi = std::max(lon_hi, o.coord.lon);
      lat_lo = std::min(lat_lo, o.coord.lat);
      lat_hi = std::max(lat_hi, o.coord.lat);
    }
    for (const auto &ig : scenario.ignitions) {
      t_lo = std::min(t_lo, ig.start_index);
      t_hi = std::max(t_hi, ig.start_index + ig.duration - 1);
    }
    const double margin = 3 * std::max(scenario.noise_clearance, 1000.0) / kMetersPerDegree;
    lon_lo = std::max(-180.0, lon_lo - margin / std::max(0.05, std::cos(deg_to_rad(lat_lo))));
    lon_hi = std::min(180.0, lon_hi + margin / std::max(0.05, std::cos(deg_to_rad(lat_hi))));
    lat_lo = std::max(-90.0, lat_lo - margin);
    lat_hi = std::min(90.0, lat_hi + margin);

    std::size_t placed = 0;
    for (std::size_t attempt = 0; placed < scenario.noise_points; ++attempt) {
      if (attempt > 1000 * scenario.noise_points + 10000)
        throw DomainError("cannot place noise points with the requested clearance");
      const geo::Coordinate c =
          snap_to_grid({lon_lo + unit(rng) * (lon_hi - lon_lo), lat_lo + unit(rng) * (lat_hi - lat_lo)});
      const bool crowded = std::any_of(obs.begin(), obs.end(), [&](const Observation &o) {
        return within(c, o.coord, scenario.noise_clearance);
      });
      if (crowded)
        continue;
      const int t = t_lo + static_cast<int>(pick(static_cast<std::size_t>(t_hi - t_lo + 1)));
      obs.push_back({c, clock.at(t, unit(rng))});
      truth.push_back(-1);
      ++placed;
    }
  }

  std::vector<std::size_t> order(obs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return obs[a].obs_time < obs[b].obs_time; });
  SyntheticData data;
  data.segment_count = static_cast<std::size_t>(segment);
  for (std::size_t i : order) {
    data.observations.push_back(obs[i]);
    data.truth.push_back(truth[i]);
  }
  return data;
}

} // namespace firecluster::synth
