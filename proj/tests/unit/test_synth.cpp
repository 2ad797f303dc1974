#include "doctest.h"

#include "firecluster/error.hpp"
#include "firecluster/synth.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace firecluster;
using geo::Coordinate;

namespace {

bool on_grid(double v) { return std::abs(v * 50 - std::round(v * 50)) < 1e-9; }

std::vector<int> labels_of(const ClusterResult &r) {
  std::vector<int> out;
  for (const auto &h : r.hotspots)
    out.push_back(h.membership);
  return out;
}

} // namespace

TEST_CASE("generation is reproducible and grid aligned") {
  synth::FireScenario s;
  s.ignitions = {{{145.003, -37.011}, 1, 30, {}}};
  s.noise_points = 4;
  s.seed = 5;
  const auto a = synth::generate(s), b = synth::generate(s);
  REQUIRE(a.observations.size() == b.observations.size());
  CHECK(a.observations.size() == 30 * 2 + 4);
  for (std::size_t i = 0; i < a.observations.size(); ++i) {
    CHECK(a.observations[i].coord == b.observations[i].coord);
    CHECK(a.observations[i].obs_time == b.observations[i].obs_time);
    CHECK(on_grid(a.observations[i].coord.lon));
    CHECK(on_grid(a.observations[i].coord.lat));
    if (i > 0)
      CHECK(a.observations[i - 1].obs_time <= a.observations[i].obs_time);
  }
  CHECK(a.truth == b.truth);
  s.seed = 6;
  const auto c = synth::generate(s);
  bool differs = false;
  for (std::size_t i = 0; i < c.observations.size(); ++i)
    differs = differs || !(c.observations[i].coord == a.observations[i].coord);
  CHECK(differs);
  CHECK(synth::snap_to_grid({145.011, -37.009}) == synth::snap_to_grid({145.02, -37.0}));
}

TEST_CASE("degenerate scenarios are rejected") {
  synth::FireScenario s;
  CHECK_THROWS_AS(synth::generate(s), DomainError);
  s.ignitions = {{{145, -37}, 1, 10, {}}};
  s.detections_per_index = 0;
  CHECK_THROWS_AS(synth::generate(s), DomainError);
  s.detections_per_index = 1;
  s.smolder_gaps = {{0, 1, 10}};
  CHECK_THROWS_AS(synth::generate(s), DomainError);
  s.smolder_gaps = {{3, 1, 1}};
  CHECK_THROWS_AS(synth::generate(s), DomainError);
  s.smolder_gaps = {};
  s.ignitions[0].start_index = 0;
  CHECK_THROWS_AS(synth::generate(s), DomainError);
}

TEST_CASE("children stay within spread of the previous active index") {
  synth::FireScenario s;
  s.ignitions = {{{145, -37}, 1, 40, {}}};
  s.detections_per_index = 3;
  s.smolder_gaps = {{0, 10, 5}};
  s.seed = 9;
  const auto d = synth::generate(s);
  const auto hs = index_observations(d.observations, s.time);
  for (const auto &h : hs) {
    if (h.time_id == 1)
      continue;
    int prev = h.time_id - 1;
    if (prev >= 10 && prev < 15)
      prev = 9;
    double best = 1e300;
    for (const auto &g : hs)
      if (g.time_id == prev)
        best = std::min(best, geo::geodesic_distance(h.coord, g.coord));
    CHECK(best <= s.spread_rate);
    CHECK(geo::geodesic_distance(h.coord, {145, -37}) <= s.max_radius);
  }
}

TEST_CASE("noise points keep their clearance") {
  synth::FireScenario s;
  s.ignitions = {{{145, -37}, 1, 24, {}}, {{145.6, -37}, 1, 24, {}}};
  s.noise_points = 25;
  s.seed = 3;
  const auto d = synth::generate(s);
  for (std::size_t i = 0; i < d.observations.size(); ++i) {
    if (d.truth[i] != -1)
      continue;
    for (std::size_t j = 0; j < d.observations.size(); ++j)
      if (j != i)
        CHECK(geo::geodesic_distance(d.observations[i].coord, d.observations[j].coord) > s.noise_clearance);
  }
}

TEST_CASE("one fire without gaps is recovered") {
  synth::FireScenario s;
  s.ignitions = {{{145, -37}, 1, 48, {}}};
  const auto d = synth::generate(s);
  const auto r = hotspot_cluster(d.observations, ClusterConfig{});
  CHECK(r.cluster_count() == 1);
  CHECK(oracle::canonical(labels_of(r)) == oracle::canonical(d.truth));
}

TEST_CASE("two fires 50 km apart do not mix") {
  synth::FireScenario s;
  const double dlon = 50000 / (111320 * std::cos(37 * std::numbers::pi / 180));
  s.ignitions = {{{145, -37}, 1, 36, {}}, {{145 + dlon, -37}, 3, 36, {}}};
  s.seed = 21;
  const auto d = synth::generate(s);
  const auto r = hotspot_cluster(d.observations, ClusterConfig{});
  CHECK(r.cluster_count() == 2);
  CHECK(oracle::canonical(labels_of(r)) == oracle::canonical(d.truth));
}

TEST_CASE("smolder gaps") {
  ClusterConfig cfg; // activeTime 24
  synth::FireScenario s;
  s.ignitions = {{{145, -37}, 1, 90, {}}};
  SUBCASE("shorter than activeTime keeps one fire") {
    s.smolder_gaps = {{0, 20, 23}};
    const auto d = synth::generate(s);
    CHECK(d.segment_count == 1);
    const auto r = hotspot_cluster(d.observations, cfg);
    CHECK(r.cluster_count() == 1);
    CHECK(oracle::canonical(labels_of(r)) == oracle::canonical(d.truth));
  }
  SUBCASE("activeTime + 2 splits the fire") {
    s.smolder_gaps = {{0, 20, 26}};
    const auto d = synth::generate(s);
    CHECK(d.segment_count == 2);
    const auto r = hotspot_cluster(d.observations, cfg);
    CHECK(r.cluster_count() == 2);
    CHECK(oracle::canonical(labels_of(r)) == oracle::canonical(d.truth));
  }
}

TEST_CASE("heading fires advance as a front") {
  synth::FireScenario s;
  s.ignitions = {{{145, -37}, 1, 10, 90.0}};
  s.detections_per_index = 1;
  s.spread_rate = 2000;
  const auto d = synth::generate(s);
  REQUIRE(d.observations.size() == 10);
  for (std::size_t i = 1; i < d.observations.size(); ++i) {
    CHECK(d.observations[i].coord.lat == d.observations[0].coord.lat);
    CHECK(d.observations[i].coord.lon > d.observations[i - 1].coord.lon);
    CHECK(geo::geodesic_distance(d.observations[i].coord, d.observations[i - 1].coord) <= 2000);
  }
}
