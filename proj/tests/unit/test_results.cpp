#include "doctest.h"

#include "firecluster/error.hpp"
#include "firecluster/pipeline.hpp"
#include "firecluster/results.hpp"

#include <cmath>
#include <numbers>

using namespace firecluster;
using geo::Coordinate;
using namespace std::chrono_literals;

namespace {

const Timestamp kT0 = parse_timestamp("2019-12-29 13:10:00");

Hotspot hs(std::size_t id, Coordinate c, std::chrono::seconds offset, int t) { return {id, c, kT0 + offset, t}; }

// Two clusters of sizes 4 and 8 plus one noise point.
struct Fixture {
  std::vector<Hotspot> hotspots;
  std::vector<Label> labels;
  Fixture() {
    for (int i = 0; i < 4; ++i)
      hotspots.push_back(hs(hotspots.size(), {0, 0.01 * i}, std::chrono::hours{i}, 1 + i));
    for (int i = 0; i < 8; ++i)
      hotspots.push_back(hs(hotspots.size(), {1, 0.01 * i}, std::chrono::hours{2 * i + 1}, 2 + 2 * i));
    hotspots.push_back(hs(hotspots.size(), {5, 5}, 0s, 1));
    labels = {1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, -1};
  }
};

} // namespace

TEST_CASE("ignition is the mean of the founding observations") {
  const std::vector<Hotspot> h{hs(0, {0, 0}, 0s, 1), hs(1, {0, 0.02}, 0s, 1), hs(2, {0, 0.01}, 20min, 1),
                               hs(3, {0, 0.03}, 4h, 5)};
  const auto r = build_result(h, std::vector<Label>{1, 1, 1, 1}, ClusterConfig{});
  REQUIRE(r.ignitions.size() == 1);
  const auto &ig = r.ignitions[0];
  CHECK(ig.coord.lon == 0);
  CHECK(ig.coord.lat == doctest::Approx(0.01));
  CHECK(ig.obs_time == kT0);
  CHECK(ig.time_id == 1);
  CHECK(ig.obs_in_cluster == 4);
  CHECK(ig.cluster_time_len == doctest::Approx(4.0));
  // the later point in the same index does not move the ignition
  CHECK(*r.hotspots[2].dist_to_ignition == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(*r.hotspots[2].time_from_ignition == doctest::Approx(1.0 / 3));
  CHECK(*r.hotspots[0].dist_to_ignition == doctest::Approx(*r.hotspots[1].dist_to_ignition));
}

TEST_CASE("single founding hotspot is its own ignition") {
  const std::vector<Hotspot> h{hs(0, {149.30, -37.77}, 0s, 1), hs(1, {149.30, -37.75999}, 1h, 2),
                               hs(2, {149.32, -37.78}, 2h, 3)};
  const auto r = build_result(h, std::vector<Label>{1, 1, 1}, ClusterConfig{});
  CHECK(r.ignitions[0].coord == Coordinate{149.30, -37.77});
  CHECK(*r.hotspots[0].dist_to_ignition == 0);
  CHECK(*r.hotspots[0].time_from_ignition == 0);
  CHECK(*r.hotspots[1].dist_to_ignition == doctest::Approx(1111.885).epsilon(0.002));
  CHECK(*r.hotspots[2].dist_to_ignition == doctest::Approx(2080.914).epsilon(0.002));
  CHECK(*r.hotspots[2].time_from_ignition == doctest::Approx(2.0));
}

TEST_CASE("result tables") {
  const Fixture f;
  const auto r = build_result(f.hotspots, f.labels, ClusterConfig{});
  CHECK(r.hotspots.size() == f.hotspots.size());
  CHECK(r.cluster_count() == 2);
  CHECK(r.noise_count() == 1);
  std::size_t total = r.noise_count();
  for (const auto &ig : r.ignitions)
    total += ig.obs_in_cluster;
  CHECK(total == f.hotspots.size());
  for (const auto &h : r.hotspots) {
    CHECK(h.noise == (h.membership == kNoise));
    CHECK(h.dist_to_ignition.has_value() == !h.noise);
    if (!h.noise) {
      CHECK(*h.time_from_ignition >= 0);
      CHECK(r.ignition(h.membership).time_id <= h.time_id);
    }
  }
  CHECK(r.ignition(2).cluster_time_len == doctest::Approx(14.0));
  CHECK_THROWS_AS(r.ignition(3), DomainError);
  CHECK_THROWS_AS(r.ignition(kNoise), DomainError);
}

TEST_CASE("result assembly rejects malformed labels") {
  const Fixture f;
  auto labels = f.labels;
  labels[0] = kUnassigned;
  CHECK_THROWS_AS(build_result(f.hotspots, labels, ClusterConfig{}), InvariantError);
  labels = f.labels;
  for (auto &l : labels)
    if (l == 1)
      l = 3; // leaves a hole at 1
  CHECK_THROWS_AS(build_result(f.hotspots, labels, ClusterConfig{}), InvariantError);
  CHECK_THROWS_AS(build_result(f.hotspots, std::vector<Label>{1}, ClusterConfig{}), InvariantError);
}

TEST_CASE("extract_fire") {
  const Fixture f;
  const auto r = build_result(f.hotspots, f.labels, ClusterConfig{});

  const auto all = extract_fire(r);
  CHECK(all.size() == f.hotspots.size() + 2);
  CHECK(all.back().type == RowType::noise);
  CHECK_FALSE(all.back().dist_to_ignition.has_value());

  const std::vector<Label> two{2};
  const auto only2 = extract_fire(r, two, false);
  CHECK(only2.size() == 9);
  for (const auto &row : only2)
    CHECK(row.membership == 2);
  CHECK(std::count_if(only2.begin(), only2.end(), [](const FireRow &x) { return x.type == RowType::ignition; }) == 1);

  const std::vector<Label> both{2, 1, 2};
  const auto rows = extract_fire(r, both, false);
  CHECK(rows.size() == 14);
  CHECK(rows.front().membership == 1);

  const std::vector<Label> unknown{4};
  CHECK_THROWS_AS(extract_fire(r, unknown, true), DomainError);
  const std::vector<Label> noise{kNoise};
  CHECK_THROWS_AS(extract_fire(r, noise, true), DomainError);
}

TEST_CASE("extract_fire places the ignition row after the founding hotspots") {
  const std::vector<Hotspot> h{hs(0, {0, 0.02}, 0s, 1), hs(1, {0, 0}, 0s, 1), hs(2, {0, 0.01}, 20min, 1),
                               hs(3, {0, 0.03}, 4h, 5)};
  const auto r = build_result(h, std::vector<Label>{1, 1, 1, 1}, ClusterConfig{});
  const auto rows = extract_fire(r);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].type == RowType::hotspot);
  CHECK(rows[0].coord.lat == 0.02);
  CHECK(rows[1].coord.lat == 0);
  CHECK(rows[2].type == RowType::ignition);
  CHECK(*rows[2].dist_to_ignition == 0);
  CHECK(*rows[2].obs_in_cluster == 4);
  CHECK(rows[3].obs_time == kT0 + 20min);
  CHECK(rows[4].obs_time == kT0 + 4h);
  CHECK(to_string(RowType::ignition) == "ignition");
}

TEST_CASE("extract_fire on a noise-free result") {
  const std::vector<Hotspot> h{hs(0, {0, 0}, 0s, 1), hs(1, {0, 0.01}, 1h, 2)};
  const auto r = build_result(h, std::vector<Label>{1, 1}, ClusterConfig{});
  CHECK(extract_fire(r, {}, true).size() == 3);
}

TEST_CASE("describe uses linearly interpolated quartiles") {
  // Reference quartiles from numpy.quantile (linear method).
  const std::vector<double> v{3, 1, 4, 1, 5, 9, 2, 6};
  const auto d = describe(v);
  CHECK(d.min == 1);
  CHECK(d.q1 == doctest::Approx(1.75));
  CHECK(d.median == doctest::Approx(3.5));
  CHECK(d.mean == doctest::Approx(3.875));
  CHECK(d.q3 == doctest::Approx(5.25));
  CHECK(d.max == 9);
  const std::vector<double> counts{146, 165, 126, 256, 111, 256};
  const auto c = describe(counts);
  CHECK(c.q1 == doctest::Approx(131.0));
  CHECK(c.median == doctest::Approx(155.5));
  CHECK(c.mean == doctest::Approx(176.66666666666666));
  CHECK(c.q3 == doctest::Approx(233.25));
  CHECK_THROWS_AS(describe(std::vector<double>{}), DomainError);
}

TEST_CASE("summarize") {
  const Fixture f;
  const auto s = summarize(build_result(f.hotspots, f.labels, ClusterConfig{}));
  CHECK(s.cluster_count == 2);
  CHECK(s.noise_count == 1);
  CHECK(s.hotspot_count == 13);
  CHECK(s.obs_in_cluster->mean == doctest::Approx(6.0));
  CHECK(s.obs_in_cluster->min == 4);
  CHECK(s.obs_in_cluster->max == 8);
  CHECK(s.unit == TimeUnit::hours);

  const std::vector<Hotspot> one{hs(0, {0, 0}, 0s, 1), hs(1, {0, 0.01}, 5h, 6)};
  const auto single = summarize(build_result(one, std::vector<Label>{1, 1}, ClusterConfig{}));
  CHECK(single.cluster_time_len->min == single.cluster_time_len->max);
  CHECK(single.cluster_time_len->median == 5);
  CHECK(single.obs_in_cluster->q1 == 2);

  const auto none = summarize(build_result(one, std::vector<Label>{-1, -1}, ClusterConfig{}));
  CHECK(none.cluster_count == 0);
  CHECK(none.noise_count == 2);
  CHECK_FALSE(none.obs_in_cluster.has_value());
}

TEST_CASE("fire movement blocks") {
  std::vector<Hotspot> h;
  for (int t = 1; t <= 24; ++t)
    h.push_back(hs(h.size(), {145 + 0.001 * t, -37}, std::chrono::hours{t - 1}, t));
  const auto r = build_result(h, std::vector<Label>(h.size(), 1), ClusterConfig{});
  const auto p = fire_movement(r, 1, 12);
  REQUIRE(p.points.size() == 2);
  CHECK(p.points[0].block_start == 1);
  CHECK(p.points[1].block_start == 13);
  CHECK(p.points[0].obs_count == 12);
  CHECK(p.points[0].centroid.lon == doctest::Approx(145.0065));
  CHECK(fire_movement(r, 1, 24).points.size() == 1);
  CHECK(fire_movement(r, 1, 1000).points.size() == 1);
  CHECK(fire_movement(r, 1, 5).points.size() == 5); // ceil(24 / 5)
  CHECK_THROWS_AS(fire_movement(r, 1, 0), DomainError);
  CHECK_THROWS_AS(fire_movement(r, 2, 1), DomainError);
  CHECK_THROWS_AS(fire_movement(r, kNoise, 1), DomainError);
}

TEST_CASE("fire movement anchors at the cluster start and skips empty blocks") {
  std::vector<Hotspot> h;
  for (int t : {40, 41, 42, 60, 61})
    h.push_back(hs(h.size(), {145, -37 + 0.001 * t}, std::chrono::hours{t - 1}, t));
  const auto r = build_result(h, std::vector<Label>(h.size(), 1), ClusterConfig{});
  const auto p = fire_movement(r, 1, 6);
  REQUIRE(p.points.size() == 2);
  CHECK(p.points[0].block_start == 40);
  CHECK(p.points[1].block_start == 58);
  CHECK(p.points[1].obs_count == 2);
}

TEST_CASE("symmetric spread keeps the centroid in place") {
  const Coordinate centre{145, -37};
  std::vector<Hotspot> h;
  const double m_per_deg_lat = 111000, m_per_deg_lon = 111000 * std::cos(37 * std::numbers::pi / 180);
  for (int t = 1; t <= 24; ++t) {
    const double radius = 500.0 * t;
    for (int k = 0; k < 8; ++k) {
      const double a = k * std::numbers::pi / 4;
      h.push_back(hs(h.size(),
                     {centre.lon + radius * std::cos(a) / m_per_deg_lon, centre.lat + radius * std::sin(a) / m_per_deg_lat},
                     std::chrono::hours{t - 1}, t));
    }
  }
  const auto r = build_result(h, std::vector<Label>(h.size(), 1), ClusterConfig{});
  const int step = 4;
  const auto p = fire_movement(r, 1, step);
  REQUIRE(p.points.size() == 6);
  for (std::size_t i = 1; i < p.points.size(); ++i) {
    const double moved = geo::geodesic_distance(p.points[i - 1].centroid, p.points[i].centroid);
    CHECK(moved < 0.1 * 500.0 * step);
  }
}
