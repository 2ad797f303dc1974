#include "doctest.h"

#include "firecluster/error.hpp"
#include "firecluster/noise_filter.hpp"

#include <random>

using namespace firecluster;
using namespace std::chrono_literals;

namespace {

const Timestamp kT0 = parse_timestamp("2020-01-01 00:00:00");

std::vector<Hotspot> at_times(const std::vector<std::chrono::seconds> &offsets) {
  std::vector<Hotspot> out;
  for (std::size_t i = 0; i < offsets.size(); ++i)
    out.push_back({i, {145, -37}, kT0 + offsets[i], 1});
  return out;
}

} // namespace

TEST_CASE("small clusters become noise") {
  const auto hs = at_times({0s, 4h, 5h});
  const std::vector<Label> raw{1, 1, 1};
  CHECK(apply_noise_filter(raw, hs, ClusterConfig{}) == std::vector<Label>{-1, -1, -1});
}

TEST_CASE("short clusters become noise") {
  std::vector<std::chrono::seconds> same(10, 0s);
  const auto hs = at_times(same);
  const std::vector<Label> raw(10, 1);
  CHECK(apply_noise_filter(raw, hs, ClusterConfig{}) == std::vector<Label>(10, -1));
}

TEST_CASE("thresholds are inclusive") {
  const auto hs = at_times({0s, 1h, 2h, 3h});
  const std::vector<Label> raw{1, 1, 1, 1};
  CHECK(apply_noise_filter(raw, hs, ClusterConfig{}) == std::vector<Label>{1, 1, 1, 1});
  const auto shorter = at_times({0s, 1h, 2h, 3h - 1s});
  CHECK(apply_noise_filter(raw, shorter, ClusterConfig{}) == std::vector<Label>{-1, -1, -1, -1});
  ClusterConfig minutes;
  minutes.time = {TimeUnit::minutes, 10};
  minutes.min_time = 180;
  CHECK(apply_noise_filter(raw, hs, minutes) == std::vector<Label>{1, 1, 1, 1});
}

TEST_CASE("survivors are renumbered by ignition time") {
  // raw cluster 5 ignites first, 2 second, 9 is too small
  const auto hs = at_times({2h, 2h, 3h, 9h, 0s, 1h, 5h, 6h, 1h, 1h});
  const std::vector<Label> raw{2, 2, 2, 2, 5, 5, 5, 5, 9, 9};
  CHECK(apply_noise_filter(raw, hs, ClusterConfig{}) == std::vector<Label>{2, 2, 2, 2, 1, 1, 1, 1, -1, -1});
}

TEST_CASE("equal ignition times fall back to the raw label order") {
  const auto hs = at_times({0s, 0s, 4h, 4h, 0s, 0s, 4h, 4h});
  const std::vector<Label> raw{8, 3, 8, 3, 8, 3, 8, 3};
  CHECK(apply_noise_filter(raw, hs, ClusterConfig{}) == std::vector<Label>{2, 1, 2, 1, 2, 1, 2, 1});
}

TEST_CASE("existing noise labels pass through") {
  const auto hs = at_times({0s, 1h, 2h, 3h, 0s});
  const std::vector<Label> raw{1, 1, 1, 1, kNoise};
  CHECK(apply_noise_filter(raw, hs, ClusterConfig{}) == std::vector<Label>{1, 1, 1, 1, -1});
}

TEST_CASE("contract errors") {
  const auto hs = at_times({0s, 1h});
  CHECK_THROWS_AS(apply_noise_filter(std::vector<Label>{1}, hs, ClusterConfig{}), InvariantError);
  CHECK_THROWS_AS(apply_noise_filter(std::vector<Label>{1, kUnassigned}, hs, ClusterConfig{}), InvariantError);
  ClusterConfig bad;
  bad.min_pts = 0;
  CHECK_THROWS_AS(apply_noise_filter(std::vector<Label>{1, 1}, hs, bad), ConfigError);
}

TEST_CASE("random clusterings satisfy the filter contract") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    std::vector<Hotspot> hs;
    std::vector<Label> raw;
    const int k = 1 + static_cast<int>(rng() % 12);
    for (std::size_t i = 0; i < n; ++i) {
      hs.push_back({i, {145, -37}, kT0 + std::chrono::minutes{rng() % 600}, 1});
      raw.push_back(1 + static_cast<Label>(rng() % static_cast<unsigned>(k)));
    }
    ClusterConfig cfg;
    cfg.min_pts = 1 + static_cast<int>(rng() % 6);
    cfg.min_time = static_cast<double>(rng() % 6);
    const auto out = apply_noise_filter(raw, hs, cfg);
    std::map<Label, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i)
      if (out[i] != kNoise)
        members[out[i]].push_back(i);
    Label expect = 1;
    Timestamp last_ignition = Timestamp::min();
    for (const auto &[l, m] : members) {
      CHECK(l == expect++);
      CHECK(m.size() >= static_cast<std::size_t>(cfg.min_pts));
      Timestamp lo = Timestamp::max(), hi = Timestamp::min();
      for (auto i : m) {
        lo = std::min(lo, hs[i].obs_time);
        hi = std::max(hi, hs[i].obs_time);
        // a whole raw cluster moves together
        for (std::size_t j = 0; j < n; ++j)
          if (raw[j] == raw[i])
            CHECK(out[j] == l);
      }
      CHECK(elapsed_in(lo, hi, cfg.time.unit) >= cfg.min_time);
      CHECK(lo >= last_ignition);
      last_ignition = lo;
    }
  }
}
