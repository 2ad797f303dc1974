#include "doctest.h"

#include "firecluster/error.hpp"
#include "firecluster/temporal.hpp"

using namespace firecluster;
using namespace std::chrono_literals;

namespace {
Timestamp ts(const char *s) { return parse_timestamp(s); }
} // namespace

TEST_CASE("time index examples") {
  const TimeConfig hourly{TimeUnit::hours, 1};
  const auto origin = ts("2019-12-29 13:10:00");
  CHECK(assign_time_index(origin, origin, hourly) == 1);
  CHECK(assign_time_index(ts("2019-12-29 14:10:00"), origin, hourly) == 2);
  CHECK(assign_time_index(origin + 59min, origin, hourly) == 1);
  CHECK(assign_time_index(origin + 59min + 59s, origin, hourly) == 1);
  CHECK(assign_time_index(ts("2019-12-29 15:00:00"), origin, hourly) == 2);
  // 3.5 h at 30 min steps: floor(7) + 1
  const TimeConfig half_hour{TimeUnit::minutes, 30};
  CHECK(assign_time_index(origin + 3h + 30min, origin, half_hour) == 8);
  CHECK(assign_time_index(origin + 3h + 29min, origin, half_hour) == 7);
  CHECK(assign_time_index(origin + 3h + 30min, origin, TimeConfig{TimeUnit::hours, 0.5}) == 8);
  CHECK(assign_time_index(origin + 48h, origin, TimeConfig{TimeUnit::days, 1}) == 3);
  CHECK(assign_time_index(origin + 10s, origin, TimeConfig{TimeUnit::seconds, 3}) == 4);
}

TEST_CASE("time index boundaries with awkward steps") {
  // A tenth of an hour is not exact in binary; boundaries must still be
  // left-closed.
  const TimeConfig cfg{TimeUnit::hours, 0.1};
  const auto origin = ts("2020-01-01 00:00:00");
  for (int k = 0; k < 500; ++k) {
    CHECK(assign_time_index(origin + std::chrono::seconds{360 * k}, origin, cfg) == k + 1);
    CHECK(assign_time_index(origin + std::chrono::seconds{360 * k + 359}, origin, cfg) == k + 1);
  }
}

TEST_CASE("time index errors and monotonicity") {
  const TimeConfig cfg;
  const auto origin = ts("2020-01-01 00:00:00");
  CHECK_THROWS_AS(assign_time_index(origin - 1s, origin, cfg), DomainError);
  CHECK_THROWS_AS(assign_time_index(origin, origin, TimeConfig{TimeUnit::hours, 0}), ConfigError);
  CHECK_THROWS_AS(assign_time_index(origin, origin, TimeConfig{TimeUnit::hours, -1}), ConfigError);
  int previous = 1;
  for (int s = 0; s < 20000; s += 37) {
    const int k = assign_time_index(origin + std::chrono::seconds{s}, origin, cfg);
    CHECK(k >= previous);
    previous = k;
  }
}

TEST_CASE("windows") {
  CHECK(window_for(1, 24) == TimeWindow{1, 1, 1});
  CHECK(window_for(26, 24) == TimeWindow{26, 2, 26});
  CHECK(window_for(10, 24) == TimeWindow{10, 1, 10});
  CHECK(window_for(5, 0) == TimeWindow{5, 5, 5});
  CHECK_THROWS_AS(window_for(0, 24), DomainError);
  CHECK_THROWS_AS(window_for(3, -1), DomainError);
  for (int t = 1; t < 100; ++t) {
    const auto a = window_for(t, 24), b = window_for(t + 1, 24);
    CHECK(b.hi == a.hi + 1);
    CHECK((b.lo == a.lo || b.lo == a.lo + 1));
  }
  // index k is seen by windows k .. k + activeTime
  for (int k = 1; k < 40; ++k)
    for (int t = 1; t < 80; ++t) {
      const auto w = window_for(t, 24);
      CHECK((w.lo <= k && k <= w.hi) == (t >= k && t <= k + 24));
    }
}

TEST_CASE("timestamp parsing and formatting") {
  CHECK(format_timestamp(ts("2019-12-29 13:10:00")) == "2019-12-29 13:10:00");
  CHECK(ts("2019-12-29T13:10:00") == ts("2019-12-29 13:10:00"));
  CHECK(ts("2019-12-29T13:10:00Z") == ts("2019-12-29 13:10:00"));
  CHECK(ts("2019-12-29 13:10") == ts("2019-12-29 13:10:00"));
  CHECK(ts("2019-12-29") == ts("2019-12-29 00:00:00"));
  CHECK(format_timestamp(ts("2020-02-29 23:59:59")) == "2020-02-29 23:59:59");
  CHECK(ts("2020-01-01 00:00:00") - ts("2019-12-31 23:00:00") == 1h);
  CHECK_THROWS_AS(ts("2019-02-29 00:00:00"), DataError);
  CHECK_THROWS_AS(ts("2019-12-29 24:00:00"), DataError);
  CHECK_THROWS_AS(ts("29/12/2019"), DataError);
  CHECK_THROWS_AS(ts(""), DataError);
  CHECK_THROWS_AS(ts("2019-12-29 13:10:00 extra"), DataError);
}

TEST_CASE("time units") {
  CHECK(parse_time_unit("h") == TimeUnit::hours);
  CHECK(parse_time_unit("mins") == TimeUnit::minutes);
  CHECK(parse_time_unit("s") == TimeUnit::seconds);
  CHECK(parse_time_unit("days") == TimeUnit::days);
  CHECK_THROWS_AS(parse_time_unit("weeks"), ConfigError);
  CHECK(to_string(TimeUnit::hours) == "h");
  const auto a = ts("2020-01-01 00:00:00");
  CHECK(elapsed_in(a, a + 20min, TimeUnit::hours) == doctest::Approx(1.0 / 3));
  CHECK(elapsed_in(a + 1h, a, TimeUnit::minutes) == -60);
}
