#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace firecluster {

// Timezone-naive wall-clock time at one-second resolution.
using Timestamp = std::chrono::sys_seconds;

enum class TimeUnit { seconds, minutes, hours, days };

std::string_view to_string(TimeUnit unit);
TimeUnit parse_time_unit(std::string_view text);
double unit_seconds(TimeUnit unit);

struct TimeConfig {
  TimeUnit unit = TimeUnit::hours;
  double step = 1.0; // count of `unit` per time index

  void validate() const;
  double step_seconds() const { return step * unit_seconds(unit); }
};

/// 1-based index of the left-closed, right-open interval of width
/// `cfg.step` x `cfg.unit` that contains `obs`, counting from `origin`.
/// Throws DomainError when `obs` precedes `origin`.
int assign_time_index(Timestamp obs, Timestamp origin, const TimeConfig &cfg);

// Signed length of [from, to] expressed in `unit`.
double elapsed_in(Timestamp from, Timestamp to, TimeUnit unit);

// Index range [lo, hi] viewed as one static snapshot; hi == t.
struct TimeWindow {
  int t = 1;
  int lo = 1;
  int hi = 1;

  friend bool operator==(const TimeWindow &, const TimeWindow &) = default;
};

TimeWindow window_for(int t, int active_time);

// Accepts "YYYY-MM-DD HH:MM:SS", the ISO 8601 'T' separator, an optional
// trailing 'Z', "YYYY-MM-DD HH:MM" and a bare date. Throws DataError.
Timestamp parse_timestamp(std::string_view text);

// "YYYY-MM-DD HH:MM:SS"
std::string format_timestamp(Timestamp ts);

} // namespace firecluster
