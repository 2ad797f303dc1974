#include "firecluster/temporal.hpp"

#include "firecluster/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace firecluster {

std::string_view to_string(TimeUnit unit) {
  switch (unit) {
  case TimeUnit::seconds:
    return "s";
  case TimeUnit::minutes:
    return "min";
  case TimeUnit::hours:
    return "h";
  case TimeUnit::days:
    return "d";
  }
  return "h";
}

TimeUnit parse_time_unit(std::string_view text) {
  if (text == "s" || text == "sec" || text == "secs" || text == "second" || text == "seconds")
    return TimeUnit::seconds;
  if (text == "m" || text == "min" || text == "mins" || text == "minute" || text == "minutes")
    return TimeUnit::minutes;
  if (text == "h" || text == "hour" || text == "hours")
    return TimeUnit::hours;
  if (text == "d" || text == "day" || text == "days")
    return TimeUnit::days;
  throw ConfigError("unknown time unit '" + std::string(text) + "' (expected s, min, h or d)");
}

double unit_seconds(TimeUnit unit) {
  switch (unit) {
  case TimeUnit::seconds:
    return 1.0;
  case TimeUnit::minutes:
    return 60.0;
  case TimeUnit::hours:
    return 3600.0;
  case TimeUnit::days:
    return 86400.0;
  }
  return 3600.0;
}

void TimeConfig::validate() const {
  if (!(std::isfinite(step) && step > 0))
    throw ConfigError("timeStep must be a positive number");
}

int assign_time_index(Timestamp obs, Timestamp origin, const TimeConfig &cfg) {
  cfg.validate();
  if (obs < origin)
    throw DomainError("observation time " + format_timestamp(obs) + " precedes origin " + format_timestamp(origin));
  const auto elapsed = static_cast<long double>((obs - origin).count());
  const auto width = static_cast<long double>(cfg.step_seconds());
  auto k = std::floor(elapsed / width);
  // Guard the boundary against rounding in the division.
  if ((k + 1) * width <= elapsed)
    k += 1;
  else if (k > 0 && k * width > elapsed)
    k -= 1;
  if (k >= static_cast<long double>(std::numeric_limits<int>::max() - 1))
    throw DomainError("time index overflow: step too small for the observed time span");
  return static_cast<int>(k) + 1;
}

double elapsed_in(Timestamp from, Timestamp to, TimeUnit unit) {
  return static_cast<double>((to - from).count()) / unit_seconds(unit);
}

TimeWindow window_for(int t, int active_time) {
  if (t < 1)
    throw DomainError("time index must be >= 1, got " + std::to_string(t));
  if (active_time < 0)
    throw DomainError("activeTime must be >= 0, got " + std::to_string(active_time));
  const int lo = t - active_time < 1 ? 1 : t - active_time;
  return {t, lo, t};
}

namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int &out) {
  if (pos + len > text.size())
    return false;
  const char *first = text.data() + pos;
  const char *last = first + len;
  for (const char *p = first; p != last; ++p)
    if (*p < '0' || *p > '9')
      return false;
  return std::from_chars(first, last, out).ec == std::errc{};
}

} // namespace

Timestamp parse_timestamp(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.back() == 'Z')
    text.remove_suffix(1);

  auto fail = [&]() -> Timestamp { throw DataError("unparseable timestamp '" + std::string(text) + "'"); };

  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-' || !read_int(text, 0, 4, y) || !read_int(text, 5, 2, mo) ||
      !read_int(text, 8, 2, d))
    return fail();
  if (text.size() > 10) {
    if ((text[10] != ' ' && text[10] != 'T') || text.size() < 16 || text[13] != ':' || !read_int(text, 11, 2, h) ||
        !read_int(text, 14, 2, mi))
      return fail();
    if (text.size() > 16) {
      if (text.size() != 19 || text[16] != ':' || !read_int(text, 17, 2, s))
        return fail();
    }
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59)
    return fail();
  return std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi} + std::chrono::seconds{s};
}

std::string format_timestamp(Timestamp ts) {
  const auto day = std::chrono::floor<std::chrono::days>(ts);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{ts - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02ld:%02ld:%02ld", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()), static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

} // namespace firecluster
