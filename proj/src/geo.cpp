#include "firecluster/geo.hpp"

#include "firecluster/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace firecluster::geo {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

bool is_valid(const Coordinate &c) noexcept {
  return std::isfinite(c.lon) && std::isfinite(c.lat) && c.lon >= -180.0 && c.lon <= 180.0 && c.lat >= -90.0 &&
         c.lat <= 90.0;
}

void require_valid(const Coordinate &c) {
  if (!is_valid(c))
    throw DomainError("invalid coordinate (lon " + std::to_string(c.lon) + ", lat " + std::to_string(c.lat) + ")");
}

std::string_view to_string(DistanceMethod method) {
  switch (method) {
  case DistanceMethod::geodesic:
    return "geodesic";
  case DistanceMethod::haversine:
    return "haversine";
  }
  return "geodesic";
}

DistanceMethod parse_distance_method(std::string_view text) {
  if (text == "geodesic")
    return DistanceMethod::geodesic;
  if (text == "haversine")
    return DistanceMethod::haversine;
  throw ConfigError("unknown distance method '" + std::string(text) + "'");
}

double haversine_distance(const Coordinate &a, const Coordinate &b) {
  require_valid(a);
  require_valid(b);
  const double p1 = a.lat * kDeg, p2 = b.lat * kDeg;
  const double dp = p2 - p1, dl = (b.lon - a.lon) * kDeg;
  const double h = std::sin(dp / 2) * std::sin(dp / 2) + std::cos(p1) * std::cos(p2) * std::sin(dl / 2) * std::sin(dl / 2);
  return 2 * kMeanEarthRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

double distance(const Coordinate &a, const Coordinate &b, DistanceMethod method) {
  return method == DistanceMethod::haversine ? haversine_distance(a, b) : geodesic_distance(a, b);
}

Coordinate centroid(std::span<const Coordinate> points) {
  if (points.empty())
    throw DomainError("centroid of an empty point list");
  double lon = 0.0, lat = 0.0;
  for (const auto &p : points) {
    lon += p.lon;
    lat += p.lat;
  }
  const auto n = static_cast<double>(points.size());
  return {lon / n, lat / n};
}

Vec3 embed(const Coordinate &c, DistanceMethod method) {
  const double phi = c.lat * kDeg, lam = c.lon * kDeg;
  const double sphi = std::sin(phi), cphi = std::cos(phi);
  if (method == DistanceMethod::haversine)
    return {kMeanEarthRadius * cphi * std::cos(lam), kMeanEarthRadius * cphi * std::sin(lam), kMeanEarthRadius * sphi};
  constexpr double e2 = kWgs84Flattening * (2 - kWgs84Flattening);
  const double n = kWgs84SemiMajor / std::sqrt(1 - e2 * sphi * sphi);
  return {n * cphi * std::cos(lam), n * cphi * std::sin(lam), n * (1 - e2) * sphi};
}

double chord(const Vec3 &a, const Vec3 &b) noexcept {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace firecluster::geo
