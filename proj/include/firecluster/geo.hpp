#pragma once

#include <span>
#include <string_view>

namespace firecluster::geo {

// WGS84 ellipsoid.
inline constexpr double kWgs84SemiMajor = 6378137.0;
inline constexpr double kWgs84Flattening = 1.0 / 298.257223563;
// IUGG mean Earth radius, used by the spherical fast mode.
inline constexpr double kMeanEarthRadius = 6371008.8;

struct Coordinate {
  double lon = 0.0; // degrees east, [-180, 180]
  double lat = 0.0; // degrees north, [-90, 90]

  friend bool operator==(const Coordinate &, const Coordinate &) = default;
};

bool is_valid(const Coordinate &c) noexcept;

// Throws DomainError naming the offending value.
void require_valid(const Coordinate &c);

enum class DistanceMethod {
  geodesic,  // ellipsoidal geodesic on WGS84
  haversine, // great circle on a sphere of kMeanEarthRadius
};

std::string_view to_string(DistanceMethod method);
DistanceMethod parse_distance_method(std::string_view text);

/// Length in meters of the shortest path between `a` and `b` on the WGS84
/// ellipsoid. Solved with Karney's Newton iteration on the auxiliary sphere,
/// which converges for every pair including nearly antipodal ones and is
/// accurate to a few nanometers.
double geodesic_distance(const Coordinate &a, const Coordinate &b);

/// Great-circle distance in meters on the mean-radius sphere.
double haversine_distance(const Coordinate &a, const Coordinate &b);

double distance(const Coordinate &a, const Coordinate &b, DistanceMethod method);

// Component-wise arithmetic mean of lon and lat. Throws DomainError on empty input.
Coordinate centroid(std::span<const Coordinate> points);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Cartesian embedding of the surface the given method measures on (WGS84 ECEF
// or the mean sphere). The straight-line chord between two embedded points
// never exceeds their surface distance, so it is a safe prefilter.
Vec3 embed(const Coordinate &c, DistanceMethod method);

double chord(const Vec3 &a, const Vec3 &b) noexcept;

} // namespace firecluster::geo
