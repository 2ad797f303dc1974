#pragma once

#include "firecluster/geo.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace firecluster::detail {

// Points collapsed onto their distinct coordinates ("sites") with the
// adjacency of the distance-threshold graph between sites. Satellite products
// report on a fixed grid, so a window typically holds many repeat detections
// of few sites; connectivity only depends on the sites.
class SiteGraph {
public:
  SiteGraph(std::span<const geo::Coordinate> points, double adj_dist, geo::DistanceMethod method);

  std::size_t site_count() const noexcept { return sites_.size(); }
  std::size_t site_of(std::size_t point) const { return point_site_[point]; }
  const geo::Coordinate &coord(std::size_t site) const { return sites_[site]; }
  const geo::Vec3 &embedded(std::size_t site) const { return embedded_[site]; }

  // Adjacent sites, excluding the site itself.
  std::span<const std::size_t> neighbors(std::size_t site) const {
    return {adjacency_.data() + offsets_[site], adjacency_.data() + offsets_[site + 1]};
  }

  // Points at `site`, ascending.
  std::span<const std::size_t> points(std::size_t site) const {
    return {site_points_.data() + point_offsets_[site], site_points_.data() + point_offsets_[site + 1]};
  }

  double distance(std::size_t a, std::size_t b) const { return geo::distance(sites_[a], sites_[b], method_); }
  geo::DistanceMethod method() const noexcept { return method_; }

private:
  geo::DistanceMethod method_;
  std::vector<geo::Coordinate> sites_;
  std::vector<geo::Vec3> embedded_;
  std::vector<std::size_t> point_site_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> adjacency_;
  std::vector<std::size_t> point_offsets_;
  std::vector<std::size_t> site_points_;
};

} // namespace firecluster::detail
