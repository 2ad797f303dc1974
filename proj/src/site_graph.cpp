#include "site_graph.hpp"

#include "firecluster/error.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace firecluster::detail {
namespace {

struct CoordKey {
  std::uint64_t lon;
  std::uint64_t lat;
  bool operator==(const CoordKey &) const = default;
};

struct CoordKeyHash {
  std::size_t operator()(const CoordKey &k) const noexcept {
    return std::hash<std::uint64_t>{}(k.lon * 0x9E3779B97F4A7C15ULL ^ (k.lat + 0x632BE59BD9B4E019ULL));
  }
};

CoordKey key_of(const geo::Coordinate &c) {
  // + 0.0 folds -0.0 into 0.0
  return {std::bit_cast<std::uint64_t>(c.lon + 0.0), std::bit_cast<std::uint64_t>(c.lat + 0.0)};
}

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey &) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey &k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(k.y) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.z) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

} // namespace

SiteGraph::SiteGraph(std::span<const geo::Coordinate> points, double adj_dist, geo::DistanceMethod method)
    : method_(method) {
  if (!(adj_dist > 0) || !std::isfinite(adj_dist))
    throw DomainError("adjDist must be positive");

  point_site_.resize(points.size());
  std::unordered_map<CoordKey, std::size_t, CoordKeyHash> index;
  index.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    geo::require_valid(points[i]);
    auto [it, inserted] = index.try_emplace(key_of(points[i]), sites_.size());
    if (inserted) {
      sites_.push_back(points[i]);
      embedded_.push_back(geo::embed(points[i], method));
    }
    point_site_[i] = it->second;
  }

  const std::size_t n_sites = sites_.size();
  point_offsets_.assign(n_sites + 1, 0);
  for (std::size_t s : point_site_)
    ++point_offsets_[s + 1];
  for (std::size_t s = 0; s < n_sites; ++s)
    point_offsets_[s + 1] += point_offsets_[s];
  site_points_.resize(points.size());
  {
    std::vector<std::size_t> cursor(point_offsets_.begin(), point_offsets_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i)
      site_points_[cursor[point_site_[i]]++] = i;
  }

  // The chord never exceeds the surface distance, so every edge joins sites in
  // neighbouring cells of a cube grid with side adj_dist.
  const double cell = adj_dist * (1 + 1e-9) + 1e-6;
  auto cell_of = [cell](const geo::Vec3 &v) {
    return CellKey{static_cast<std::int64_t>(std::floor(v.x / cell)), static_cast<std::int64_t>(std::floor(v.y / cell)),
                   static_cast<std::int64_t>(std::floor(v.z / cell))};
  };
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> grid;
  grid.reserve(n_sites);
  for (std::size_t s = 0; s < n_sites; ++s)
    grid[cell_of(embedded_[s])].push_back(s);

  std::vector<std::vector<std::size_t>> adj(n_sites);
  for (std::size_t s = 0; s < n_sites; ++s) {
    const CellKey c = cell_of(embedded_[s]);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          auto it = grid.find({c.x + dx, c.y + dy, c.z + dz});
          if (it == grid.end())
            continue;
          for (std::size_t other : it->second) {
            if (other <= s)
              continue;
            if (geo::chord(embedded_[s], embedded_[other]) > cell)
              continue;
            if (geo::distance(sites_[s], sites_[other], method) <= adj_dist) {
              adj[s].push_back(other);
              adj[other].push_back(s);
            }
          }
        }
  }

  offsets_.assign(n_sites + 1, 0);
  for (std::size_t s = 0; s < n_sites; ++s)
    offsets_[s + 1] = offsets_[s] + adj[s].size();
  adjacency_.reserve(offsets_.back());
  for (auto &list : adj)
    adjacency_.insert(adjacency_.end(), list.begin(), list.end());
}

} // namespace firecluster::detail
