#include "firecluster/io.hpp"

#include "firecluster/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace firecluster::io {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

std::string optional_number(const std::optional<double> &v) { return v ? format_number(*v) : "NA"; }

const char *bool_text(bool b) { return b ? "TRUE" : "FALSE"; }

ordered_json point(const geo::Coordinate &c) {
  return {{"type", "Point"}, {"coordinates", ordered_json::array({c.lon, c.lat})}};
}

} // namespace

bool CsvReader::next(std::vector<std::string> &fields) {
  fields.clear();
  int c = in_.get();
  if (first_) {
    first_ = false;
    if (c == 0xEF && in_.peek() == 0xBB) {
      in_.get();
      if (in_.get() != 0xBF)
        throw DataError("malformed byte order mark", 1);
      c = in_.get();
    }
  }
  if (c == std::char_traits<char>::eof())
    return false;

  record_line_ = line_;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (;; c = in_.get()) {
    if (c == std::char_traits<char>::eof()) {
      if (quoted)
        throw DataError("unterminated quoted field", record_line_);
      fields.push_back(std::move(field));
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n')
          ++line_;
        field += ch;
      }
      continue;
    }
    if (ch == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else if (ch == '\r' && in_.peek() == '\n') {
      continue;
    } else if (ch == '\n') {
      ++line_;
      fields.push_back(std::move(field));
      return true;
    } else {
      field += ch;
    }
  }
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos)
    return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double value) {
  if (value == 0)
    value = 0; // folds -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

BBox parse_bbox(std::string_view text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    const auto num = parse_double(part);
    if (!num)
      throw ConfigError("bbox component '" + std::string(part) + "' is not a number");
    v.push_back(*num);
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  if (v.size() != 4)
    throw ConfigError("bbox needs four values: lonMin,latMin,lonMax,latMax");
  BBox b{v[0], v[1], v[2], v[3]};
  if (b.lon_min > b.lon_max || b.lat_min > b.lat_max)
    throw ConfigError("bbox minimum exceeds maximum");
  return b;
}

IngestReport ingest(const IngestSpec &spec) {
  std::ifstream in(spec.path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + spec.path.string());
  return ingest(in, spec);
}

IngestReport ingest(std::istream &in, const IngestSpec &spec) {
  if (spec.irradiance_min && !std::isfinite(*spec.irradiance_min))
    throw ConfigError("irradiance threshold must be finite");

  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header))
    throw DataError("missing header row", 1);

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i)
    index.try_emplace(std::string(trim(header[i])), i);
  auto column = [&](const std::string &name) {
    auto it = index.find(name);
    if (it == index.end())
      throw ConfigError("column '" + name + "' not found in header");
    return it->second;
  };
  const std::size_t lon_col = column(spec.lon_column);
  const std::size_t lat_col = column(spec.lat_column);
  const std::size_t time_col = column(spec.time_column);
  const std::optional<std::size_t> irr_col =
      spec.irradiance_min ? std::optional(column(spec.irradiance_column)) : std::nullopt;

  IngestReport report;
  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() == 1 && trim(row[0]).empty())
      continue; // blank line
    ++report.rows_read;
    try {
      if (row.size() != header.size())
        throw DataError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(row.size()),
                        reader.line());
      const auto lon = parse_double(row[lon_col]);
      const auto lat = parse_double(row[lat_col]);
      if (!lon || !lat)
        throw DataError("unparseable coordinate", reader.line());
      const geo::Coordinate coord{*lon, *lat};
      if (!geo::is_valid(coord))
        throw DataError("coordinate out of range", reader.line());
      Timestamp ts;
      try {
        ts = parse_timestamp(trim(row[time_col]));
      } catch (const DataError &e) {
        throw DataError(e.what(), reader.line());
      }
      if (irr_col) {
        const auto irr = parse_double(row[*irr_col]);
        if (!irr)
          throw DataError("unparseable irradiance", reader.line());
        if (!(*irr > *spec.irradiance_min)) {
          ++report.rows_filtered;
          continue;
        }
      }
      if (spec.bbox && !spec.bbox->contains(coord)) {
        ++report.rows_filtered;
        continue;
      }
      report.observations.push_back({coord, ts});
    } catch (const DataError &e) {
      if (!spec.lenient)
        throw;
      ++report.rows_skipped;
      report.skip_reasons.emplace_back(e.what());
    }
  }
  std::stable_sort(report.observations.begin(), report.observations.end(),
                   [](const Observation &a, const Observation &b) { return a.obs_time < b.obs_time; });
  return report;
}

void write_hotspots_csv(const ClusterResult &result, std::ostream &out) {
  const auto unit = to_string(result.settings.time.unit);
  out << "lon,lat,obsTime,timeID,membership,noise,distToIgnition,distToIgnitionUnit,timeFromIgnition,"
         "timeFromIgnitionUnit\n";
  for (const auto &h : result.hotspots)
    out << format_number(h.coord.lon) << ',' << format_number(h.coord.lat) << ',' << format_timestamp(h.obs_time)
        << ',' << h.time_id << ',' << h.membership << ',' << bool_text(h.noise) << ','
        << optional_number(h.dist_to_ignition) << ",m," << optional_number(h.time_from_ignition) << ',' << unit
        << '\n';
}

void write_ignitions_csv(const ClusterResult &result, std::ostream &out) {
  const auto unit = to_string(result.settings.time.unit);
  out << "membership,lon,lat,obsTime,timeID,obsInCluster,clusterTimeLen,clusterTimeLenUnit\n";
  for (const auto &ig : result.ignitions)
    out << ig.membership << ',' << format_number(ig.coord.lon) << ',' << format_number(ig.coord.lat) << ','
        << format_timestamp(ig.obs_time) << ',' << ig.time_id << ',' << ig.obs_in_cluster << ','
        << format_number(ig.cluster_time_len) << ',' << unit << '\n';
}

void write_timeline_csv(const ClusterResult &result, std::ostream &out) {
  out << "obsTime,membership,noise\n";
  for (const auto &h : result.hotspots)
    out << format_timestamp(h.obs_time) << ',' << h.membership << ',' << bool_text(h.noise) << '\n';
}

void write_fire_rows_csv(const ClusterResult &result, std::span<const FireRow> rows, std::ostream &out) {
  const auto unit = to_string(result.settings.time.unit);
  out << "lon,lat,obsTime,timeID,membership,noise,distToIgnition,distToIgnitionUnit,timeFromIgnition,"
         "timeFromIgnitionUnit,type,obsInCluster,clusterTimeLen,clusterTimeLenUnit\n";
  for (const auto &r : rows) {
    out << format_number(r.coord.lon) << ',' << format_number(r.coord.lat) << ',' << format_timestamp(r.obs_time)
        << ',' << r.time_id << ',' << r.membership << ',' << bool_text(r.noise) << ','
        << optional_number(r.dist_to_ignition) << ",m," << optional_number(r.time_from_ignition) << ',' << unit
        << ',' << to_string(r.type) << ',';
    if (r.obs_in_cluster)
      out << *r.obs_in_cluster;
    else
      out << "NA";
    out << ',' << optional_number(r.cluster_time_len) << ',' << unit << '\n';
  }
}

void write_paths_csv(std::span<const FirePath> paths, std::ostream &out) {
  out << "membership,step,blockStart,lon,lat,obsCount\n";
  for (const auto &p : paths)
    for (const auto &pt : p.points)
      out << p.membership << ',' << p.step << ',' << pt.block_start << ',' << format_number(pt.centroid.lon) << ','
          << format_number(pt.centroid.lat) << ',' << pt.obs_count << '\n';
}

void write_tuning_csv(std::span<const TuningRow> rows, std::ostream &out) {
  out << "activeTime,adjDist,noisePercent,clusterCount,error\n";
  for (const auto &r : rows) {
    out << r.active_time << ',' << format_number(r.adj_dist) << ',';
    if (r.ok())
      out << format_number(r.noise_percent) << ',' << r.cluster_count << ",\n";
    else
      out << "NA,NA," << csv_field(*r.error) << '\n';
  }
}

void write_observations_csv(std::span<const Observation> obs, std::span<const int> truth, std::ostream &out) {
  if (!truth.empty() && truth.size() != obs.size())
    throw InvariantError("truth labels do not cover the observations");
  out << (truth.empty() ? "lon,lat,obsTime\n" : "lon,lat,obsTime,truth\n");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    out << format_number(obs[i].coord.lon) << ',' << format_number(obs[i].coord.lat) << ','
        << format_timestamp(obs[i].obs_time);
    if (!truth.empty())
      out << ',' << truth[i];
    out << '\n';
  }
}

std::string settings_json(const ClusterConfig &cfg) {
  ordered_json j;
  j["activeTime"] = cfg.active_time;
  j["adjDist"] = cfg.adj_dist;
  j["minPts"] = cfg.min_pts;
  j["minTime"] = cfg.min_time;
  j["timeUnit"] = to_string(cfg.time.unit);
  j["timeStep"] = cfg.time.step;
  j["ignitionCenter"] = to_string(cfg.ignition_center);
  j["distance"] = geo::to_string(cfg.distance);
  return j.dump(2) + "\n";
}

std::string clusters_geojson(const ClusterResult &result) {
  ordered_json features = ordered_json::array();
  for (const auto &h : result.hotspots) {
    ordered_json props;
    props["type"] = h.noise ? "noise" : "hotspot";
    props["membership"] = h.membership;
    props["timeID"] = h.time_id;
    props["noise"] = h.noise;
    props["obsTime"] = format_timestamp(h.obs_time);
    features.push_back({{"type", "Feature"}, {"geometry", point(h.coord)}, {"properties", props}});
  }
  for (const auto &ig : result.ignitions) {
    ordered_json props;
    props["type"] = "ignition";
    props["membership"] = ig.membership;
    props["timeID"] = ig.time_id;
    props["noise"] = false;
    props["obsTime"] = format_timestamp(ig.obs_time);
    props["obsInCluster"] = ig.obs_in_cluster;
    props["clusterTimeLen"] = ig.cluster_time_len;
    features.push_back({{"type", "Feature"}, {"geometry", point(ig.coord)}, {"properties", props}});
  }
  ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = std::move(features);
  return fc.dump() + "\n";
}

std::string paths_geojson(std::span<const FirePath> paths) {
  ordered_json features = ordered_json::array();
  for (const auto &p : paths) {
    ordered_json geometry;
    if (p.points.size() == 1) {
      geometry = point(p.points.front().centroid);
    } else {
      ordered_json coords = ordered_json::array();
      for (const auto &pt : p.points)
        coords.push_back(ordered_json::array({pt.centroid.lon, pt.centroid.lat}));
      geometry = {{"type", "LineString"}, {"coordinates", coords}};
    }
    ordered_json blocks = ordered_json::array();
    for (const auto &pt : p.points)
      blocks.push_back(pt.block_start);
    ordered_json props;
    props["membership"] = p.membership;
    props["step"] = p.step;
    props["blockStart"] = blocks;
    features.push_back({{"type", "Feature"}, {"geometry", geometry}, {"properties", props}});
  }
  ordered_json fc;
  fc["type"] = "FeatureCollection";
  fc["features"] = std::move(features);
  return fc.dump() + "\n";
}

void write_file(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out)
    throw IoError("write failed: " + path.string());
}

std::vector<std::filesystem::path> write_outputs(const ClusterResult &result, const std::filesystem::path &out_dir,
                                                 const OutputOptions &options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  auto emit = [&](const char *name, const std::string &text) {
    const auto path = out_dir / name;
    write_file(path, text);
    written.push_back(path);
  };
  auto render = [&](auto writer) {
    std::ostringstream s;
    writer(result, s);
    return s.str();
  };

  emit("hotspots.csv", render(write_hotspots_csv));
  emit("ignitions.csv", render(write_ignitions_csv));
  emit("clusters.geojson", clusters_geojson(result));
  emit("timeline.csv", render(write_timeline_csv));
  emit("settings.json", settings_json(result.settings));
  if (options.movement_step) {
    std::vector<FirePath> paths;
    for (const auto &ig : result.ignitions)
      paths.push_back(fire_movement(result, ig.membership, *options.movement_step));
    emit("paths.geojson", paths_geojson(paths));
  }
  return written;
}

} // namespace firecluster::io
