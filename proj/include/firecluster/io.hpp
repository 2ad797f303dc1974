#pragma once

#include "firecluster/config.hpp"
#include "firecluster/pipeline.hpp"
#include "firecluster/results.hpp"
#include "firecluster/tuning.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace firecluster::io {

// RFC 4180 record reader: quoted fields, doubled quotes, embedded line
// breaks, CRLF or LF endings. A UTF-8 BOM before the header is dropped.
class CsvReader {
public:
  explicit CsvReader(std::istream &in) : in_(in) {}

  // False at end of input. Throws DataError on an unterminated quote.
  bool next(std::vector<std::string> &fields);
  // Line on which the last returned record started (1-based).
  std::size_t line() const noexcept { return record_line_; }

private:
  std::istream &in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

std::string csv_field(std::string_view text);
// Shortest representation that reads back to the same double.
std::string format_number(double value);

struct BBox {
  double lon_min = -180;
  double lat_min = -90;
  double lon_max = 180;
  double lat_max = 90;

  bool contains(const geo::Coordinate &c) const noexcept {
    return c.lon >= lon_min && c.lon <= lon_max && c.lat >= lat_min && c.lat <= lat_max;
  }
};

// "lonMin,latMin,lonMax,latMax". Throws ConfigError.
BBox parse_bbox(std::string_view text);

struct IngestSpec {
  std::filesystem::path path;
  std::string lon_column = "lon";
  std::string lat_column = "lat";
  std::string time_column = "obsTime";
  std::string irradiance_column = "irradiance"; // read only when irradiance_min is set
  std::optional<double> irradiance_min;         // keep rows strictly above, W/m^2
  std::optional<BBox> bbox;                     // inclusive
  bool lenient = false;                         // skip bad rows instead of failing
};

struct IngestReport {
  std::vector<Observation> observations; // stable-sorted by obs_time
  std::size_t rows_read = 0;
  std::size_t rows_filtered = 0;
  std::size_t rows_skipped = 0;
  std::vector<std::string> skip_reasons;
};

/// Reads hotspots from CSV. Missing columns raise ConfigError; malformed
/// values raise DataError with the line number unless `lenient` is set, in
/// which case the row is skipped and counted.
IngestReport ingest(const IngestSpec &spec);
IngestReport ingest(std::istream &in, const IngestSpec &spec);

void write_hotspots_csv(const ClusterResult &result, std::ostream &out);
void write_ignitions_csv(const ClusterResult &result, std::ostream &out);
void write_timeline_csv(const ClusterResult &result, std::ostream &out);
void write_fire_rows_csv(const ClusterResult &result, std::span<const FireRow> rows, std::ostream &out);
void write_paths_csv(std::span<const FirePath> paths, std::ostream &out);
void write_tuning_csv(std::span<const TuningRow> rows, std::ostream &out);
// Same schema ingest() reads; `truth` may be empty.
void write_observations_csv(std::span<const Observation> obs, std::span<const int> truth, std::ostream &out);

std::string settings_json(const ClusterConfig &cfg);
std::string clusters_geojson(const ClusterResult &result);
std::string paths_geojson(std::span<const FirePath> paths);

struct OutputOptions {
  std::optional<int> movement_step; // also write paths.geojson when set
};

/// Writes hotspots.csv, ignitions.csv, clusters.geojson, timeline.csv and
/// settings.json (plus paths.geojson on request) into `out_dir`, creating it
/// if needed. Returns the written paths. Throws IoError.
std::vector<std::filesystem::path> write_outputs(const ClusterResult &result, const std::filesystem::path &out_dir,
                                                 const OutputOptions &options = {});

// Writes `text` to `path`, throwing IoError with the path on failure.
void write_file(const std::filesystem::path &path, std::string_view text);

} // namespace firecluster::io
