#include "firecluster/cli.hpp"

#include "firecluster/error.hpp"
#include "firecluster/io.hpp"
#include "firecluster/pipeline.hpp"
#include "firecluster/results.hpp"
#include "firecluster/synth.hpp"
#include "firecluster/tuning.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace firecluster {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  io::IngestSpec ingest;
  std::optional<double> irradiance_min;
  std::string bbox;
  ClusterConfig cfg;
  std::string time_unit = "h";
  std::string distance = "geodesic";
  std::string out;
  unsigned threads = 0;

  // cluster
  std::optional<int> movement_step;
  // extract
  std::vector<int> clusters;
  bool include_noise = true;
  // movement
  int cluster = 1;
  int step = 1;
  std::string geojson;
  // tune
  std::vector<int> active_times;
  std::vector<double> adj_dists;
  // simulate
  int fires = 3;
  double spacing_km = 50;
  double lon = 145.0;
  double lat = -37.0;
  int duration = 48;
  int stagger = 0;
  int detections = 2;
  double spread_rate = 2500;
  std::size_t noise = 0;
  std::uint64_t seed = 1;
  bool truth = false;
};

void add_ingest_options(CLI::App &cmd, Options &o) {
  cmd.add_option("input", o.input, "Hotspot CSV with a header row")->required();
  cmd.add_option("--lon-col", o.ingest.lon_column, "Longitude column");
  cmd.add_option("--lat-col", o.ingest.lat_column, "Latitude column");
  cmd.add_option("--time-col", o.ingest.time_column, "Observation time column");
  cmd.add_option("--irradiance-col", o.ingest.irradiance_column, "Irradiance column (with --irradiance-min)");
  cmd.add_option("--irradiance-min", o.irradiance_min, "Keep rows with irradiance above this (W/m^2)");
  cmd.add_option("--bbox", o.bbox, "Keep rows inside lonMin,latMin,lonMax,latMax");
  cmd.add_flag("--lenient", o.ingest.lenient, "Skip malformed rows instead of failing");
}

void add_cluster_options(CLI::App &cmd, Options &o, bool grid_params) {
  if (grid_params) {
    cmd.add_option("--active-time", o.cfg.active_time, "Indices a fire may stay undetected");
    cmd.add_option("--adj-dist", o.cfg.adj_dist, "Distance in meters joining two hotspots");
  }
  cmd.add_option("--min-pts", o.cfg.min_pts, "Minimum hotspots for a fire");
  cmd.add_option("--min-time", o.cfg.min_time, "Minimum duration for a fire, in the time unit");
  cmd.add_option("--time-unit", o.time_unit, "Time unit: s, min, h or d");
  cmd.add_option("--time-step", o.cfg.time.step, "Time units per index");
  cmd.add_option("--distance", o.distance, "Distance: geodesic or haversine");
}

void finish_options(Options &o) {
  o.ingest.path = o.input;
  o.ingest.irradiance_min = o.irradiance_min;
  if (!o.bbox.empty())
    o.ingest.bbox = io::parse_bbox(o.bbox);
  o.cfg.time.unit = parse_time_unit(o.time_unit);
  o.cfg.distance = geo::parse_distance_method(o.distance);
  o.cfg.validate();
}

std::vector<Observation> load(const Options &o, std::ostream &err) {
  auto report = io::ingest(o.ingest);
  err << "read " << report.rows_read << " rows";
  if (report.rows_filtered)
    err << ", " << report.rows_filtered << " filtered";
  if (report.rows_skipped)
    err << ", " << report.rows_skipped << " skipped";
  err << '\n';
  for (std::size_t i = 0; i < report.skip_reasons.size() && i < 5; ++i)
    err << "  skipped: " << report.skip_reasons[i] << '\n';
  return std::move(report.observations);
}

ClusterResult run(const Options &o, std::ostream &err) {
  const auto obs = load(o, err);
  const auto started = std::chrono::steady_clock::now();
  auto result = hotspot_cluster(obs, o.cfg);
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - started;
  err << result.cluster_count() << " clusters | " << result.hotspots.size()
      << " hot spots (including noise points)\n"
      << result.noise_count() << " noise points\n"
      << "clustered in " << std::fixed << std::setprecision(2) << took.count() << " s\n";
  err.unsetf(std::ios::floatfield);
  return result;
}

// Writes to `path`, or to `out` when the path is empty or "-".
template <class Fn> void emit(const std::string &path, std::ostream &out, Fn &&fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ostringstream s;
  fn(s);
  io::write_file(path, s.str());
}

void print_distribution(std::ostream &out, const char *name, const std::optional<Distribution> &d) {
  out << std::left << std::setw(20) << name;
  if (!d) {
    out << "NA\n";
    return;
  }
  for (double v : {d->min, d->q1, d->median, d->mean, d->q3, d->max})
    out << std::right << std::setw(12) << io::format_number(std::round(v * 1000) / 1000);
  out << '\n';
}

void print_summary(std::ostream &out, const Summary &s) {
  out << "CLUSTERS:      " << s.cluster_count << '\n'
      << "OBSERVATIONS:  " << s.hotspot_count << '\n'
      << "NOISE:         " << s.noise_count << "\n\n";
  out << std::left << std::setw(20) << "";
  for (const char *h : {"Min.", "1st Qu.", "Median", "Mean", "3rd Qu.", "Max."})
    out << std::right << std::setw(12) << h;
  out << '\n';
  const std::string unit(to_string(s.unit));
  print_distribution(out, "obsInCluster", s.obs_in_cluster);
  print_distribution(out, ("clusterTimeLen " + unit).c_str(), s.cluster_time_len);
  print_distribution(out, "distToIgnition m", s.dist_to_ignition);
  print_distribution(out, ("timeFromIgn. " + unit).c_str(), s.time_from_ignition);
}

unsigned env_threads() {
  const char *v = std::getenv("FIRECLUSTER_THREADS");
  if (!v || !*v)
    return 0;
  char *end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0)
    throw UsageError("FIRECLUSTER_THREADS must be a non-negative integer");
  return static_cast<unsigned>(n);
}

synth::FireScenario scenario_from(const Options &o) {
  if (o.fires < 1)
    throw UsageError("--fires must be positive");
  synth::FireScenario s;
  s.seed = o.seed;
  s.detections_per_index = o.detections;
  s.spread_rate = o.spread_rate;
  s.noise_points = o.noise;
  s.active_time = o.cfg.active_time;
  s.time = o.cfg.time;
  const double dlon = o.spacing_km * 1000 / (111320.0 * std::cos(o.lat * std::numbers::pi / 180));
  for (int i = 0; i < o.fires; ++i)
    s.ignitions.push_back({{o.lon + i * dlon, o.lat}, 1 + i * o.stagger, o.duration, std::nullopt});
  return s;
}

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  Options o;
  CLI::App app{"Spatiotemporal clustering of satellite fire hotspots"};
  app.name("firecluster");
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads for parameter scans (0 = all cores; env FIRECLUSTER_THREADS)");

  auto *cluster = app.add_subcommand("cluster", "Cluster hotspots and write result files");
  add_ingest_options(*cluster, o);
  add_cluster_options(*cluster, o, true);
  cluster->add_option("--out", o.out, "Output directory")->required();
  cluster->add_option("--movement-step", o.movement_step, "Also write paths.geojson with this block size");

  auto *extract = app.add_subcommand("extract", "Flat hotspot and ignition table as CSV");
  add_ingest_options(*extract, o);
  add_cluster_options(*extract, o, true);
  extract->add_option("--clusters", o.clusters, "Cluster ids to keep (default all)")->delimiter(',');
  extract->add_option("--include-noise", o.include_noise, "Append noise rows (true/false)");
  extract->add_option("--out", o.out, "Output file (default stdout)");

  auto *summary = app.add_subcommand("summary", "Print cluster statistics");
  add_ingest_options(*summary, o);
  add_cluster_options(*summary, o, true);

  auto *movement = app.add_subcommand("movement", "Centroid path of one cluster as CSV");
  add_ingest_options(*movement, o);
  add_cluster_options(*movement, o, true);
  movement->add_option("--cluster", o.cluster, "Cluster id")->required();
  movement->add_option("--step", o.step, "Time indices per block");
  movement->add_option("--out", o.out, "Output CSV (default stdout)");
  movement->add_option("--geojson", o.geojson, "Also write the path as GeoJSON");

  auto *tune = app.add_subcommand("tune", "Noise percentage over an activeTime x adjDist grid as CSV");
  add_ingest_options(*tune, o);
  add_cluster_options(*tune, o, false);
  tune->add_option("--active-times", o.active_times, "Ascending activeTime values")->delimiter(',')->required();
  tune->add_option("--adj-dists", o.adj_dists, "Ascending adjDist values in meters")->delimiter(',')->required();
  tune->add_option("--out", o.out, "Output CSV (default stdout)");

  auto *simulate = app.add_subcommand("simulate", "Synthetic hotspots with known fires as CSV");
  simulate->add_option("--fires", o.fires, "Number of fires, spaced west to east");
  simulate->add_option("--spacing-km", o.spacing_km, "Distance between ignitions");
  simulate->add_option("--lon", o.lon, "Longitude of the first ignition");
  simulate->add_option("--lat", o.lat, "Latitude of the ignitions");
  simulate->add_option("--duration", o.duration, "Indices each fire burns");
  simulate->add_option("--stagger", o.stagger, "Start offset between successive fires, in indices");
  simulate->add_option("--detections", o.detections, "Detections per fire per index");
  simulate->add_option("--spread-rate", o.spread_rate, "Meters a fire may spread per index");
  simulate->add_option("--noise", o.noise, "Isolated spurious detections");
  simulate->add_option("--seed", o.seed, "Random seed");
  simulate->add_option("--active-time", o.cfg.active_time, "Dormancy tolerance used for the truth column");
  simulate->add_option("--time-unit", o.time_unit, "Time unit: s, min, h or d");
  simulate->add_option("--time-step", o.cfg.time.step, "Time units per index");
  simulate->add_flag("--truth", o.truth, "Add the ground-truth column");
  simulate->add_option("--out", o.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.get_option("--threads")->count() == 0)
      o.threads = env_threads();

    if (*simulate) {
      o.cfg.time.unit = parse_time_unit(o.time_unit);
      const auto data = synth::generate(scenario_from(o));
      emit(o.out, out, [&](std::ostream &s) {
        io::write_observations_csv(data.observations, o.truth ? std::span<const int>(data.truth) : std::span<const int>{},
                                   s);
      });
      err << data.observations.size() << " hotspots from " << data.segment_count << " fires\n";
      return 0;
    }

    finish_options(o);

    if (*tune) {
      TuningGrid grid{o.active_times, o.adj_dists, o.cfg};
      grid.validate();
      const auto obs = load(o, err);
      const auto rows = noise_scan(obs, grid, o.threads);
      emit(o.out, out, [&](std::ostream &s) { io::write_tuning_csv(rows, s); });
      for (auto axis : {TuningAxis::adj_dist, TuningAxis::active_time})
        for (const auto &h : largest_drops(rows, axis))
          err << "largest drop along " << (axis == TuningAxis::adj_dist ? "adjDist" : "activeTime") << " at "
              << (axis == TuningAxis::adj_dist ? "activeTime " : "adjDist ") << io::format_number(h.fixed_value)
              << ": " << io::format_number(h.chosen_value) << " (drop of " << io::format_number(h.drop) << " points)\n";
      for (const auto &r : rows)
        if (!r.ok())
          err << "cell activeTime " << r.active_time << ", adjDist " << io::format_number(r.adj_dist)
              << " failed: " << *r.error << '\n';
      return 0;
    }

    if (*movement && o.step < 1)
      throw UsageError("--step must be a positive integer");

    const ClusterResult result = run(o, err);

    if (*cluster) {
      if (o.movement_step && *o.movement_step < 1)
        throw UsageError("--movement-step must be a positive integer");
      const auto files = io::write_outputs(result, o.out, {o.movement_step});
      for (const auto &f : files)
        err << "wrote " << f.string() << '\n';
    } else if (*extract) {
      const auto rows = extract_fire(result, o.clusters, o.include_noise);
      emit(o.out, out, [&](std::ostream &s) { io::write_fire_rows_csv(result, rows, s); });
    } else if (*summary) {
      print_summary(out, summarize(result));
    } else if (*movement) {
      const FirePath path = fire_movement(result, o.cluster, o.step);
      emit(o.out, out, [&](std::ostream &s) { io::write_paths_csv(std::span(&path, 1), s); });
      if (!o.geojson.empty())
        io::write_file(o.geojson, io::paths_geojson(std::span(&path, 1)));
    }
    return 0;
  } catch (const UsageError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace firecluster
