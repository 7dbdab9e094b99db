#include "ktz/app.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "ktz/error.hpp"
#include "ktz/io.hpp"
#include "ktz/regime.hpp"

namespace fs = std::filesystem;

namespace ktz {

namespace {

void make_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir + "': " + ec.message());
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

// snap_000012.ktz -> 12
std::size_t snapshot_index(const std::string& path) {
  const std::string stem = fs::path(path).stem().string();
  return static_cast<std::size_t>(std::stoull(stem.substr(5)));
}

std::string report_for(const VelocityField& field, const Params& params,
                       double zone_floor) {
  const auto reports = analyze_morphology(field, params, zone_floor);
  return format_report(reports, field.time);
}

void write_rasters(const std::string& dir, std::size_t index,
                   const VelocityField& field, const Params& params) {
  write_text(join(dir, numbered("amp_", index, ".ppm")), render_amplitude_ppm(field));
  write_text(join(dir, numbered("sdot_", index, ".ppm")),
             render_sdot_ppm(entropy_fields(field, params)));
}

void write_outcome(const std::string& dir, const RunOutcome& outcome,
                   const Params& params, const Config& cfg) {
  make_dir(dir);
  for (std::size_t k = 0; k < outcome.snapshots.size(); ++k) {
    const VelocityField& s = outcome.snapshots[k];
    if (cfg.output.snapshots) write_snapshot(join(dir, numbered("snap_", k, ".ktz")), s);
    if (cfg.output.ppm && s.all_finite()) write_rasters(dir, k, s, params);
  }
  write_text(join(dir, "series.csv"), format_series_csv(outcome.series));
  const VelocityField& last = outcome.snapshots.back();
  // a blown-up or diverged end state has no structure worth measuring
  if (cfg.output.report && outcome.status == RunStatus::Completed) {
    write_text(join(dir, "report.txt"), report_for(last, params, cfg.run.zone_floor));
  }
}

}  // namespace

std::vector<std::string> list_snapshots(const std::string& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot list '" + dir + "': " + ec.message());
  std::vector<std::string> out;
  for (const auto& e : it) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() == 15 && name.starts_with("snap_") &&
        name.ends_with(".ktz") &&
        std::all_of(name.begin() + 5, name.begin() + 11,
                    [](char c) { return c >= '0' && c <= '9'; })) {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunSummary run_command(const Config& cfg, const std::string& out_dir) {
  const VelocityField init =
      make_spiral(cfg.grid, with_defaults(cfg.spiral, cfg.params, cfg.grid));
  const RunOutcome outcome = run(init, cfg.params, cfg.run);
  write_outcome(out_dir, outcome, cfg.params, cfg);
  return {outcome.status, outcome.t_blow, outcome.snapshots.size()};
}

ColumnReport stack_command(const Config& cfg, const std::string& out_dir) {
  if (cfg.layers.empty()) {
    throw Error(ErrorCode::Config, "stack needs a [stack] section or [[layer]] blocks");
  }
  ColumnReport column =
      run_stack(cfg.grid, cfg.params, cfg.run, cfg.layers, cfg.spiral);
  make_dir(out_dir);
  for (std::size_t k = 0; k < column.per_layer.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "layer_%02zu", k);
    const LayerResult& l = column.per_layer[k];
    write_outcome(join(out_dir, name), l.outcome, l.params, cfg);
  }
  write_text(join(out_dir, "column.txt"), format_column(column));
  return column;
}

std::string classify_command(const Config& cfg) {
  return format_regime(classify(cfg.params, cfg.spiral.m, cfg.a2), cfg.spiral.m);
}

std::string analyze_command(const Config& cfg, const std::string& in_dir,
                            const std::string& out_dir) {
  const auto snaps = list_snapshots(in_dir);
  if (snaps.empty()) throw Error(ErrorCode::Io, "no snapshots in '" + in_dir + "'");
  make_dir(out_dir);
  std::string latest;
  for (const std::string& path : snaps) {
    const VelocityField f = read_snapshot(path);
    if (!(f.grid == cfg.grid)) {
      throw Error(ErrorCode::Config, "snapshot grid does not match the config: " + path);
    }
    latest = report_for(f, cfg.params, cfg.run.zone_floor);
    write_text(join(out_dir, numbered("report_", snapshot_index(path), ".txt")), latest);
  }
  return latest;
}

std::size_t render_command(const Config& cfg, const std::string& in_dir,
                           const std::string& out_dir) {
  const auto snaps = list_snapshots(in_dir);
  if (snaps.empty()) throw Error(ErrorCode::Io, "no snapshots in '" + in_dir + "'");
  make_dir(out_dir);
  std::size_t images = 0;
  for (const std::string& path : snaps) {
    const VelocityField f = read_snapshot(path);
    if (!(f.grid == cfg.grid)) {
      throw Error(ErrorCode::Config, "snapshot grid does not match the config: " + path);
    }
    write_rasters(out_dir, snapshot_index(path), f, cfg.params);
    images += 2;
  }
  return images;
}

}  // namespace ktz
