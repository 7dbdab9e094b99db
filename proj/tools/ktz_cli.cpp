// Command-line front end. Talks to the model only through the C API.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "ktz/ktz.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitSolver = 3;

struct Options {
  std::string config;
  std::string out_dir;
  std::string in_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<double> snapshot_every;
};

int fail(ktz_status st) {
  std::fprintf(stderr, "ktz: %s: %s\n", ktz_status_name(st), ktz_last_error_message());
  return st == KTZ_ERR_SOLVER_FAIL ? kExitSolver : kExitInput;
}

struct ConfigHandle {
  ktz_config* ptr = nullptr;
  ~ConfigHandle() { ktz_config_free(ptr); }
};

struct Text {
  char* ptr = nullptr;
  ~Text() { ktz_string_free(ptr); }
};

ktz_status load(const Options& o, ConfigHandle& h) {
  ktz_status st = ktz_config_load(o.config.c_str(), &h.ptr);
  if (st == KTZ_OK && o.seed) st = ktz_config_set_seed(h.ptr, *o.seed);
  if (st == KTZ_OK && o.threads) st = ktz_config_set_threads(h.ptr, *o.threads);
  if (st == KTZ_OK && o.snapshot_every) {
    st = ktz_config_set_snapshot_every(h.ptr, *o.snapshot_every);
  }
  return st;
}

// --out-dir, then KTZ_OUT_DIR, then [output] dir, then ./ktz_out
std::string out_dir(const Options& o, const ktz_config* cfg) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("KTZ_OUT_DIR"); env && *env) return env;
  if (const char* dir = ktz_config_output_dir(cfg)) return dir;
  return "ktz_out";
}

int cmd_run(const Options& o) {
  ConfigHandle h;
  if (auto st = load(o, h); st != KTZ_OK) return fail(st);
  ktz_run_status rs = KTZ_RUN_COMPLETED;
  const std::string dir = out_dir(o, h.ptr);
  if (auto st = ktz_run(h.ptr, dir.c_str(), &rs); st != KTZ_OK) return fail(st);
  std::printf("status %s\n", ktz_run_status_name(rs));
  if (rs == KTZ_RUN_DIVERGED) {
    std::fprintf(stderr, "ktz: run diverged\n");
    return kExitDiverged;
  }
  return kExitOk;
}

int cmd_stack(const Options& o) {
  ConfigHandle h;
  if (auto st = load(o, h); st != KTZ_OK) return fail(st);
  size_t diverged = 0;
  Text column;
  const std::string dir = out_dir(o, h.ptr);
  if (auto st = ktz_stack(h.ptr, dir.c_str(), &diverged, &column.ptr); st != KTZ_OK) {
    return fail(st);
  }
  std::fputs(column.ptr, stdout);
  if (diverged > 0) {
    std::fprintf(stderr, "ktz: %zu layer(s) diverged\n", diverged);
    return kExitDiverged;
  }
  return kExitOk;
}

int cmd_classify(const Options& o) {
  ConfigHandle h;
  if (auto st = load(o, h); st != KTZ_OK) return fail(st);
  Text text;
  if (auto st = ktz_classify(h.ptr, &text.ptr); st != KTZ_OK) return fail(st);
  std::fputs(text.ptr, stdout);
  return kExitOk;
}

int cmd_analyze(const Options& o) {
  ConfigHandle h;
  if (auto st = load(o, h); st != KTZ_OK) return fail(st);
  const std::string dir = out_dir(o, h.ptr);
  const std::string in = o.in_dir.empty() ? dir : o.in_dir;
  Text report;
  if (auto st = ktz_analyze(h.ptr, in.c_str(), dir.c_str(), &report.ptr); st != KTZ_OK) {
    return fail(st);
  }
  std::fputs(report.ptr, stdout);
  return kExitOk;
}

int cmd_render(const Options& o) {
  ConfigHandle h;
  if (auto st = load(o, h); st != KTZ_OK) return fail(st);
  const std::string dir = out_dir(o, h.ptr);
  const std::string in = o.in_dir.empty() ? dir : o.in_dir;
  size_t images = 0;
  if (auto st = ktz_render(h.ptr, in.c_str(), dir.c_str(), &images); st != KTZ_OK) {
    return fail(st);
  }
  std::printf("images %zu\n", images);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layered vortex model driven by the complex Ginzburg-Landau equation"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool reads_snapshots) {
    sub->add_option("--config", o.config, "Configuration file")->required();
    sub->add_option("--out-dir", o.out_dir, "Output directory (default $KTZ_OUT_DIR)");
    sub->add_option("--seed", o.seed, "Override the random seed");
    sub->add_option("--threads", o.threads, "Worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);
    sub->add_option("--snapshot-every", o.snapshot_every, "Snapshot interval")
        ->check(CLI::PositiveNumber);
    if (reads_snapshots) {
      sub->add_option("--in-dir", o.in_dir, "Snapshot directory (default: out dir)");
    }
  };

  auto* run = app.add_subcommand("run", "Simulate one layer");
  auto* stack = app.add_subcommand("stack", "Simulate the layer stack");
  auto* classify = app.add_subcommand("classify", "Predict the regime without simulating");
  auto* analyze = app.add_subcommand("analyze", "Recompute reports from snapshots");
  auto* render = app.add_subcommand("render", "Write PPM images of snapshots");
  common(run, false);
  common(stack, false);
  common(classify, false);
  common(analyze, true);
  common(render, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  if (run->parsed()) return cmd_run(o);
  if (stack->parsed()) return cmd_stack(o);
  if (classify->parsed()) return cmd_classify(o);
  if (analyze->parsed()) return cmd_analyze(o);
  return cmd_render(o);
}
