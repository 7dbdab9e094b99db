#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ktz/initcond.hpp"
#include "ktz/integrator.hpp"
#include "ktz/stack.hpp"

namespace ktz {

struct OutputConfig {
  std::string dir;         // empty: caller decides
  bool snapshots = true;   // write snap_NNNNNN.ktz
  bool ppm = false;        // write amplitude and s_dot rasters per snapshot
  bool report = true;      // write report.txt for the last snapshot
};

/// Everything a run, stack or classify command needs.
///
/// File syntax is INI-like: `[section]` headers, `key = value` lines, `#`
/// comments, and repeated `[[layer]]` blocks for the stack. Unknown sections
/// and keys are rejected. Only grid.n, params.q and params.alpha1 are
/// required.
struct Config {
  GridSpec grid;
  Params params;
  RunConfig run;
  SpiralSpec spiral;
  std::optional<double> a2;  // independent A2 for the classify check
  std::vector<LayerProfile> layers;
  OutputConfig output;
};

/// Throws Error(Config) with the offending line number.
Config parse_config(std::string_view text);
/// Throws Error(Io) if the file cannot be read.
Config load_config(const std::string& path);

}  // namespace ktz
