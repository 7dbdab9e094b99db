#pragma once

#include <string>
#include <vector>

#include "ktz/config.hpp"

namespace ktz {

struct RunSummary {
  RunStatus status = RunStatus::Completed;
  double t_blow = 0.0;
  std::size_t snapshots = 0;
};

/// Simulates one layer and writes snap_NNNNNN.ktz, series.csv, report.txt
/// and, when enabled, amp_/sdot_NNNNNN.ppm into out_dir.
RunSummary run_command(const Config& cfg, const std::string& out_dir);

/// One layer_XX directory per layer with the same files as a run, plus
/// column.txt at the top.
ColumnReport stack_command(const Config& cfg, const std::string& out_dir);

std::string classify_command(const Config& cfg);

/// Recomputes report_NNNNNN.txt for every snapshot in in_dir and returns the
/// report of the latest one. Byte-identical to what run wrote.
std::string analyze_command(const Config& cfg, const std::string& in_dir,
                            const std::string& out_dir);

/// Writes amp_/sdot_NNNNNN.ppm for every snapshot; returns the image count.
std::size_t render_command(const Config& cfg, const std::string& in_dir,
                           const std::string& out_dir);

/// Snapshot paths in a directory, sorted by name.
std::vector<std::string> list_snapshots(const std::string& dir);

}  // namespace ktz
