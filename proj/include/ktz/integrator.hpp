#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ktz/cgl.hpp"

namespace ktz {

struct RunConfig {
  std::optional<double> dt;  // empty means auto
  double t_end = 10.0;
  double snapshot_every = 1.0;
  std::optional<double> blowup_threshold;  // empty means default
  std::uint64_t seed = 0;
  int threads = 1;
  /// Cells count towards the self-organization zone only when
  /// s_dot < -zone_floor * entropy_scale(params).
  double zone_floor = 1e-6;
};

/// 0.2 dx^2 / (4 nu1 sqrt(1 + c1^2)).
double auto_dt(const GridSpec& grid, const Params& params);

/// 1e3 * sqrt(q/alpha1) when q > 0 and alpha1 > 0, else 1e3, unless overridden.
double blowup_threshold(const Params& params, const RunConfig& cfg);

/// One classical RK4 step. Throws StepUnstable if the result is not finite,
/// InvalidArgument if dt is non-positive or above 1.5x the auto value.
VelocityField step(const VelocityField& field, const CglOperator& op, double dt);
VelocityField step(const VelocityField& field, const Params& params, double dt);

enum class RunStatus { Completed, BlowUp, Diverged };
const char* to_string(RunStatus status);

struct DiagnosticSample {
  double t = 0.0;
  double max_amp = 0.0;
  double zone_area_m2 = 0.0;
  double zone_diameter_m = 0.0;
  double s_dot_total = 0.0;
};

struct RunOutcome {
  RunStatus status = RunStatus::Completed;
  double t_blow = 0.0;   // BlowUp only
  double max_amp = 0.0;  // max |Phi| of the last snapshot
  std::vector<VelocityField> snapshots;
  std::vector<DiagnosticSample> series;
};

/// Integrates from initial.time to cfg.t_end. Steps are shortened to land on
/// snapshot times exactly. A non-finite step halves dt and retries; once dt
/// would drop below auto/64 the run ends as Diverged. Reaching the blow-up
/// threshold ends it as BlowUp with that state as the last snapshot.
RunOutcome run(const VelocityField& initial, const Params& params,
               const RunConfig& cfg);

DiagnosticSample diagnose(const VelocityField& field, const Params& params,
                          double zone_floor);

}  // namespace ktz
