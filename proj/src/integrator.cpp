#include "ktz/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ktz/error.hpp"
#include "ktz/thermo.hpp"

namespace ktz {

namespace {

constexpr double kAutoSafety = 0.2;
constexpr double kMaxDtOverAuto = 1.5;
constexpr double kMinDtFraction = 1.0 / 64.0;

struct Rk4Workspace {
  std::vector<double> k1r, k1i, k2r, k2i, k3r, k3i, k4r, k4i, tr, ti;

  explicit Rk4Workspace(std::size_t cells)
      : k1r(cells), k1i(cells), k2r(cells), k2i(cells), k3r(cells),
        k3i(cells), k4r(cells), k4i(cells), tr(cells), ti(cells) {}
};

bool finite(const VelocityField& f) { return f.all_finite(); }

double max_amp_sq(const VelocityField& f) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.re.size(); ++k) {
    m = std::max(m, f.re[k] * f.re[k] + f.im[k] * f.im[k]);
  }
  return m;
}

VelocityField rk4(const VelocityField& f, const CglOperator& op, double h,
                  Rk4Workspace& w) {
  const std::size_t n = f.re.size();
  op.apply(f.re, f.im, w.k1r, w.k1i);
  for (std::size_t k = 0; k < n; ++k) {
    w.tr[k] = f.re[k] + 0.5 * h * w.k1r[k];
    w.ti[k] = f.im[k] + 0.5 * h * w.k1i[k];
  }
  op.apply(w.tr, w.ti, w.k2r, w.k2i);
  for (std::size_t k = 0; k < n; ++k) {
    w.tr[k] = f.re[k] + 0.5 * h * w.k2r[k];
    w.ti[k] = f.im[k] + 0.5 * h * w.k2i[k];
  }
  op.apply(w.tr, w.ti, w.k3r, w.k3i);
  for (std::size_t k = 0; k < n; ++k) {
    w.tr[k] = f.re[k] + h * w.k3r[k];
    w.ti[k] = f.im[k] + h * w.k3i[k];
  }
  op.apply(w.tr, w.ti, w.k4r, w.k4i);

  VelocityField out;
  out.grid = f.grid;
  out.re.resize(n);
  out.im.resize(n);
  const double h6 = h / 6.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.re[k] = f.re[k] +
                h6 * (w.k1r[k] + 2.0 * w.k2r[k] + 2.0 * w.k3r[k] + w.k4r[k]);
    out.im[k] = f.im[k] +
                h6 * (w.k1i[k] + 2.0 * w.k2i[k] + 2.0 * w.k3i[k] + w.k4i[k]);
  }
  out.time = f.time + h;
  return out;
}

void check_dt(double dt, const CglOperator& op) {
  const double limit = kMaxDtOverAuto * auto_dt(op.grid(), op.params());
  if (!(dt > 0.0) || dt > limit) {
    std::ostringstream msg;
    msg << "dt " << dt << " outside (0, " << limit << "]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

double auto_dt(const GridSpec& grid, const Params& params) {
  const double dx = grid.dx();
  return kAutoSafety * dx * dx /
         (4.0 * params.nu1 * std::sqrt(1.0 + params.c1 * params.c1));
}

double blowup_threshold(const Params& params, const RunConfig& cfg) {
  if (cfg.blowup_threshold) return *cfg.blowup_threshold;
  if (params.q > 0.0 && params.alpha1 > 0.0) {
    return 1e3 * std::sqrt(params.q / params.alpha1);
  }
  return 1e3;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "Completed";
    case RunStatus::BlowUp: return "BlowUp";
    case RunStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

VelocityField step(const VelocityField& field, const CglOperator& op, double dt) {
  check_dt(dt, op);
  Rk4Workspace w(field.re.size());
  VelocityField out = rk4(field, op, dt, w);
  if (!finite(out)) {
    throw Error(ErrorCode::StepUnstable, "non-finite value after RK4 step");
  }
  return out;
}

VelocityField step(const VelocityField& field, const Params& params, double dt) {
  return step(field, CglOperator(field.grid, params), dt);
}

DiagnosticSample diagnose(const VelocityField& field, const Params& params,
                          double zone_floor) {
  DiagnosticSample d;
  d.t = field.time;
  d.max_amp = field.max_amplitude();
  const EntropyFields ef = entropy_fields(field, params);
  d.s_dot_total = s_dot_total(ef);
  try {
    const Zone z = zone_boundary(ef, zone_floor * entropy_scale(params));
    d.zone_area_m2 = z.area_m2;
    d.zone_diameter_m = z.diameter_m;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyZone) throw;
  }
  return d;
}

RunOutcome run(const VelocityField& initial, const Params& params,
               const RunConfig& cfg) {
  const CglOperator op(initial.grid, params, cfg.threads);
  if (initial.re.size() != initial.grid.cells() ||
      initial.im.size() != initial.grid.cells()) {
    throw Error(ErrorCode::InvalidArgument, "field size does not match grid");
  }
  if (!(cfg.snapshot_every > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "snapshot_every must be positive");
  }
  const double dt_auto = auto_dt(initial.grid, params);
  double dt = cfg.dt.value_or(std::min(dt_auto, cfg.snapshot_every));
  check_dt(dt, op);
  if (cfg.snapshot_every < dt) {
    throw Error(ErrorCode::InvalidArgument, "snapshot_every must be >= dt");
  }
  const double dt_floor = dt_auto * kMinDtFraction;
  const double threshold = blowup_threshold(params, cfg);
  const double threshold_sq = threshold * threshold;

  RunOutcome out;
  auto record = [&](const VelocityField& f) {
    out.snapshots.push_back(f);
    out.series.push_back(diagnose(f, params, cfg.zone_floor));
  };

  VelocityField state = initial;
  if (!finite(state)) {
    out.status = RunStatus::Diverged;
    out.snapshots.push_back(state);
    return out;
  }
  record(state);
  if (max_amp_sq(state) >= threshold_sq) {
    out.status = RunStatus::BlowUp;
    out.t_blow = state.time;
    out.max_amp = state.max_amplitude();
    return out;
  }

  const double t0 = initial.time;
  const double t_end = cfg.t_end;
  long snap_index = 1;
  Rk4Workspace w(state.re.size());

  while (state.time < t_end) {
    const double next_snap = t0 + snap_index * cfg.snapshot_every;
    const double target = std::min(next_snap, t_end);
    const double h = std::min(dt, target - state.time);
    VelocityField next = rk4(state, op, h, w);
    if (!finite(next)) {
      dt *= 0.5;
      if (dt < dt_floor) {
        out.status = RunStatus::Diverged;
        if (state.time > out.snapshots.back().time) record(state);
        out.max_amp = out.snapshots.back().max_amplitude();
        return out;
      }
      continue;
    }
    // Absorb rounding so snapshot times are hit exactly.
    if (target - next.time <= 1e-12 * std::max(1.0, std::abs(target))) {
      next.time = target;
    }
    state = std::move(next);

    if (max_amp_sq(state) >= threshold_sq) {
      record(state);
      out.status = RunStatus::BlowUp;
      out.t_blow = state.time;
      out.max_amp = state.max_amplitude();
      return out;
    }
    if (state.time >= next_snap) {
      record(state);
      ++snap_index;
    } else if (state.time >= t_end) {
      record(state);
    }
  }
  out.status = RunStatus::Completed;
  out.max_amp = out.snapshots.back().max_amplitude();
  return out;
}

}  // namespace ktz
