#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ktz/grid.hpp"
#include "ktz/params.hpp"

namespace ktz {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct CoreGeometry {
  Point center;
  double inner_d = 0.0;  // metres
  double outer_d = 0.0;
  double plateau = 0.0;  // median |Phi| on r in [0.3, 0.4] l0
};

/// Azimuthal mean of a cell quantity in radial bins of width dx around a
/// point. Bin k holds cells with k dx <= r < (k + 1) dx; its radius is the
/// mean radius of those cells. Empty bins are dropped.
struct RadialProfile {
  std::vector<double> radius;
  std::vector<double> mean;
};

RadialProfile radial_profile(const GridSpec& grid, std::span<const double> values,
                             Point center);

/// Smallest radius >= from where the profile reaches `threshold`, linearly
/// interpolated between bins. If the first bin considered already reaches it,
/// that bin's radius is returned: the profile is not extrapolated below the
/// cell scale.
std::optional<double> first_rise(const RadialProfile& profile, double threshold,
                                 double from = 0.0);

/// Smallest radius >= from where the profile drops to `threshold` or below.
std::optional<double> first_fall(const RadialProfile& profile, double threshold,
                                 double from = 0.0);

/// Locates the phase singularity and the 10% / 90% amplitude radii.
/// Throws AmbiguousCore when more than one defect sits inside 0.3 l0 of the
/// domain centre and NoPlateau when the plateau is below 1e-9.
CoreGeometry core_geometry(const VelocityField& field, const Params& params);

struct PressureField {
  GridSpec grid;
  std::vector<double> p;
  std::vector<double> gx;
  std::vector<double> gy;
};

/// Nonpotential closure: grad p = -(q Phi - alpha1 (1 + i c2)|Phi|^2 Phi)
/// read as (x, y) components, p from the Dirichlet Poisson problem
/// lap p = div grad p with p = 0 outside the domain. Solved by conjugate
/// gradients to a relative residual below 1e-8; SolverFail otherwise.
PressureField pressure_np(const VelocityField& field, const Params& params);

/// Potential (Bernoulli) closure p = -|Phi|^2 / 2, shifted so the median over
/// the boundary cells is zero; gradient by centred differences.
PressureField pressure_p(const VelocityField& field);

/// Radial width over which the azimuthal mean of |p| falls from 10% to 1% of
/// max |p|, searching outward from the profile peak (and from min_radius).
/// Throws NoDepression when max |p| < 1e-12.
double pressure_ring_width(const PressureField& pf, Point core_center,
                           double min_radius = 0.0);

enum class ReportMode { NpVelocity, NpPressure, PPressure };
const char* to_string(ReportMode mode);

struct MorphologyReport {
  ReportMode mode = ReportMode::NpVelocity;
  std::optional<double> zone_diameter_m;
  std::optional<double> inner_core_diameter_m;
  std::optional<double> outer_core_diameter_m;
  std::optional<double> pressure_ring_width_m;
  std::optional<int> charge;
  std::optional<Point> core_center;
};

/// All three report columns for one snapshot. Measurement failures leave
/// the affected entries empty; SolverFail from the pressure solve propagates.
std::vector<MorphologyReport> analyze_morphology(const VelocityField& field,
                                                 const Params& params,
                                                 double zone_floor);

}  // namespace ktz
