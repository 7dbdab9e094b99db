#include "ktz/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ktz/cgl.hpp"
#include "ktz/error.hpp"
#include "ktz/initcond.hpp"
#include "ktz/thermo.hpp"

namespace ktz {

namespace {

constexpr double kPlateauInner = 0.3;
constexpr double kPlateauOuter = 0.4;
constexpr double kInnerFraction = 0.1;
constexpr double kOuterFraction = 0.9;
constexpr double kNoiseFloor = 1e-9;

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + mid));
  }
  return m;
}

double annulus_median(const GridSpec& g, std::span<const double> values,
                      Point c, double r_lo, double r_hi) {
  std::vector<double> picked;
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const double r = std::hypot(g.coord(i) - c.x, g.coord(j) - c.y);
      if (r >= r_lo && r <= r_hi) picked.push_back(values[g.index(i, j)]);
    }
  }
  return median(std::move(picked));
}

std::vector<double> amplitudes(const VelocityField& f) {
  std::vector<double> a(f.re.size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = std::hypot(f.re[k], f.im[k]);
  return a;
}

double scalar_sample(const GridSpec& g, std::span<const double> v, Point p) {
  const double dx = g.dx();
  const int n = g.n;
  const double u = std::clamp(p.x / dx - 0.5, 0.0, n - 1.0);
  const double w = std::clamp(p.y / dx - 0.5, 0.0, n - 1.0);
  const int i0 = std::min(static_cast<int>(u), n - 2);
  const int j0 = std::min(static_cast<int>(w), n - 2);
  const double fu = u - i0;
  const double fw = w - j0;
  return (1 - fu) * (1 - fw) * v[g.index(i0, j0)] +
         fu * (1 - fw) * v[g.index(i0 + 1, j0)] +
         (1 - fu) * fw * v[g.index(i0, j0 + 1)] +
         fu * fw * v[g.index(i0 + 1, j0 + 1)];
}

// Winding of the phase around the plaquette with lower-left cell (i, j).
int plaquette_winding(const VelocityField& f, int i, int j) {
  const std::complex<double> z[4] = {f.at(i, j), f.at(i + 1, j),
                                     f.at(i + 1, j + 1), f.at(i, j + 1)};
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    sum += std::arg(z[(k + 1) % 4] * std::conj(z[k]));
  }
  return static_cast<int>(std::lround(sum / (2.0 * std::numbers::pi)));
}

// Vertex offset of the parabola through (-1, a), (0, b), (1, c).
double parabola_vertex(double a, double b, double c) {
  const double curv = a - 2.0 * b + c;
  if (!(curv > 0.0)) return 0.0;
  return std::clamp(0.5 * (a - c) / curv, -0.5, 0.5);
}

// Zero of the bilinear interpolant on plaquette (i, j), in local [0,1]^2
// coordinates, by Newton from (u, v). Returns false if it leaves the cell.
bool bilinear_zero(const VelocityField& f, int i, int j, double& u, double& v) {
  const std::complex<double> z00 = f.at(i, j), z10 = f.at(i + 1, j),
                             z01 = f.at(i, j + 1), z11 = f.at(i + 1, j + 1);
  const std::complex<double> b = z10 - z00;
  const std::complex<double> c = z01 - z00;
  const std::complex<double> d = z11 - z10 - z01 + z00;
  for (int it = 0; it < 50; ++it) {
    const std::complex<double> val = z00 + b * u + c * v + d * u * v;
    const std::complex<double> du = b + d * v;
    const std::complex<double> dv = c + d * u;
    const double det = du.real() * dv.imag() - dv.real() * du.imag();
    if (std::abs(det) < 1e-300) return false;
    const double su = (val.real() * dv.imag() - dv.real() * val.imag()) / det;
    const double sv = (du.real() * val.imag() - val.real() * du.imag()) / det;
    u -= su;
    v -= sv;
    if (std::abs(su) + std::abs(sv) < 1e-14) break;
  }
  return u >= -1e-9 && u <= 1 + 1e-9 && v >= -1e-9 && v <= 1 + 1e-9;
}

struct Defect {
  int i;
  int j;
  int winding;
};

Point locate_core(const VelocityField& f, const Params& params,
                  const std::vector<double>& amp) {
  const GridSpec& g = f.grid;
  const int n = g.n;
  const double c = g.center();
  const double search = kPlateauInner * params.l0;

  std::vector<Defect> defects;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double px = g.coord(i) + 0.5 * g.dx();
      const double py = g.coord(j) + 0.5 * g.dx();
      if (std::hypot(px - c, py - c) > search) continue;
      const int w = plaquette_winding(f, i, j);
      if (w != 0) defects.push_back({i, j, w});
    }
  }
  if (defects.size() > 1) {
    std::ostringstream msg;
    msg << defects.size() << " phase singularities inside the search disk:";
    for (const Defect& d : defects) {
      msg << " (" << g.coord(d.i) + 0.5 * g.dx() << ", "
          << g.coord(d.j) + 0.5 * g.dx() << ")[" << d.winding << "]";
    }
    throw Error(ErrorCode::AmbiguousCore, msg.str());
  }

  // minimum-amplitude cell: among the defect plaquette's corners, or over the
  // search disk when there is no defect
  int bi = -1, bj = -1;
  double best = 0.0;
  auto consider = [&](int i, int j) {
    const double a = amp[g.index(i, j)];
    if (bi < 0 || a < best) {
      best = a;
      bi = i;
      bj = j;
    }
  };
  if (defects.size() == 1) {
    const Defect& d = defects.front();
    consider(d.i, d.j);
    consider(d.i + 1, d.j);
    consider(d.i, d.j + 1);
    consider(d.i + 1, d.j + 1);
  } else {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        if (std::hypot(g.coord(i) - c, g.coord(j) - c) <= search) consider(i, j);
      }
    }
  }
  if (bi < 0) {
    throw Error(ErrorCode::AmbiguousCore, "no cell inside the core search disk");
  }

  double ox = 0.0, oy = 0.0;
  if (bi > 0 && bi < n - 1) {
    ox = parabola_vertex(amp[g.index(bi - 1, bj)], amp[g.index(bi, bj)],
                         amp[g.index(bi + 1, bj)]);
  }
  if (bj > 0 && bj < n - 1) {
    oy = parabola_vertex(amp[g.index(bi, bj - 1)], amp[g.index(bi, bj)],
                         amp[g.index(bi, bj + 1)]);
  }
  Point p{g.coord(bi) + ox * g.dx(), g.coord(bj) + oy * g.dx()};

  if (defects.size() == 1) {
    // snap onto the zero of the interpolant inside the winding plaquette
    const Defect& d = defects.front();
    double u = std::clamp((p.x - g.coord(d.i)) / g.dx(), 0.0, 1.0);
    double v = std::clamp((p.y - g.coord(d.j)) / g.dx(), 0.0, 1.0);
    if (bilinear_zero(f, d.i, d.j, u, v)) {
      p = {g.coord(d.i) + u * g.dx(), g.coord(d.j) + v * g.dx()};
    }
  }
  return p;
}

struct ProfileCores {
  double inner_r;
  double outer_r;
  double plateau;
};

ProfileCores profile_cores(const GridSpec& g, std::span<const double> values,
                           Point center, double l0) {
  const double plateau = annulus_median(g, values, center, kPlateauInner * l0,
                                        kPlateauOuter * l0);
  if (!(plateau > kNoiseFloor)) {
    throw Error(ErrorCode::NoPlateau, "plateau below the noise floor");
  }
  const RadialProfile prof = radial_profile(g, values, center);
  const auto inner = first_rise(prof, kInnerFraction * plateau);
  const auto outer = first_rise(prof, kOuterFraction * plateau);
  if (!inner || !outer) {
    throw Error(ErrorCode::NoPlateau, "profile never reaches the plateau");
  }
  return {*inner, *outer, plateau};
}

std::vector<double> central_gradient(const GridSpec& g, std::span<const double> v,
                                     bool along_x) {
  const int n = g.n;
  const bool periodic = g.boundary == Boundary::Periodic;
  std::vector<double> out(g.cells());
  const double inv = 1.0 / (2.0 * g.dx());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int k = along_x ? i : j;
      int lo = k > 0 ? k - 1 : (periodic ? n - 1 : 0);
      int hi = k < n - 1 ? k + 1 : (periodic ? 0 : n - 1);
      const double a = along_x ? v[g.index(lo, j)] : v[g.index(i, lo)];
      const double b = along_x ? v[g.index(hi, j)] : v[g.index(i, hi)];
      out[g.index(i, j)] = (b - a) * inv;
    }
  }
  return out;
}

// -lap p with p = 0 in the ghost layer (homogeneous Dirichlet).
void apply_neg_laplacian(const GridSpec& g, const std::vector<double>& p,
                         std::vector<double>& out) {
  const int n = g.n;
  const double inv = 1.0 / (g.dx() * g.dx());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double l = i > 0 ? p[g.index(i - 1, j)] : 0.0;
      const double r = i < n - 1 ? p[g.index(i + 1, j)] : 0.0;
      const double d = j > 0 ? p[g.index(i, j - 1)] : 0.0;
      const double u = j < n - 1 ? p[g.index(i, j + 1)] : 0.0;
      out[g.index(i, j)] = (4.0 * p[g.index(i, j)] - l - r - d - u) * inv;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

RadialProfile radial_profile(const GridSpec& grid, std::span<const double> values,
                             Point center) {
  const double dx = grid.dx();
  const double reach = std::sqrt(2.0) * grid.physical_size;
  const std::size_t bins = static_cast<std::size_t>(reach / dx) + 2;
  std::vector<double> rsum(bins, 0.0), vsum(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const double r = std::hypot(grid.coord(i) - center.x, grid.coord(j) - center.y);
      const auto b = std::min(static_cast<std::size_t>(r / dx), bins - 1);
      rsum[b] += r;
      vsum[b] += values[grid.index(i, j)];
      ++count[b];
    }
  }
  RadialProfile prof;
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0) continue;
    prof.radius.push_back(rsum[b] / count[b]);
    prof.mean.push_back(vsum[b] / count[b]);
  }
  return prof;
}

namespace {

template <class Reached>
std::optional<double> first_crossing(const RadialProfile& p, double threshold,
                                     double from, Reached reached) {
  bool first = true;
  for (std::size_t k = 0; k < p.radius.size(); ++k) {
    if (p.radius[k] < from) continue;
    if (reached(p.mean[k])) {
      if (first) return p.radius[k];
      const double m0 = p.mean[k - 1], m1 = p.mean[k];
      const double t = m1 == m0 ? 1.0 : (threshold - m0) / (m1 - m0);
      return p.radius[k - 1] + t * (p.radius[k] - p.radius[k - 1]);
    }
    first = false;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> first_rise(const RadialProfile& profile, double threshold,
                                 double from) {
  return first_crossing(profile, threshold, from,
                        [&](double m) { return m >= threshold; });
}

std::optional<double> first_fall(const RadialProfile& profile, double threshold,
                                 double from) {
  return first_crossing(profile, threshold, from,
                        [&](double m) { return m <= threshold; });
}

CoreGeometry core_geometry(const VelocityField& field, const Params& params) {
  const std::vector<double> amp = amplitudes(field);
  CoreGeometry geo;
  geo.center = locate_core(field, params, amp);
  const ProfileCores cores = profile_cores(field.grid, amp, geo.center, params.l0);
  geo.inner_d = 2.0 * cores.inner_r;
  geo.outer_d = 2.0 * cores.outer_r;
  geo.plateau = cores.plateau;
  return geo;
}

PressureField pressure_np(const VelocityField& field, const Params& params) {
  const GridSpec& g = field.grid;
  PressureField pf;
  pf.grid = g;
  pf.gx.resize(g.cells());
  pf.gy.resize(g.cells());
  pf.p.assign(g.cells(), 0.0);
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) {
      const std::size_t k = g.index(i, j);
      const double a = field.re[k];
      const double c = field.im[k];
      const double amp2 = a * a + c * c;
      const double s = source_coefficient(params, g, g.coord(i), g.coord(j));
      pf.gx[k] = -(s * a - params.alpha1 * amp2 * (a - params.c2 * c));
      pf.gy[k] = -(s * c - params.alpha1 * amp2 * (c + params.c2 * a));
    }
  }

  const std::vector<double> ddx = central_gradient(g, pf.gx, true);
  const std::vector<double> ddy = central_gradient(g, pf.gy, false);
  // -lap p = -div g
  std::vector<double> b(g.cells());
  for (std::size_t k = 0; k < b.size(); ++k) b[k] = -(ddx[k] + ddy[k]);

  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) return pf;

  // conjugate gradients on the SPD Dirichlet operator
  std::vector<double>& x = pf.p;
  std::vector<double> r = b, d = b, ad(g.cells());
  double rr = dot(r, r);
  const double target = 1e-10 * bnorm;
  const int budget = 20 * g.n + 200;
  int it = 0;
  for (; it < budget && std::sqrt(rr) > target; ++it) {
    apply_neg_laplacian(g, d, ad);
    const double alpha = rr / dot(d, ad);
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += alpha * d[k];
      r[k] -= alpha * ad[k];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = r[k] + beta * d[k];
  }
  // true residual, not the recurrence
  apply_neg_laplacian(g, x, ad);
  double res = 0.0;
  for (std::size_t k = 0; k < ad.size(); ++k) {
    res += (b[k] - ad[k]) * (b[k] - ad[k]);
  }
  if (!(std::sqrt(res) < 1e-8 * bnorm)) {
    std::ostringstream msg;
    msg << "pressure Poisson solve stopped at relative residual "
        << std::sqrt(res) / bnorm << " after " << it << " iterations";
    throw Error(ErrorCode::SolverFail, msg.str());
  }
  return pf;
}

PressureField pressure_p(const VelocityField& field) {
  const GridSpec& g = field.grid;
  const int n = g.n;
  PressureField pf;
  pf.grid = g;
  pf.p.resize(g.cells());
  for (std::size_t k = 0; k < pf.p.size(); ++k) {
    pf.p[k] = -0.5 * (field.re[k] * field.re[k] + field.im[k] * field.im[k]);
  }
  std::vector<double> edge;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
        edge.push_back(pf.p[g.index(i, j)]);
      }
    }
  }
  const double offset = median(std::move(edge));
  for (double& v : pf.p) v -= offset;
  pf.gx = central_gradient(g, pf.p, true);
  pf.gy = central_gradient(g, pf.p, false);
  return pf;
}

double pressure_ring_width(const PressureField& pf, Point core_center,
                           double min_radius) {
  std::vector<double> mag(pf.p.size());
  double peak = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    mag[k] = std::abs(pf.p[k]);
    peak = std::max(peak, mag[k]);
  }
  if (!(peak >= 1e-12)) {
    throw Error(ErrorCode::NoDepression, "pressure deviation below 1e-12");
  }
  const RadialProfile prof = radial_profile(pf.grid, mag, core_center);
  std::size_t top = 0;
  for (std::size_t k = 1; k < prof.mean.size(); ++k) {
    if (prof.mean[k] > prof.mean[top]) top = k;
  }
  const double from = std::max(prof.radius[top], min_radius);
  const auto r10 = first_fall(prof, 0.10 * peak, from);
  const auto r01 = first_fall(prof, 0.01 * peak, from);
  if (!r10 || !r01) {
    throw Error(ErrorCode::NoDepression,
                "pressure does not equalize inside the domain");
  }
  return *r01 - *r10;
}

const char* to_string(ReportMode mode) {
  switch (mode) {
    case ReportMode::NpVelocity: return "NP_velocity";
    case ReportMode::NpPressure: return "NP_pressure";
    case ReportMode::PPressure: return "P_pressure";
  }
  return "Unknown";
}

namespace {

bool soft_failure(const Error& e) {
  switch (e.code()) {
    case ErrorCode::AmbiguousCore:
    case ErrorCode::NoPlateau:
    case ErrorCode::NoDepression:
    case ErrorCode::EmptyZone:
    case ErrorCode::SingularLoop:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

// Pressure-defined column: cores from the rise of |p - p(centre)|. The zone
// edge is where the mode's primary quantity (|grad p| for NP, |p| for P)
// falls below half its value on the sampling annulus.
void fill_pressure_column(MorphologyReport& rep, const PressureField& pf,
                          const Params& params, Point center, bool by_gradient) {
  const GridSpec& g = pf.grid;
  const double pc = scalar_sample(g, pf.p, center);
  std::vector<double> dev(pf.p.size());
  for (std::size_t k = 0; k < dev.size(); ++k) dev[k] = std::abs(pf.p[k] - pc);
  try {
    const ProfileCores cores = profile_cores(g, dev, center, params.l0);
    rep.inner_core_diameter_m = 2.0 * cores.inner_r;
    rep.outer_core_diameter_m = 2.0 * cores.outer_r;
  } catch (const Error& e) {
    if (!soft_failure(e)) throw;
  }

  std::vector<double> level(pf.p.size());
  for (std::size_t k = 0; k < level.size(); ++k) {
    level[k] = by_gradient ? std::hypot(pf.gx[k], pf.gy[k]) : std::abs(pf.p[k]);
  }
  const double plateau = annulus_median(g, level, center, kPlateauInner * params.l0,
                                        kPlateauOuter * params.l0);
  if (plateau > kNoiseFloor) {
    const RadialProfile prof = radial_profile(g, level, center);
    if (auto edge = first_fall(prof, 0.5 * plateau, kPlateauInner * params.l0)) {
      rep.zone_diameter_m = 2.0 * *edge;
    }
  }
  try {
    rep.pressure_ring_width_m = pressure_ring_width(
        pf, center, 0.5 * rep.outer_core_diameter_m.value_or(0.0));
  } catch (const Error& e) {
    if (!soft_failure(e)) throw;
  }
}

}  // namespace

std::vector<MorphologyReport> analyze_morphology(const VelocityField& field,
                                                 const Params& params,
                                                 double zone_floor) {
  MorphologyReport vel, np, pp;
  vel.mode = ReportMode::NpVelocity;
  np.mode = ReportMode::NpPressure;
  pp.mode = ReportMode::PPressure;

  std::optional<CoreGeometry> core;
  try {
    core = core_geometry(field, params);
  } catch (const Error& e) {
    if (!soft_failure(e)) throw;
  }
  std::optional<int> charge;
  if (core) {
    try {
      charge = measure_charge(field, core->outer_d, core->center.x, core->center.y);
    } catch (const Error& e) {
      if (!soft_failure(e)) throw;
    }
  }
  for (MorphologyReport* r : {&vel, &np, &pp}) {
    r->charge = charge;
    if (core) r->core_center = core->center;
  }

  try {
    const Zone z = zone_boundary(entropy_fields(field, params),
                                 zone_floor * entropy_scale(params));
    vel.zone_diameter_m = z.diameter_m;
  } catch (const Error& e) {
    if (!soft_failure(e)) throw;
  }

  const PressureField p_np = pressure_np(field, params);
  const PressureField p_p = pressure_p(field);
  if (core) {
    vel.inner_core_diameter_m = core->inner_d;
    vel.outer_core_diameter_m = core->outer_d;
    try {
      vel.pressure_ring_width_m =
          pressure_ring_width(p_np, core->center, 0.5 * core->outer_d);
    } catch (const Error& e) {
      if (!soft_failure(e)) throw;
    }
    fill_pressure_column(np, p_np, params, core->center, true);
    fill_pressure_column(pp, p_p, params, core->center, false);
  }
  return {vel, np, pp};
}

}  // namespace ktz
