#include "ktz/thermo.hpp"

#include <cmath>
#include <numbers>

#include "ktz/cgl.hpp"
#include "ktz/error.hpp"

namespace ktz {

namespace {

inline int lower(int k, int n, Boundary b) {
  if (k > 0) return k - 1;
  return b == Boundary::Periodic ? n - 1 : 0;
}

inline int upper(int k, int n, Boundary b) {
  if (k < n - 1) return k + 1;
  return b == Boundary::Periodic ? 0 : n - 1;
}

}  // namespace

EntropyFields entropy_fields(const VelocityField& field, const Params& params) {
  const GridSpec& g = field.grid;
  const int n = g.n;
  const double inv_2dx = 1.0 / (2.0 * g.dx());
  EntropyFields ef;
  ef.grid = g;
  ef.time = field.time;
  ef.sigma_i.resize(g.cells());
  ef.sigma_e.resize(g.cells());
  ef.s_dot.resize(g.cells());

  for (int j = 0; j < n; ++j) {
    const int jl = lower(j, n, g.boundary);
    const int ju = upper(j, n, g.boundary);
    for (int i = 0; i < n; ++i) {
      const int il = lower(i, n, g.boundary);
      const int iu = upper(i, n, g.boundary);
      const std::size_t k = g.index(i, j);
      const double dxr = (field.re[g.index(iu, j)] - field.re[g.index(il, j)]) * inv_2dx;
      const double dxi = (field.im[g.index(iu, j)] - field.im[g.index(il, j)]) * inv_2dx;
      const double dyr = (field.re[g.index(i, ju)] - field.re[g.index(i, jl)]) * inv_2dx;
      const double dyi = (field.im[g.index(i, ju)] - field.im[g.index(i, jl)]) * inv_2dx;
      const double grad2 = dxr * dxr + dxi * dxi + dyr * dyr + dyi * dyi;
      const double amp2 = field.re[k] * field.re[k] + field.im[k] * field.im[k];
      const double q = source_coefficient(params, g, g.coord(i), g.coord(j));
      ef.sigma_i[k] = params.nu1 * grad2 + params.alpha1 * amp2 * amp2;
      ef.sigma_e[k] = -q * amp2;
      ef.s_dot[k] = ef.sigma_e[k] + ef.sigma_i[k];
    }
  }
  return ef;
}

double entropy_scale(const Params& params) {
  if (params.q == 0.0) return 1.0;
  if (params.alpha1 > 0.0) return params.q * params.q / params.alpha1;
  return params.q * params.q;
}

double s_dot_total(const EntropyFields& ef) {
  double sum = 0.0;
  for (double v : ef.s_dot) sum += v;
  return sum * ef.grid.dx() * ef.grid.dx();
}

Zone zone_boundary(const EntropyFields& ef, double floor) {
  const GridSpec& g = ef.grid;
  const int n = g.n;
  const double level = -floor;
  const double dx = g.dx();
  const auto& v = ef.s_dot;

  Zone zone;
  std::size_t inside = 0;
  for (double s : v) {
    if (s < level) ++inside;
  }
  if (inside == 0) {
    throw Error(ErrorCode::EmptyZone, "no cell has s_dot below the zone level");
  }
  zone.area_m2 = static_cast<double>(inside) * dx * dx;
  zone.diameter_m = 2.0 * std::sqrt(zone.area_m2 / std::numbers::pi);

  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const double c[4] = {v[g.index(i, j)], v[g.index(i + 1, j)],
                           v[g.index(i + 1, j + 1)], v[g.index(i, j + 1)]};
      const double px[4] = {g.coord(i), g.coord(i + 1), g.coord(i + 1), g.coord(i)};
      const double py[4] = {g.coord(j), g.coord(j), g.coord(j + 1), g.coord(j + 1)};
      int idx = 0;
      for (int k = 0; k < 4; ++k) {
        if (c[k] < level) idx |= 1 << k;
      }
      if (idx == 0 || idx == 15) continue;

      // edge e joins corner e and corner (e + 1) % 4
      auto edge = [&](int e, double& x, double& y) {
        const int a = e;
        const int b = (e + 1) % 4;
        const double t = (level - c[a]) / (c[b] - c[a]);
        x = px[a] + t * (px[b] - px[a]);
        y = py[a] + t * (py[b] - py[a]);
      };
      auto emit = [&](int ea, int eb) {
        Segment s;
        edge(ea, s.x0, s.y0);
        edge(eb, s.x1, s.y1);
        zone.boundary.push_back(s);
      };
      const bool centre_inside = 0.25 * (c[0] + c[1] + c[2] + c[3]) < level;
      switch (idx) {
        case 1: emit(3, 0); break;
        case 2: emit(0, 1); break;
        case 3: emit(3, 1); break;
        case 4: emit(1, 2); break;
        case 5:
          if (centre_inside) { emit(0, 1); emit(2, 3); }
          else { emit(3, 0); emit(1, 2); }
          break;
        case 6: emit(0, 2); break;
        case 7: emit(3, 2); break;
        case 8: emit(2, 3); break;
        case 9: emit(0, 2); break;
        case 10:
          if (centre_inside) { emit(3, 0); emit(1, 2); }
          else { emit(0, 1); emit(2, 3); }
          break;
        case 11: emit(1, 2); break;
        case 12: emit(1, 3); break;
        case 13: emit(0, 1); break;
        case 14: emit(3, 0); break;
        default: break;
      }
    }
  }
  return zone;
}

}  // namespace ktz
