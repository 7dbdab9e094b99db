#pragma once

#include <vector>

#include "ktz/grid.hpp"
#include "ktz/params.hpp"

namespace ktz {

// Entropy closure. From the amplitude budget
//   d(|Phi|^2/2)/dt = q|Phi|^2 - nu1|grad Phi|^2 - alpha1|Phi|^4 + div(flux)
// the dissipative terms give the production and the source term gives the
// external flow:
//   sigma_i = nu1 |grad Phi|^2 + alpha1 |Phi|^4
//   sigma_e = -q(x, y) |Phi|^2
//   s_dot   = sigma_e + sigma_i
// This is a model closure chosen for its sign structure, not a derived
// thermodynamic identity. sigma_i >= 0 requires alpha1 >= 0.
struct EntropyFields {
  GridSpec grid;
  std::vector<double> sigma_i;
  std::vector<double> sigma_e;
  std::vector<double> s_dot;
  double time = 0.0;
};

EntropyFields entropy_fields(const VelocityField& field, const Params& params);

/// Reference magnitude q^2/alpha1 of the source power at the plateau
/// (q^2 when alpha1 <= 0, 1 when q == 0).
double entropy_scale(const Params& params);

/// Sum of s_dot over the domain times the cell area.
double s_dot_total(const EntropyFields& ef);

struct Segment {
  double x0, y0, x1, y1;
};

struct Zone {
  std::vector<Segment> boundary;
  double area_m2 = 0.0;
  double diameter_m = 0.0;  // 2 sqrt(area / pi)
};

/// Marching-squares contour of s_dot at level -floor and the total area of
/// cells with s_dot < -floor. Throws EmptyZone if there are none.
Zone zone_boundary(const EntropyFields& ef, double floor = 0.0);

}  // namespace ktz
