#include "ktz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ktz/error.hpp"

namespace ktz {

void GridSpec::validate() const {
  if (n < 16 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid.n must be even and >= 16, got " + std::to_string(n));
  }
  if (!(physical_size > 0.0) || !std::isfinite(physical_size)) {
    throw Error(ErrorCode::InvalidArgument,
                "grid.physical_size must be positive");
  }
}

VelocityField VelocityField::zeros(const GridSpec& grid, double time) {
  VelocityField f;
  f.grid = grid;
  f.re.assign(grid.cells(), 0.0);
  f.im.assign(grid.cells(), 0.0);
  f.time = time;
  return f;
}

double VelocityField::max_amplitude() const {
  double m = 0.0;
  for (std::size_t k = 0; k < re.size(); ++k) {
    m = std::max(m, std::hypot(re[k], im[k]));
  }
  return m;
}

bool VelocityField::all_finite() const {
  for (std::size_t k = 0; k < re.size(); ++k) {
    if (!std::isfinite(re[k]) || !std::isfinite(im[k])) return false;
  }
  return true;
}

std::complex<double> VelocityField::sample(double x, double y) const {
  const double dx = grid.dx();
  const int n = grid.n;
  // position in cell-centre index space
  double u = std::clamp(x / dx - 0.5, 0.0, n - 1.0);
  double v = std::clamp(y / dx - 0.5, 0.0, n - 1.0);
  int i0 = std::min(static_cast<int>(u), n - 2);
  int j0 = std::min(static_cast<int>(v), n - 2);
  const double fu = u - i0;
  const double fv = v - j0;
  return (1 - fu) * (1 - fv) * at(i0, j0) + fu * (1 - fv) * at(i0 + 1, j0) +
         (1 - fu) * fv * at(i0, j0 + 1) + fu * fv * at(i0 + 1, j0 + 1);
}

}  // namespace ktz
