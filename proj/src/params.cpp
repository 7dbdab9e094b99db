#include "ktz/params.hpp"

#include <cmath>

#include "ktz/error.hpp"

namespace ktz {

double Params::plateau_amplitude() const {
  if (q > 0.0 && alpha1 > 0.0) return std::sqrt(q / alpha1);
  return 0.0;
}

void Params::validate(const GridSpec& grid) const {
  const double all[] = {nu1, c1, q, alpha1, c2, l0};
  for (double v : all) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "params must be finite");
    }
  }
  if (!(nu1 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "params.nu1 must be positive");
  }
  if (!(l0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "params.l0 must be positive");
  }
  if (basin == BasinProfile::Disk && l0 > grid.physical_size) {
    throw Error(ErrorCode::InvalidArgument,
                "disk basin diameter l0 exceeds the domain size");
  }
}

}  // namespace ktz
