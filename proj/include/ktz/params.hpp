#pragma once

#include "ktz/grid.hpp"

namespace ktz {

/// Whether the linear source q is applied everywhere or only inside the
/// basin disk of diameter l0 (subcritical outside).
enum class BasinProfile { Uniform, Disk };

/// Dimensionless coefficients of
///   dPhi/dt = nu1 (1 + i c1) lap(Phi) + q Phi - alpha1 (1 + i c2) |Phi|^2 Phi.
///
/// The viscosity ratio A1 = nu2/nu1 is c1 and the sink ratio A2 = alpha2/alpha1
/// is c2; nu2 and alpha2 are therefore nu1*c1 and alpha1*c2 and are not kept.
///
/// alpha1 <= 0 removes the saturating sink. alpha1 == 0 gives the linear
/// equation; alpha1 < 0 turns the cubic term into a source and produces
/// finite-time peaking.
struct Params {
  double nu1 = 1.0;
  double c1 = 0.0;
  double q = 1.0;
  double alpha1 = 1.0;
  double c2 = 0.0;
  double l0 = 500.0;  // basin diameter, metres
  BasinProfile basin = BasinProfile::Uniform;

  double nu2() const { return nu1 * c1; }
  double alpha2() const { return alpha1 * c2; }

  /// sqrt(q/alpha1) when both are positive, otherwise 0.
  double plateau_amplitude() const;

  void validate(const GridSpec& grid) const;
};

}  // namespace ktz
