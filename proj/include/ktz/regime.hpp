#pragma once

#include <optional>
#include <string>

#include "ktz/params.hpp"

namespace ktz {

struct StabilityCriterion {
  double value = 0.0;      // (c1^2 + 1) k^4 + 2 (1 + c1 c2) k^2, k = pi / l0
  bool bf_stable = false;  // -1 < c1 c2 < 1, strict
};

StabilityCriterion stability_criterion(double c1, double c2, double l0);

/// Lower bound on |v|^2: (4 q / alpha1) (1 - 4 c2^2 / 9). A non-positive
/// value means the bound is vacuous.
double velocity_bound(double q, double alpha1, double c2);

enum class ChargeClass { Tornado, Cyclone };
enum class Prediction { StableVortex, Unstable, Subcritical };
enum class Twist { None, Left, Right };

struct RegimeReport {
  double cc_product = 0.0;
  bool bf_stable = false;
  double criterion_value = 0.0;
  std::optional<double> v_min_sq;  // empty when q < 0 or alpha1 <= 0
  bool a2_ok = true;
  ChargeClass charge_class = ChargeClass::Tornado;
  Twist twist = Twist::None;
  Prediction predicted = Prediction::Subcritical;
};

/// Pure classification of a parameter set with charge m. `independent_a2`
/// is an externally measured A2 checked against A2^2 <= (alpha2/alpha1)^2;
/// without it the check passes trivially since A2 = alpha2/alpha1 = c2.
RegimeReport classify(const Params& params, int m,
                      std::optional<double> independent_a2 = std::nullopt);

const char* to_string(ChargeClass c);
const char* to_string(Prediction p);
const char* to_string(Twist t);

std::string format_regime(const RegimeReport& report, int m);

}  // namespace ktz
