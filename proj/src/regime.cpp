#include "ktz/regime.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ktz/error.hpp"

namespace ktz {

StabilityCriterion stability_criterion(double c1, double c2, double l0) {
  if (!(l0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "l0 must be positive");
  }
  const double k = std::numbers::pi / l0;
  const double k2 = k * k;
  const double cc = c1 * c2;
  StabilityCriterion out;
  out.value = (c1 * c1 + 1.0) * k2 * k2 + 2.0 * (1.0 + cc) * k2;
  // strict on both sides; |c1 c2| == 1 is marginal and reported unstable
  out.bf_stable = cc > -1.0 && cc < 1.0;
  return out;
}

double velocity_bound(double q, double alpha1, double c2) {
  if (!(alpha1 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "velocity bound needs alpha1 > 0");
  }
  if (!(q >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "velocity bound needs q >= 0");
  }
  return 4.0 * q / alpha1 * (1.0 - 4.0 * c2 * c2 / 9.0);
}

RegimeReport classify(const Params& params, int m,
                      std::optional<double> independent_a2) {
  const StabilityCriterion sc = stability_criterion(params.c1, params.c2, params.l0);
  RegimeReport r;
  r.cc_product = params.c1 * params.c2;
  r.bf_stable = sc.bf_stable;
  r.criterion_value = sc.value;
  if (params.alpha1 > 0.0 && params.q >= 0.0) {
    r.v_min_sq = velocity_bound(params.q, params.alpha1, params.c2);
  }
  if (independent_a2) {
    r.a2_ok = *independent_a2 * *independent_a2 <= params.c2 * params.c2;
  }
  r.charge_class = std::abs(m) > 2 ? ChargeClass::Cyclone : ChargeClass::Tornado;
  r.twist = m < 0 ? Twist::Left : (m > 0 ? Twist::Right : Twist::None);
  if (params.q <= 0.0) {
    r.predicted = Prediction::Subcritical;
  } else if (!r.bf_stable) {
    r.predicted = Prediction::Unstable;
  } else {
    // |m| > 2 is carried by charge_class, not by the prediction
    r.predicted = Prediction::StableVortex;
  }
  return r;
}

const char* to_string(ChargeClass c) {
  return c == ChargeClass::Tornado ? "Tornado" : "Cyclone";
}

const char* to_string(Prediction p) {
  switch (p) {
    case Prediction::StableVortex: return "StableVortex";
    case Prediction::Unstable: return "Unstable";
    case Prediction::Subcritical: return "Subcritical";
  }
  return "Unknown";
}

const char* to_string(Twist t) {
  switch (t) {
    case Twist::None: return "none";
    case Twist::Left: return "left";
    case Twist::Right: return "right";
  }
  return "none";
}

std::string format_regime(const RegimeReport& r, int m) {
  char buf[64];
  std::ostringstream out;
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  out << "prediction       " << to_string(r.predicted) << '\n';
  out << "charge           " << m << " (" << to_string(r.charge_class)
      << ", twist " << to_string(r.twist) << ")\n";
  out << "c1*c2            " << num(r.cc_product) << '\n';
  out << "bf_stable        " << (r.bf_stable ? "true" : "false") << '\n';
  out << "criterion_value  " << num(r.criterion_value) << '\n';
  if (r.v_min_sq) {
    out << "v_min_sq         " << num(*r.v_min_sq);
    if (*r.v_min_sq <= 0.0) out << " (vacuous)";
    out << '\n';
  } else {
    out << "v_min_sq         undefined\n";
  }
  out << "a2_ok            " << (r.a2_ok ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace ktz
