#include "ktz/initcond.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ktz/error.hpp"

namespace ktz {

namespace {

// 53-bit uniform in [0, 1) from the raw engine output; avoids the
// implementation-defined std::uniform_real_distribution so noise bits are
// portable across standard libraries.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void SpiralSpec::validate() const {
  if (amplitude && !(*amplitude >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spiral.amplitude must be >= 0");
  }
  if (core_width && !(*core_width > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spiral.core_width must be > 0");
  }
  if (!(humidity >= 0.0 && humidity <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "spiral.humidity must be in [0, 1]");
  }
  if (!(noise_eps >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spiral.noise_eps must be >= 0");
  }
}

SpiralSpec with_defaults(SpiralSpec spec, const Params& params,
                         const GridSpec& grid) {
  if (!spec.amplitude) {
    const double a = params.plateau_amplitude();
    spec.amplitude = a > 0.0 ? a : 1.0;
  }
  if (!spec.core_width) spec.core_width = 4.0 * grid.dx();
  return spec;
}

VelocityField make_spiral(const GridSpec& grid, const SpiralSpec& spec) {
  grid.validate();
  spec.validate();
  const double amp = spec.amplitude.value_or(1.0);
  const double width = spec.core_width.value_or(4.0 * grid.dx());
  const double vortex = spec.humidity * amp;
  const double noise = spec.noise_eps * amp;
  const double c = grid.center();

  std::mt19937_64 rng(spec.seed);
  VelocityField f = VelocityField::zeros(grid);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.coord(i) - c;
      const double y = grid.coord(j) - c;
      const double r = std::hypot(x, y);
      const double theta = std::atan2(y, x);
      std::complex<double> v =
          std::polar(vortex * std::tanh(r / width), spec.m * theta);
      // drawn for every cell even when noise == 0 so the stream is stable
      const double mag = noise * unit(rng);
      const double phase = 2.0 * std::numbers::pi * unit(rng);
      v += std::polar(mag, phase);
      f.set(i, j, v);
    }
  }
  return f;
}

VelocityField make_plane_wave(const GridSpec& grid, int k1, int k2,
                              double amplitude) {
  grid.validate();
  if (grid.boundary != Boundary::Periodic) {
    throw Error(ErrorCode::NonPeriodicGrid, "plane waves need a periodic grid");
  }
  const double kx = 2.0 * std::numbers::pi * k1 / grid.physical_size;
  const double ky = 2.0 * std::numbers::pi * k2 / grid.physical_size;
  VelocityField f = VelocityField::zeros(grid);
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      f.set(i, j, std::polar(amplitude, kx * grid.coord(i) + ky * grid.coord(j)));
    }
  }
  return f;
}

int measure_charge(const VelocityField& field, double loop_radius) {
  return measure_charge(field, loop_radius, field.grid.center(),
                        field.grid.center());
}

int measure_charge(const VelocityField& field, double loop_radius, double cx,
                   double cy, int samples) {
  const GridSpec& g = field.grid;
  const double lo = 0.5 * g.dx();
  const double hi = g.physical_size - 0.5 * g.dx();
  if (!(loop_radius > 0.0) || cx - loop_radius < lo || cx + loop_radius > hi ||
      cy - loop_radius < lo || cy + loop_radius > hi) {
    throw Error(ErrorCode::InvalidArgument, "charge loop leaves the domain");
  }
  samples = std::max(samples, 64);
  const double floor = 1e-12 * std::max(field.max_amplitude(), 1e-300);

  double total = 0.0;
  std::complex<double> prev;
  std::complex<double> first;
  for (int s = 0; s <= samples; ++s) {
    std::complex<double> z;
    if (s == samples) {
      z = first;
    } else {
      const double a = 2.0 * std::numbers::pi * s / samples;
      z = field.sample(cx + loop_radius * std::cos(a),
                       cy + loop_radius * std::sin(a));
      if (!(std::abs(z) > floor)) {
        throw Error(ErrorCode::SingularLoop,
                    "charge loop passes through an amplitude zero");
      }
    }
    if (s == 0) {
      first = z;
    } else {
      total += std::arg(z * std::conj(prev));
    }
    prev = z;
  }
  const double w = total / (2.0 * std::numbers::pi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) >= 0.05) {
    std::ostringstream msg;
    msg << "winding " << w << " is not close to an integer";
    throw Error(ErrorCode::SingularLoop, msg.str());
  }
  return static_cast<int>(rounded);
}

}  // namespace ktz
