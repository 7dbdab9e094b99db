#pragma once

#include <cstdint>
#include <optional>

#include "ktz/grid.hpp"
#include "ktz/params.hpp"

namespace ktz {

struct SpiralSpec {
  int m = 1;                           // topological charge
  std::optional<double> amplitude;     // default sqrt(q/alpha1), or 1
  std::optional<double> core_width;    // metres, default 4 dx
  double humidity = 1.0;               // [0, 1], scales the vortex amplitude
  double noise_eps = 0.0;              // relative to amplitude
  std::uint64_t seed = 0;

  void validate() const;
};

/// Fills the optional members from the model: amplitude sqrt(q/alpha1) when
/// that is defined (1 otherwise) and core width 4 dx.
SpiralSpec with_defaults(SpiralSpec spec, const Params& params,
                         const GridSpec& grid);

/// humidity * A * tanh(r / w) * exp(i m theta) about the domain centre, plus
/// complex noise with |noise| <= noise_eps * A.
VelocityField make_spiral(const GridSpec& grid, const SpiralSpec& spec);

/// A exp(i 2 pi (k1 x + k2 y) / L). Requires a periodic grid.
VelocityField make_plane_wave(const GridSpec& grid, int k1, int k2,
                              double amplitude);

/// Winding number of the phase around a circle of the given radius.
///
/// Samples the interpolated field at `samples` points (at least 64), sums the
/// principal-branch phase increments and divides by 2 pi. Throws SingularLoop
/// if the loop touches an amplitude zero or the sum is more than 0.05 away
/// from an integer.
int measure_charge(const VelocityField& field, double loop_radius);
int measure_charge(const VelocityField& field, double loop_radius, double cx,
                   double cy, int samples = 256);

}  // namespace ktz
