#pragma once

#include <span>
#include <vector>

#include "ktz/grid.hpp"
#include "ktz/params.hpp"

namespace ktz {

/// Local linear growth rate q at (x, y).
///
/// Uniform returns q everywhere. Disk blends q inside r = l0/2 into -|q|
/// outside through tanh((r - l0/2) / (4 dx)), so the midpoint of the
/// crossover sits exactly on the basin edge.
double source_coefficient(const Params& params, const GridSpec& grid, double x,
                          double y);

/// Five-point Laplacian of a scalar plane. NoFlux mirrors the edge cell into
/// the ghost layer, Periodic wraps. Rows are independent work items.
void laplacian(const GridSpec& grid, std::span<const double> in,
               std::span<double> out, int threads = 1);

struct FieldDerivative {
  std::vector<double> re;
  std::vector<double> im;
};

/// Right-hand side of the amplitude equation on a fixed grid.
///
/// The q(x, y) map is tabulated once at construction. apply() computes every
/// cell from its own stencil with no cross-cell accumulation, so the output
/// is bit-identical for any thread count.
class CglOperator {
 public:
  CglOperator(const GridSpec& grid, const Params& params, int threads = 1);

  const GridSpec& grid() const { return grid_; }
  const Params& params() const { return params_; }
  int threads() const { return threads_; }
  std::span<const double> source() const { return source_; }

  void apply(std::span<const double> re, std::span<const double> im,
             std::span<double> dre, std::span<double> dim) const;

  FieldDerivative operator()(const VelocityField& field) const;

 private:
  GridSpec grid_;
  Params params_;
  int threads_;
  std::vector<double> source_;
};

/// Convenience wrapper: builds a single-threaded operator and evaluates it.
FieldDerivative rhs(const VelocityField& field, const Params& params);

}  // namespace ktz
