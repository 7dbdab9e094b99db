#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ktz {

enum class Boundary : std::uint8_t { NoFlux = 0, Periodic = 1 };

/// Square cell-centred grid. Cell (i, j) has its centre at
/// ((i + 0.5) dx, (j + 0.5) dx); storage is row-major with j as the row.
struct GridSpec {
  int n = 64;
  double physical_size = 1000.0;  // metres
  Boundary boundary = Boundary::NoFlux;

  double dx() const { return physical_size / n; }
  double coord(int i) const { return (i + 0.5) * dx(); }
  double center() const { return 0.5 * physical_size; }
  std::size_t cells() const { return static_cast<std::size_t>(n) * n; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * n + i;
  }

  /// Throws InvalidArgument unless n >= 16, n even and the size is positive.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

/// Complex velocity Phi = vx + i vy stored as separate real/imaginary planes.
struct VelocityField {
  GridSpec grid;
  std::vector<double> re;
  std::vector<double> im;
  double time = 0.0;

  static VelocityField zeros(const GridSpec& grid, double time = 0.0);

  std::complex<double> at(int i, int j) const {
    const auto k = grid.index(i, j);
    return {re[k], im[k]};
  }
  void set(int i, int j, std::complex<double> v) {
    const auto k = grid.index(i, j);
    re[k] = v.real();
    im[k] = v.imag();
  }

  double max_amplitude() const;
  bool all_finite() const;

  /// Bilinear interpolation of the complex field at (x, y) in metres.
  /// Points outside the cell-centre hull are clamped to the nearest edge.
  std::complex<double> sample(double x, double y) const;
};

}  // namespace ktz
