#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <unistd.h>

#include "ktz/grid.hpp"

namespace ktz::test {

template <typename F>
VelocityField field_from(const GridSpec& g, F&& f, double time = 0.0) {
  VelocityField out = VelocityField::zeros(g, time);
  for (int j = 0; j < g.n; ++j) {
    for (int i = 0; i < g.n; ++i) out.set(i, j, f(g.coord(i), g.coord(j)));
  }
  return out;
}

// A * tanh(r / w) * exp(i m theta) about (cx, cy).
inline VelocityField tanh_vortex(const GridSpec& g, double w, int m = 1,
                                 double amp = 1.0) {
  const double c = g.center();
  return field_from(g, [&](double x, double y) {
    const double r = std::hypot(x - c, y - c);
    return std::polar(amp * std::tanh(r / w), m * std::atan2(y - c, x - c));
  });
}

inline double max_abs_diff(const VelocityField& a, const VelocityField& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.re.size(); ++k) {
    d = std::max(d, std::abs(std::complex<double>(a.re[k] - b.re[k], a.im[k] - b.im[k])));
  }
  return d;
}

inline bool bit_equal(const VelocityField& a, const VelocityField& b) {
  return a.re == b.re && a.im == b.im && a.time == b.time;
}

// Fresh scratch directory under the system temp dir.
inline std::string scratch_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() /
                 ("ktz_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace ktz::test
