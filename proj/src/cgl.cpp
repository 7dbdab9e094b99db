#include "ktz/cgl.hpp"

#include <cmath>

#include "ktz/error.hpp"

namespace ktz {

namespace {

struct Neighbours {
  int lo;
  int hi;
};

// Ghost handling collapses to an index remap: NoFlux mirrors the edge cell
// (ghost == edge), Periodic wraps.
inline Neighbours neighbours(int k, int n, Boundary b) {
  if (b == Boundary::Periodic) {
    return {k == 0 ? n - 1 : k - 1, k == n - 1 ? 0 : k + 1};
  }
  return {k == 0 ? 0 : k - 1, k == n - 1 ? n - 1 : k + 1};
}

inline double stencil(const double* row, const double* down, const double* up,
                      int i, Neighbours x, double inv_dx2) {
  return (row[x.lo] + row[x.hi] + down[i] + up[i] - 4.0 * row[i]) * inv_dx2;
}

}  // namespace

double source_coefficient(const Params& params, const GridSpec& grid, double x,
                          double y) {
  if (params.basin == BasinProfile::Uniform) return params.q;
  const double r = std::hypot(x - grid.center(), y - grid.center());
  const double s = std::tanh((r - 0.5 * params.l0) / (4.0 * grid.dx()));
  const double inside = params.q;
  const double outside = -std::abs(params.q);
  return 0.5 * (1.0 - s) * inside + 0.5 * (1.0 + s) * outside;
}

void laplacian(const GridSpec& grid, std::span<const double> in,
               std::span<double> out, int threads) {
  const int n = grid.n;
  const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
  const double* base = in.data();
  double* dst = out.data();
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1)
  for (int j = 0; j < n; ++j) {
    const Neighbours y = neighbours(j, n, grid.boundary);
    const double* row = base + static_cast<std::size_t>(j) * n;
    const double* down = base + static_cast<std::size_t>(y.lo) * n;
    const double* up = base + static_cast<std::size_t>(y.hi) * n;
    for (int i = 0; i < n; ++i) {
      dst[grid.index(i, j)] =
          stencil(row, down, up, i, neighbours(i, n, grid.boundary), inv_dx2);
    }
  }
}

CglOperator::CglOperator(const GridSpec& grid, const Params& params, int threads)
    : grid_(grid), params_(params), threads_(threads < 1 ? 1 : threads) {
  grid_.validate();
  params_.validate(grid_);
  source_.resize(grid_.cells());
  for (int j = 0; j < grid_.n; ++j) {
    for (int i = 0; i < grid_.n; ++i) {
      source_[grid_.index(i, j)] =
          source_coefficient(params_, grid_, grid_.coord(i), grid_.coord(j));
    }
  }
}

void CglOperator::apply(std::span<const double> re, std::span<const double> im,
                        std::span<double> dre, std::span<double> dim) const {
  const int n = grid_.n;
  const double inv_dx2 = 1.0 / (grid_.dx() * grid_.dx());
  const double nu = params_.nu1;
  const double c1 = params_.c1;
  const double c2 = params_.c2;
  const double alpha = params_.alpha1;
  const double* src = source_.data();
  const double* pr = re.data();
  const double* pi = im.data();
  double* out_r = dre.data();
  double* out_i = dim.data();
  const Boundary b = grid_.boundary;

#pragma omp parallel for schedule(static) num_threads(threads_) if (threads_ > 1)
  for (int j = 0; j < n; ++j) {
    const Neighbours y = neighbours(j, n, b);
    const std::size_t row = static_cast<std::size_t>(j) * n;
    const double* rr = pr + row;
    const double* ri = pi + row;
    const double* dr = pr + static_cast<std::size_t>(y.lo) * n;
    const double* di = pi + static_cast<std::size_t>(y.lo) * n;
    const double* ur = pr + static_cast<std::size_t>(y.hi) * n;
    const double* ui = pi + static_cast<std::size_t>(y.hi) * n;
    for (int i = 0; i < n; ++i) {
      const Neighbours x = neighbours(i, n, b);
      const double lr = stencil(rr, dr, ur, i, x, inv_dx2);
      const double li = stencil(ri, di, ui, i, x, inv_dx2);
      const double a = rr[i];
      const double c = ri[i];
      const double amp2 = a * a + c * c;
      const double s = src[row + i];
      out_r[row + i] = nu * (lr - c1 * li) + s * a - alpha * amp2 * (a - c2 * c);
      out_i[row + i] = nu * (li + c1 * lr) + s * c - alpha * amp2 * (c + c2 * a);
    }
  }
}

FieldDerivative CglOperator::operator()(const VelocityField& field) const {
  if (!(field.grid == grid_)) {
    throw Error(ErrorCode::InvalidArgument, "field grid does not match operator");
  }
  FieldDerivative d;
  d.re.resize(grid_.cells());
  d.im.resize(grid_.cells());
  apply(field.re, field.im, d.re, d.im);
  return d;
}

FieldDerivative rhs(const VelocityField& field, const Params& params) {
  return CglOperator(field.grid, params)(field);
}

}  // namespace ktz
