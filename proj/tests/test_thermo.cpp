#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "ktz/error.hpp"
#include "ktz/thermo.hpp"

using namespace ktz;
using ktz::test::field_from;

TEST_CASE("s_dot is the sum of production and external flow") {
  const GridSpec g{64, 1000.0};
  Params p;
  p.nu1 = 30.0;
  p.basin = BasinProfile::Disk;
  const auto f = ktz::test::tanh_vortex(g, 40.0);
  const auto ef = entropy_fields(f, p);
  for (std::size_t k = 0; k < g.cells(); ++k) {
    CHECK(ef.s_dot[k] == ef.sigma_e[k] + ef.sigma_i[k]);
    CHECK(ef.sigma_i[k] >= 0.0);
  }
}

TEST_CASE("uniform plateau is entropy neutral") {
  const GridSpec g{32, 320.0, Boundary::Periodic};
  Params p;
  p.q = 2.0;
  p.alpha1 = 0.5;
  p.c2 = 0.9;
  const auto f = field_from(g, [](double, double) { return std::polar(2.0, 0.4); });
  const auto ef = entropy_fields(f, p);
  for (double s : ef.s_dot) CHECK(std::abs(s) < 1e-12);
  CHECK(entropy_scale(p) == doctest::Approx(8.0));
  CHECK_THROWS_AS(zone_boundary(ef, 1e-6 * entropy_scale(p)), Error);
}

TEST_CASE("zero field has no zone") {
  const GridSpec g{32, 320.0};
  const auto ef = entropy_fields(VelocityField::zeros(g), Params{});
  try {
    zone_boundary(ef, 0.0);
    FAIL("expected EmptyZone");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyZone);
  }
}

TEST_CASE("zone of a uniform field in a disk basin") {
  // With |Phi| = a and no gradient, s_dot = -q_local a^2 + alpha a^4 is negative
  // where q_local > a^2. For q = 1 the basin profile gives q_local = -s with
  // s = tanh((r - l0/2) / (4 dx)), so the edge sits at
  //   r* = l0/2 + 4 dx atanh(-a^2).
  const GridSpec g{128, 1000.0};
  Params p;
  p.basin = BasinProfile::Disk;
  p.l0 = 500.0;
  const double a = 0.5;
  const auto f = field_from(g, [&](double, double) { return std::complex<double>(a, 0.0); });
  const auto ef = entropy_fields(f, p);
  const Zone z = zone_boundary(ef);
  const double r_star = 0.5 * p.l0 + 4.0 * g.dx() * std::atanh(-a * a);
  CHECK(std::abs(z.diameter_m - 2.0 * r_star) < g.dx());
  CHECK(z.area_m2 == doctest::Approx(std::numbers::pi * r_star * r_star).epsilon(0.02));

  REQUIRE(!z.boundary.empty());
  double worst = 0.0;
  for (const Segment& s : z.boundary) {
    for (auto [x, y] : {std::pair{s.x0, s.y0}, std::pair{s.x1, s.y1}}) {
      worst = std::max(worst, std::abs(std::hypot(x - 500.0, y - 500.0) - r_star));
    }
  }
  CHECK(worst < 0.5 * g.dx());
}

TEST_CASE("total s_dot integrates over cell area") {
  const GridSpec g{16, 32.0};
  Params p;
  const auto f = field_from(g, [](double, double) { return std::complex<double>(0.5, 0.0); });
  const auto ef = entropy_fields(f, p);
  // s_dot = -0.25 + 0.0625 per cell, area 32^2
  CHECK(s_dot_total(ef) == doctest::Approx(-0.1875 * 1024.0));
}

TEST_CASE("zone is invariant to the common scaling of q and alpha1") {
  const GridSpec g{64, 1000.0};
  Params p;
  p.nu1 = 20.0;
  p.basin = BasinProfile::Disk;
  const auto f = ktz::test::tanh_vortex(g, 30.0, 1, 0.6);
  const Zone a = zone_boundary(entropy_fields(f, p), 1e-6 * entropy_scale(p));
  Params s = p;
  s.q *= 4.0;
  s.alpha1 *= 4.0;
  s.nu1 *= 4.0;
  const Zone b = zone_boundary(entropy_fields(f, s), 1e-6 * entropy_scale(s));
  CHECK(a.area_m2 == b.area_m2);
}
