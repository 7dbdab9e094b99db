#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ktz/error.hpp"
#include "ktz/regime.hpp"

using namespace ktz;

TEST_CASE("stability criterion examples") {
  const auto a = stability_criterion(0.0, 0.0, std::numbers::pi);
  CHECK(a.value == doctest::Approx(3.0));
  CHECK(a.bf_stable);
  CHECK_FALSE(stability_criterion(2.0, -1.0, 500.0).bf_stable);
  CHECK_FALSE(stability_criterion(1.0, 1.0, 500.0).bf_stable);
  CHECK_FALSE(stability_criterion(-1.0, 1.0, 500.0).bf_stable);
  CHECK(stability_criterion(0.9, 1.0, 500.0).bf_stable);
}

TEST_CASE("velocity bound examples") {
  CHECK(velocity_bound(1.0, 1.0, 0.0) == doctest::Approx(4.0));
  CHECK(velocity_bound(1.0, 4.0, 0.0) == doctest::Approx(1.0));
  CHECK(velocity_bound(1.0, 1.0, 1.5) == doctest::Approx(0.0));
  CHECK(velocity_bound(1.0, 1.0, 2.0) < 0.0);
  CHECK_THROWS_AS(velocity_bound(1.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(velocity_bound(-1.0, 1.0, 0.0), Error);
}

TEST_CASE("classification examples") {
  Params p;
  auto r = classify(p, 1);
  CHECK(r.predicted == Prediction::StableVortex);
  CHECK(r.charge_class == ChargeClass::Tornado);
  CHECK(r.twist == Twist::Right);
  CHECK(r.a2_ok);
  CHECK(*r.v_min_sq == doctest::Approx(4.0));

  CHECK(classify(p, 3).charge_class == ChargeClass::Cyclone);
  CHECK(classify(p, -3).charge_class == ChargeClass::Cyclone);
  CHECK(classify(p, 2).charge_class == ChargeClass::Tornado);

  r = classify(p, -1);
  CHECK(r.charge_class == ChargeClass::Tornado);
  CHECK(r.twist == Twist::Left);

  p.c1 = 2.0;
  p.c2 = -1.0;
  r = classify(p, 1);
  CHECK(r.predicted == Prediction::Unstable);
  CHECK(r.cc_product == doctest::Approx(-2.0));

  p = Params{};
  p.q = 0.0;
  CHECK(classify(p, 1).predicted == Prediction::Subcritical);
  p.q = -1.0;
  r = classify(p, 1);
  CHECK(r.predicted == Prediction::Subcritical);
  CHECK_FALSE(r.v_min_sq.has_value());
}

TEST_CASE("independent A2 check") {
  Params p;
  p.c2 = 0.5;
  CHECK(classify(p, 1, 0.4).a2_ok);
  CHECK_FALSE(classify(p, 1, 0.6).a2_ok);
}

TEST_CASE("classification is invariant to scaling q and alpha1 together") {
  for (double c1 : {-1.5, 0.0, 0.5, 2.0}) {
    for (double c2 : {-1.0, 0.25, 0.8}) {
      for (int m : {-3, -1, 1, 4}) {
        Params p;
        p.c1 = c1;
        p.c2 = c2;
        p.q = 0.7;
        p.alpha1 = 1.3;
        Params s = p;
        s.q *= 5.0;
        s.alpha1 *= 5.0;
        const auto a = classify(p, m);
        const auto b = classify(s, m);
        CHECK(a.bf_stable == b.bf_stable);
        CHECK(a.charge_class == b.charge_class);
        CHECK((a.criterion_value > 0) == (b.criterion_value > 0));
        CHECK(a.predicted == b.predicted);
      }
    }
  }
}

TEST_CASE("regime text") {
  Params p;
  p.c1 = 2.0;
  p.c2 = -1.0;
  const std::string text = format_regime(classify(p, 1), 1);
  CHECK(text.find("Unstable") != std::string::npos);
  CHECK(text.find("bf_stable") != std::string::npos);
}
