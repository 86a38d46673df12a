#include <cmath>
#include <memory>
#include <numbers>

#include "common/errors.hpp"
#include "common/rng.hpp"
#include "doctest.h"
#include "geometry/geometry.hpp"
#include "spectral_zeta/flat_traces.hpp"
#include "spectral_zeta/heat_trace.hpp"
#include "spectral_zeta/zeta.hpp"
#include "sturm_liouville/mode_trace.hpp"

using namespace zh;
using namespace zh::zeta;
using zh::geometry::FlatCylinder;
using zh::geometry::WeightedInterval;
using std::numbers::pi;

namespace {
// zeta(s) = (L/pi)^{2s} zeta_R(2s) with zeta_R(0) = -1/2, zeta_R'(0) = -log(2 pi)/2.
double interval_oracle(double L) { return 2 * std::log(L / pi) * -0.5 + 2 * (-0.5 * std::log(2 * pi)); }

double double_sum(double t, double l, double b) {
  double s = 0.0;
  for (int m = -60; m <= 60; ++m)
    for (int k = 1; k <= 200; ++k) s += std::exp(-t * (std::pow(2 * pi * m / l, 2) + std::pow(pi * k / b, 2)));
  return s;
}
}  // namespace

TEST_CASE("interval determinant") {
  for (double L : {0.5, 1.0, 2.0, pi - 0.2}) {
    const auto h = zeta_prime_at_zero(interval_heat_trace(L));
    CHECK(std::abs(h.value - interval_oracle(L)) < 1e-6);
    CHECK(interval_zeta_prime(L) == doctest::Approx(interval_oracle(L)).epsilon(1e-14));
    CHECK(h.zeta_at_zero == doctest::Approx(-0.5));
  }
  CHECK(std::abs(zeta_prime_at_zero(interval_heat_trace(0.5)).value) < 1e-6);
}

TEST_CASE("interval of length pi - 4l") {
  for (double l : {0.02, 0.1, 0.3}) {
    const double L = pi - 4 * l;
    const double expected = 2 * std::log(L / pi) * -0.5 + 2 * (-0.5 * std::log(2 * pi));
    CHECK(std::abs(zeta_prime_at_zero(interval_heat_trace(L)).value - expected) < 1e-6);
  }
}

TEST_CASE("split point invariance") {
  const auto trace = interval_heat_trace(1.3);
  ZetaOptions a, b;
  a.T = 0.5;
  b.T = 1.0;
  CHECK(std::abs(zeta_prime_at_zero(trace, a).value - zeta_prime_at_zero(trace, b).value) < 1e-8);
  const auto cyl = flat_cylinder_heat_trace(FlatCylinder(0.9, 0.0, 1.4));
  for (double T : {0.2, 0.7, 2.0}) {
    ZetaOptions o;
    o.T = T;
    CHECK(std::abs(zeta_prime_at_zero(cyl, o).value - zeta_prime_at_zero(cyl).value) < 1e-8);
  }
}

TEST_CASE("flat cylinder determinant") {
  // high-precision Mellin values computed independently
  CHECK(flat_cylinder_zeta_prime(1.0, 1.0) == doctest::Approx(0.354057345357849638).epsilon(1e-13));
  CHECK(flat_cylinder_zeta_prime(0.5, 2.0) == doctest::Approx(2.109348663106555056).epsilon(1e-13));
  const auto h = zeta_prime_at_zero(flat_cylinder_heat_trace(FlatCylinder(1.0, 0.0, 1.0)));
  CHECK(std::abs(h.value - 0.354057345357849638) < 1e-7);
  CHECK(std::abs(h.zeta_at_zero) < 1e-14);
}

TEST_CASE("flat cylinder trace matches the double spectrum") {
  for (double t : {0.05, 0.3, 1.0})
    CHECK(std::abs(flat_cylinder_theta(t, 1.1, 0.9) - double_sum(t, 1.1, 0.9)) < 1e-10);
}

TEST_CASE("product of mode traces") {
  const double l = 1.0, b = 1.0, t = 0.1;
  ModeSum sum;
  sl::TracePlan plan;
  plan.t_min = 0.05;
  for (int m = 0; m <= 4; ++m) {
    sum.modes.push_back(std::make_shared<const sl::ModeTrace>(
        sl::plan_mode_trace(sl::ModeProblem::conformal_flat(FlatCylinder(l, 0.0, b), m), plan)));
    sum.factors.push_back(m == 0 ? 1.0 : 2.0);
  }
  const auto total = sum.evaluate(t);
  CHECK(std::abs(total.value - double_sum(t, l, b)) < 1e-10);
  std::vector<TraceEstimate> parts;
  for (const auto& m : sum.modes) parts.push_back(m->trace(t));
  CHECK(combine_modes(parts).value == doctest::Approx(total.value).epsilon(1e-14));
  // long circumference: higher modes vanish at fixed t
  const double t2 = 1.0, l2 = 0.05;
  const auto zero = sl::mode_heat_trace(sl::ModeProblem::conformal_flat(FlatCylinder(l2, 0.0, b), 0), t2);
  CHECK(std::abs(flat_cylinder_theta(t2, l2, b) - zero.value) < 1e-12);
}

TEST_CASE("one-dimensional Polyakov formula") {
  const double Z0 = interval_oracle(2.0);
  CHECK(one_d_polyakov(WeightedInterval(0.0, 2.0)) == doctest::Approx(Z0));
  CHECK(one_d_polyakov(WeightedInterval(0.0, 2.0, Profile::constant(0.7))) == doctest::Approx(Z0 - 0.7));
  for (double l : {0.05, 0.1}) {
    const WeightedInterval iv(2 * l, pi - 2 * l, Profile::neg_log_sin());
    const double closed = std::log(std::sin(2 * l)) + interval_oracle(pi - 4 * l);
    CHECK(one_d_polyakov(iv) == doctest::Approx(closed).epsilon(1e-13));
    CHECK(std::abs(one_d_zeta_prime_spectral(iv).value - closed) < 1e-5);
  }
  Rng rng(17);
  for (int k = 0; k < 4; ++k) {
    const double a = rng.uniform(0.0, 0.5), b = a + rng.uniform(0.8, 2.5);
    const double c = rng.uniform(-0.5, 0.5);
    const std::vector<double> amp{rng.uniform(-0.4, 0.4), rng.uniform(-0.2, 0.2)};
    const std::vector<double> phase{rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi)};
    const WeightedInterval iv(a, b, Profile::trig(c, amp, phase, a, b));
    CHECK(std::abs(one_d_zeta_prime_spectral(iv).value - one_d_polyakov(iv)) < 1e-5);
  }
}

TEST_CASE("small-t coefficient fits") {
  const auto iv = fit_small_t_coefficients(interval_heat_trace(pi));
  CHECK(iv.c.c1 == 0.0);
  CHECK(iv.c.c2 == doctest::Approx(pi / std::sqrt(4 * pi)).epsilon(1e-6));
  CHECK(iv.c.c3 == doctest::Approx(-0.5).epsilon(1e-6));
  const FlatCylinder c(1.2, 0.0, 0.9);
  const auto fit = fit_small_t_coefficients(flat_cylinder_heat_trace(c));
  CHECK(fit.c.c1 == doctest::Approx(1.2 * 0.9 / (4 * pi)).epsilon(0.01));
  CHECK(fit.c.c2 == doctest::Approx(-2 * 1.2 / (8 * std::sqrt(pi))).epsilon(0.01));
  CHECK(std::abs(fit.c.c3) < 0.01 / 6);
}

TEST_CASE("a wrong constant term is a consistency error") {
  auto c = geometry::trace_asymptotics(WeightedInterval(0.0, 1.0));
  c.c3 += 0.01;
  const auto bad = interval_heat_trace(1.0).with_coefficients(c);
  try {
    zeta_prime_at_zero(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Consistency);
  }
}

TEST_CASE("samples and CSV") {
  const auto tr = interval_heat_trace(1.0);
  const auto s = tr.samples(1e-3, 10.0, 9);
  REQUIRE(s.size() == 9);
  for (size_t i = 1; i < s.size(); ++i) CHECK(s[i].theta < s[i - 1].theta);
  CHECK(s.front().t == doctest::Approx(1e-3));
  const auto csv = samples_to_csv(s);
  CHECK(csv.rfind("t,theta,err\r\n", 0) == 0);
  const auto g = log_grid(1e-4, 1.0, 5);
  CHECK(g[2] == doctest::Approx(1e-2));
}

TEST_CASE("height JSON record") {
  const auto h = zeta_prime_at_zero(interval_heat_trace(1.0));
  const auto j = h.to_json();
  CHECK(j.find("\"T\"") < j.find("\"error\""));
  CHECK(j.find("\"value\"") < j.find("\"zeta0\""));
}
