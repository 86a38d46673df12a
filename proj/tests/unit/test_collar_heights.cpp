#include <cmath>
#include <numbers>

#include "collar_heights/collar_heights.hpp"
#include "common/errors.hpp"
#include "common/quadrature.hpp"
#include "doctest.h"
#include "spectral_zeta/flat_traces.hpp"

using namespace zh;
using namespace zh::collar;
using zh::geometry::CollarCylinder;
using zh::geometry::FlatCylinder;
using zh::geometry::HalfCollar;
using zh::geometry::SubcollarKind;
using std::numbers::pi;

TEST_CASE("Polyakov-Alvarez shift of the collar factor") {
  const CollarCylinder c(0.4, 0.7, 2.6);
  // energy l int cot^2, flux l (cot A - cot B)
  const auto e = quad::integrate([](double v) { return 1.0 / std::pow(std::tan(v), 2); }, c.A, c.B);
  const double flux = c.l * (1 / std::tan(c.A) - 1 / std::tan(c.B));
  const double expected = c.l * e.value / (12 * pi) + flux / (4 * pi);
  CHECK(collar_shift(c) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(flat_cylinder_shift(FlatCylinder(c.l, c.A, c.B), Profile::neg_log_sin()) ==
        doctest::Approx(expected).epsilon(1e-10));
  // constant factors do not change the height of a cylinder
  CHECK(std::abs(flat_cylinder_shift(FlatCylinder(1.0, 0.0, 2.0), Profile::constant(0.6))) < 1e-14);
}

TEST_CASE("conformal route") {
  const CollarCylinder c(0.5, 1.0, pi - 1.0);
  const auto h = collar_height_conformal(c);
  CHECK(h.value == doctest::Approx(zeta::flat_cylinder_zeta_prime(c.l, c.B - c.A) + collar_shift(c)).epsilon(1e-7));
  CHECK(h.zeta_at_zero == 0.0);
}

TEST_CASE("collar height is reflection invariant and pure") {
  const CollarCylinder c(0.3, 0.5, pi / 2);
  const auto a = collar_height(c, Route::Conformal);
  const auto b = collar_height(c.reflected(), Route::Conformal);
  CHECK(a.best().value == doctest::Approx(b.best().value).epsilon(1e-10));
  const auto again = collar_height(c, Route::Conformal);
  CHECK(again.best().value == a.best().value);
  CHECK(again.Z_prime_0 == a.Z_prime_0);
}

TEST_CASE("direct route agrees with the conformal route") {
  const CollarCylinder c(0.5, 1.0, pi - 1.0);
  const auto r = collar_height(c, Route::Both);
  REQUIRE(r.h_direct);
  REQUIRE(r.h_conformal);
  CHECK(std::abs(r.h_direct->value - r.h_conformal->value) < 1e-4);
  CHECK(r.route_difference == doctest::Approx(std::abs(r.h_direct->value - r.h_conformal->value)));
  CHECK(std::abs(2 * r.h_half - r.h_direct->value + r.Z_prime_0) < 1e-12);
}

TEST_CASE("half collar identity") {
  const CollarCylinder c(0.3, 0.5, 2.0);
  const auto r = half_collar_height(HalfCollar(c));
  CHECK(std::abs(2 * r.identity.value + r.Z_prime_0 - r.h_collar) < 1e-6);
  const double Z = std::log(std::sqrt(std::sin(c.A) * std::sin(c.B))) - std::log(2 * (c.B - c.A));
  CHECK(r.Z_prime_0 == doctest::Approx(Z).epsilon(1e-12));
  CHECK_THROWS_AS(HalfCollar(CollarCylinder(0.3, 1.0, 1.0)), Error);
}

TEST_CASE("leading terms") {
  const double l = 0.05;
  CHECK(leading_term(SubcollarKind::I, l, Leading::Stated) == doctest::Approx(pi * pi / (6 * l) + std::log(l)));
  CHECK(leading_term(SubcollarKind::II, l, Leading::Stated) == doctest::Approx(pi * pi / (12 * l) + std::log(l)));
  CHECK(leading_term(SubcollarKind::III, l, Leading::Stated) == doctest::Approx(pi * pi / (12 * l)));
  CHECK(leading_term(SubcollarKind::I, l, Leading::Corrected) == doctest::Approx(pi * pi / (3 * l) + std::log(l)));
  CHECK(leading_term(SubcollarKind::I, l, Leading::Stated, true) == doctest::Approx(pi * pi / (6 * l)));
}

TEST_CASE("short sweep") {
  const auto s = asymptotic_sweep(SubcollarKind::II, {0.05, 0.1}, Leading::Corrected);
  REQUIRE(s.rows.size() == 2);
  for (const auto& r : s.rows) CHECK(r.residual == doctest::Approx(r.h - r.leading));
  CHECK(s.spread == doctest::Approx(std::abs(s.rows[0].residual - s.rows[1].residual)));
  CHECK(sweep_to_csv(s).rfind("l,h,leading,residual,error\r\n", 0) == 0);
  CHECK_THROWS_AS(asymptotic_sweep(SubcollarKind::I, {0.5}), Error);
  CHECK_THROWS_AS(asymptotic_sweep(SubcollarKind::I, {}), Error);
}

TEST_CASE("insertion gap") {
  const double l = 0.1;
  const auto g = insertion_gap(l, 2 * l, pi - 2 * l, 0.5, pi - 0.5);
  CHECK(std::isfinite(g.gap));
  REQUIRE(g.pieces.size() == 4);
  CHECK(g.gap == doctest::Approx(g.pieces[0] - g.pieces[1] - g.pieces[2] - g.pieces[3]));
  const auto two = insertion_gap(l, 2 * l, pi - 2 * l, pi / 2, pi / 2);
  CHECK(std::isfinite(two.gap));
  CHECK(two.pieces.size() == 3);
  CHECK_THROWS_AS(insertion_gap(l, 1.0, 2.0, 0.5, 1.5), Error);
}
