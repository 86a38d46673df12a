#include <cmath>
#include <numbers>

#include "common/errors.hpp"
#include "common/quadrature.hpp"
#include "common/rng.hpp"
#include "doctest.h"
#include "geometry/geometry.hpp"
#include "geometry/laplace.hpp"
#include "geometry/mesh.hpp"
#include "geometry/meshgen.hpp"

using namespace zh;
using namespace zh::geometry;
using std::numbers::pi;

TEST_CASE("collar width") {
  const double l = 2.0 * std::asinh(1.0);
  CHECK(standard_collar_width(l) == doctest::Approx(l / 2).epsilon(1e-15));
  // series of asinh(1/sinh(x)) at x = 0.05 evaluated independently
  const double x = 0.05;
  const double s = x + x * x * x / 6 + std::pow(x, 5) / 120 + std::pow(x, 7) / 5040;
  const double w = std::log(1.0 / s + std::sqrt(1.0 / (s * s) + 1.0));
  CHECK(standard_collar_width(0.1) == doctest::Approx(w).epsilon(1e-14));
  CHECK_THROWS_AS(standard_collar_width(0.0), Error);
  CHECK_THROWS_AS(standard_collar_width(-1.0), Error);
}

TEST_CASE("collar width for short geodesics") {
  // width = log(4/l) + O(l^2); the approximation 2 log(2/l) is off by log(1/l)
  double prev = 1.0;
  for (double l : {1e-2, 1e-3, 1e-4}) {
    const double w = standard_collar_width(l);
    const double gap = std::abs(w - std::log(4.0 / l));
    CHECK(gap < l * l);
    CHECK(gap < prev);
    prev = gap;
    CHECK(w - 2.0 * std::log(2.0 / l) == doctest::Approx(std::log(l)).epsilon(1e-6));
  }
}

TEST_CASE("collar width decreases") {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    double a = rng.uniform(1e-3, 5.0), b = rng.uniform(1e-3, 5.0);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-9) continue;
    CHECK(standard_collar_width(a) > standard_collar_width(b));
  }
}

TEST_CASE("standard subcollars") {
  const auto s1 = standard_subcollar(0.1);
  CHECK(s1.kind == SubcollarKind::I);
  CHECK(s1.cylinder.l == 0.1);
  CHECK(s1.cylinder.A == doctest::Approx(0.2));
  CHECK(s1.cylinder.B == doctest::Approx(pi - 0.2));
  const auto s2 = standard_subcollar(0.1, SubcollarKind::II);
  CHECK(s2.cylinder.B == doctest::Approx(pi / 2));
  const auto s3 = standard_subcollar(0.1, SubcollarKind::III);
  CHECK(s3.half());
  CHECK(s3.cylinder.B == doctest::Approx(pi - 0.2));
  CHECK_THROWS_AS(standard_subcollar(pi / 4), Error);
  CHECK_THROWS_AS(standard_subcollar(1.0), Error);
}

TEST_CASE("collar cylinder area and curvature") {
  const CollarCylinder c(0.7, 0.4, 2.5);
  const auto q = quad::integrate([](double v) { return 1.0 / (std::sin(v) * std::sin(v)); }, c.A, c.B);
  CHECK(c.area() == doctest::Approx(0.7 * q.value).epsilon(1e-12));
  const auto [kA, kB] = c.boundary_curvatures();
  CHECK(kA == doctest::Approx(std::cos(0.4)));
  CHECK(kB == doctest::Approx(std::cos(pi - 2.5)));
  CHECK(c.total_gauss_curvature() + c.total_geodesic_curvature() == doctest::Approx(0.0).epsilon(1e-12));
  const auto r = c.reflected();
  CHECK(r.A == doctest::Approx(pi - 2.5));
  CHECK_THROWS_AS(CollarCylinder(0.5, 1.0, 1.0), Error);
  CHECK_THROWS_AS(CollarCylinder(0.5, 0.0, 1.0), Error);
}

TEST_CASE("conformal curvature of the collar factor") {
  const FlatCylinder base(0.5, 0.3, pi - 0.3);
  std::vector<double> v;
  for (int i = 0; i <= 50; ++i) v.push_back(0.3 + (pi - 0.6) * i / 50.0);
  for (double K : conformal_gauss_curvature(Profile::neg_log_sin(), base, v)) CHECK(std::abs(K + 1.0) < 1e-10);
  for (double K : conformal_gauss_curvature(Profile::neg_log_sin().without_derivatives(), base, v))
    CHECK(std::abs(K + 1.0) < 1e-6);
  for (double K : conformal_gauss_curvature(Profile::constant(0.0), base, v)) CHECK(K == 0.0);
  for (double K : conformal_gauss_curvature(Profile::constant(0.8), base, v)) CHECK(K == 0.0);

  const auto [kA, kB] = conformal_geodesic_curvature(Profile::neg_log_sin(), base);
  CHECK(kA == doctest::Approx(std::cos(0.3)).epsilon(1e-12));
  CHECK(kB == doctest::Approx(std::cos(0.3)).epsilon(1e-12));
  // finite-difference normal derivative
  const double A = 0.3, e = 1e-5;
  const auto psi = [](double x) { return -std::log(std::sin(x)); };
  const double dn = -(psi(A + e) - psi(A - e)) / (2 * e);
  CHECK(std::exp(-psi(A)) * dn == doctest::Approx(kA).epsilon(1e-8));
  const FlatCylinder mid(0.5, 1.0, pi / 2);
  CHECK(std::abs(conformal_geodesic_curvature(Profile::neg_log_sin(), mid).second) < 1e-12);
  const auto [k0a, k0b] = conformal_geodesic_curvature(Profile::constant(0.0), base);
  CHECK(k0a == 0.0);
  CHECK(k0b == 0.0);
}

TEST_CASE("trace asymptotics") {
  const auto hyp = trace_asymptotics(1.0, 3.0, -1.0, 0.0);
  CHECK(hyp.c1 == doctest::Approx(1 / (4 * pi)));
  CHECK(hyp.c2 == doctest::Approx(-3.0 / (8 * std::sqrt(pi))));
  CHECK(hyp.c3 == doctest::Approx(-1 / (12 * pi)));
  const auto flat = trace_asymptotics(FlatCylinder(2.0, 0.0, 3.0));
  CHECK(flat.c1 == doctest::Approx(6.0 / (4 * pi)));
  CHECK(flat.c2 == doctest::Approx(-4.0 / (8 * std::sqrt(pi))));
  CHECK(flat.c3 == 0.0);
  const CollarCylinder c(0.5, 1.0, pi - 1.0);
  const auto cc = trace_asymptotics(c);
  CHECK(cc.c1 == doctest::Approx(c.area() / (4 * pi)));
  CHECK(cc.c3 == doctest::Approx(0.0).epsilon(1e-14));
  const auto rect = trace_asymptotics(FlatRectangle{1.0, 2.0});
  CHECK(rect.c1 == doctest::Approx(2.0 / (4 * pi)));
  CHECK(rect.c2 == doctest::Approx(-6.0 / (8 * std::sqrt(pi))));
  CHECK_FALSE(rect.c3_known);
  const auto iv = trace_asymptotics(WeightedInterval(0.0, pi));
  CHECK(iv.c1 == 0.0);
  CHECK(iv.c2 == doctest::Approx(pi / std::sqrt(4 * pi)));
  CHECK(iv.c3 == doctest::Approx(-0.5));
}

TEST_CASE("flat cylinder with the collar factor is the collar") {
  const FlatCylinder f(0.5, 1.0, pi - 1.0, Profile::neg_log_sin());
  const CollarCylinder c(0.5, 1.0, pi - 1.0);
  CHECK(f.area() == doctest::Approx(c.area()).epsilon(1e-10));
  CHECK(f.boundary_length() == doctest::Approx(c.boundary_length()).epsilon(1e-12));
  for (double v : {1.0, 1.3, 2.0}) CHECK(std::exp(2 * f.factor(v)) == doctest::Approx(1 / std::pow(std::sin(v), 2)));
}

TEST_CASE("mesh Gauss-Bonnet and topology") {
  const auto pants = pants_mesh(0.1);
  CHECK(pants.euler_characteristic() == -1);
  CHECK(pants.boundary_loops().size() == 3);
  CHECK(std::abs(pants.gauss_bonnet_defect()) < 1e-10);
  const auto ann = annulus_mesh(1.0, 2.0, 48, 10);
  CHECK(ann.euler_characteristic() == 0);
  CHECK(std::abs(ann.gauss_bonnet_defect()) < 1e-10);
  CHECK(ann.area() == doctest::Approx(3 * pi).epsilon(0.01));
  const auto cyl = cylinder_mesh(0.5, 1.0, pi - 1.0, 16, 24, Profile::neg_log_sin());
  CHECK(cyl.euler_characteristic() == 0);
  CHECK(std::abs(cyl.gauss_bonnet_defect()) < 1e-10);
  Eigen::VectorXd u(pants.vertex_count());
  for (int i = 0; i < u.size(); ++i) {
    const auto& p = pants.vertices()[i];
    u[i] = 0.4 * std::sin(3 * p.x()) * std::cos(2 * p.y());
  }
  CHECK(std::abs(pants.conformally_rescaled(u).gauss_bonnet_defect()) < 1e-10);
}

TEST_CASE("mesh text round trip") {
  const auto ann = annulus_mesh(1.0, 2.0, 12, 3);
  const auto back = parse_mesh(format_mesh(ann));
  CHECK(back.vertex_count() == ann.vertex_count());
  CHECK(back.triangle_count() == ann.triangle_count());
  CHECK(back.area() == doctest::Approx(ann.area()).epsilon(1e-12));
  const char* square =
      "4 5 2\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 1 2\n0 2 3\nloop 4 0 1 2 3\n";
  const auto sq = parse_mesh(square);
  CHECK(sq.area() == doctest::Approx(1.0));
  CHECK(sq.boundary_length() == doctest::Approx(4.0));
  CHECK(sq.euler_characteristic() == 1);
  CHECK_THROWS_AS(parse_mesh("3 3 1\n0 0 0\n1 0 0\n"), Error);
}

TEST_CASE("cotangent Laplacian") {
  const auto mesh = pants_mesh(0.12);
  const auto lap = DiscreteLaplace::assemble(mesh);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(mesh.vertex_count());
  CHECK((lap.stiffness * one).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(lap.mass.sum() == doctest::Approx(mesh.area()).epsilon(1e-12));
  CHECK(lap.boundary_mass.sum() == doctest::Approx(mesh.boundary_length()).epsilon(1e-12));
  // linear functions have energy equal to area times |grad|^2 / 2
  Eigen::VectorXd x(mesh.vertex_count());
  for (int i = 0; i < x.size(); ++i) x[i] = mesh.vertices()[i].x();
  CHECK(lap.dirichlet_energy(x) == doctest::Approx(0.5 * mesh.area()).epsilon(1e-10));
}
