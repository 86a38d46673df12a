#include <cmath>
#include <numbers>

#include "common/errors.hpp"
#include "common/quadrature.hpp"
#include "doctest.h"
#include "sturm_liouville/mode_problem.hpp"
#include "sturm_liouville/mode_trace.hpp"
#include "sturm_liouville/solver.hpp"

using namespace zh;
using namespace zh::sl;
using zh::geometry::FlatCylinder;
using zh::geometry::WeightedInterval;
using std::numbers::pi;

namespace {
double direct_sum(double t, int terms) {
  double s = 0.0;
  for (int k = 1; k <= terms; ++k) s += std::exp(-t * k * k);
  return s;
}
}  // namespace

TEST_CASE("flat interval spectrum") {
  const double L = 1.7;
  const auto s = solve_mode(ModeProblem::q_phi(WeightedInterval(0.0, L)), 12, 64);
  REQUIRE(s.count() >= 12);
  for (int k = 0; k < 12; ++k) CHECK(s.eigenvalues[k] == doctest::Approx(std::pow(pi * (k + 1) / L, 2)).epsilon(1e-10));
}

TEST_CASE("collar mode ground state bound") {
  const double l = 0.5, A = 1.0, B = pi - 1.0;
  const int m = 3;
  const auto s = solve_mode(ModeProblem::delta_l_m(l, A, B, m), 4, 64);
  const double rho = std::pow(std::sin(A), 2);
  CHECK(s.eigenvalues[0] >= 4 * pi * pi * m * m / (l * l) * rho);
  for (int k = 1; k < s.count(); ++k) CHECK(s.eigenvalues[k] > s.eigenvalues[k - 1]);
}

TEST_CASE("flat separable spectrum") {
  const double l = 0.8, A = 0.2, B = 1.5;
  const int m = 2;
  const auto s = solve_mode(ModeProblem::conformal_flat(FlatCylinder(l, A, B), m), 8, 48);
  for (int k = 0; k < 8; ++k) {
    const double exact = std::pow(2 * pi * m / l, 2) + std::pow(pi * (k + 1) / (B - A), 2);
    CHECK(s.eigenvalues[k] == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("zero collar mode equals Q_phi with phi = -log sin") {
  const double A = 0.6, B = 2.3;
  const auto a = solve_mode(ModeProblem::delta_l_m(0.7, A, B, 0), 10, 80);
  const auto b = solve_mode(ModeProblem::q_phi(WeightedInterval(A, B, Profile::neg_log_sin())), 10, 80);
  for (int k = 0; k < 10; ++k) CHECK(a.eigenvalues[k] == doctest::Approx(b.eigenvalues[k]).epsilon(1e-10));
}

TEST_CASE("eigenfunctions are orthonormal in the operator measure") {
  const auto p = ModeProblem::delta_l_m(0.5, 0.8, 2.0, 1);
  const auto sys = solve_mode_system(p, 8, 64);
  const auto& x = sys.nodes();
  const auto& w = sys.weights();
  const auto& V = sys.node_values();
  double worst = 0.0;
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k) {
      double s = 0.0;
      for (int q = 0; q < x.size(); ++q) s += w[q] * p.weight(x[q]) * V(q, j) * V(q, k);
      worst = std::max(worst, std::abs(s - (j == k ? 1.0 : 0.0)));
    }
  CHECK(worst < 1e-8);
  CHECK(sys.weighted_norm(3, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("second-order convergence of the finite-difference stencil") {
  const auto p = ModeProblem::q_phi(WeightedInterval(0.5, 2.4, Profile::neg_log_sin()));
  const double exact = solve_mode(p, 3, 64).eigenvalues[2];
  SolverOptions fd;
  fd.method = Discretization::FiniteDifference2;
  double prev = 0.0;
  for (int n : {50, 101, 203, 407}) {
    const double err = std::abs(solve_mode_raw(p, 3, n, fd).eigenvalues[2] - exact);
    if (prev > 0.0) CHECK(std::log2(prev / err) > 1.9);
    prev = err;
  }
}

TEST_CASE("too coarse a grid is an accuracy error") {
  const auto p = ModeProblem::delta_l_m(0.5, 0.3, 2.8, 0);
  CHECK_THROWS_AS(solve_mode(p, 30, 32), AccuracyError);
}

TEST_CASE("singular endpoints are rejected") {
  CHECK_THROWS_AS(ModeProblem::delta_l_m(0.5, 1e-13, 1.0, 0), Error);
  CHECK_THROWS_AS(ModeProblem::delta_l_m(0.5, 1.0, pi - 1e-13, 0), Error);
  CHECK_THROWS_AS(ModeProblem::delta_l_m(0.5, 1.0, 0.9, 0), Error);
  CHECK_THROWS_AS(ModeProblem::delta_l_m(0.5, 0.5, 1.0, -1), Error);
}

TEST_CASE("heat trace of the flat interval") {
  const auto p = ModeProblem::q_phi(WeightedInterval(0.0, pi));
  const auto tr = mode_heat_trace(p, 1.0);
  CHECK(tr.value == doctest::Approx(direct_sum(1.0, 50)).epsilon(1e-12));
  CHECK(tr.value == doctest::Approx(0.386318).epsilon(1e-6));
  CHECK(tr.error() <= 1e-9);
  double prev = tr.value;
  for (double t : {2.0, 4.0, 8.0, 16.0}) {
    const double v = mode_heat_trace(p, t).value;
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("heat trace bound for large modes") {
  const double l = 0.5, A = 1.0, B = pi - 1.0, t = 0.01;
  const double rho = std::pow(std::sin(A), 2);
  for (int m : {4, 8, 12}) {
    const auto p = ModeProblem::delta_l_m(l, A, B, m);
    const double tr = mode_heat_trace(p, t).value;
    const double decay = std::exp(-t * 4 * pi * pi * m * m * rho / (l * l));
    CHECK(tr <= full_trace_bound(p, t));
    CHECK(full_trace_bound(p, t) <= decay * full_trace_bound(ModeProblem::delta_l_m(l, A, B, 0), t));
  }
}

TEST_CASE("modified trace") {
  const auto p = ModeProblem::q_phi(WeightedInterval(0.0, pi));
  const double t = 1.0;
  const auto one = modified_mode_trace(p, [](double) { return 1.0; }, t);
  CHECK(one.value == doctest::Approx(mode_heat_trace(p, t).value).epsilon(1e-12));
  CHECK(modified_mode_trace(p, [](double) { return 0.0; }, t).value == 0.0);
  // int_0^pi x sin^2(kx) dx = pi^2 / 4 for every k
  const auto q = quad::integrate([](double x) { return x * std::sin(3 * x) * std::sin(3 * x); }, 0.0, pi);
  CHECK(q.value == doctest::Approx(pi * pi / 4).epsilon(1e-12));
  const auto lin = modified_mode_trace(p, [](double x) { return x; }, t);
  CHECK(lin.value == doctest::Approx(pi / 2 * direct_sum(1.0, 50)).epsilon(1e-10));
}

TEST_CASE("counting bound dominates the spectrum") {
  const auto p = ModeProblem::delta_l_m(0.4, 0.5, 2.2, 1);
  const auto s = solve_mode(p, 40, 128);
  const CountingBound cb(p);
  for (int k = 0; k < s.count(); ++k) CHECK(cb.count(s.eigenvalues[k]) >= k + 1);
}
