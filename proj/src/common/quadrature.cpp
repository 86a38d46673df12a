#include "common/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "common/errors.hpp"

namespace zh::quad {

Rule gauss_legendre(int n) {
  require(n >= 1, ErrorCode::InvalidArgument, "gauss_legendre: n must be positive");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    const double theta = std::numbers::pi * (i + 0.75) / (n + 0.5);
    double x = std::cos(theta) * (1.0 - (n - 1.0) / (8.0 * n * n * n));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = c + h * r.nodes[i];
    r.weights[i] *= h;
  }
  return r;
}

namespace {

void adapt(const std::function<double(double)>& f, double a, double b, double whole, double rel_tol, double abs_tol,
           double noise, unsigned depth, Result& acc) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
  if (depth == 0 || err <= std::max({abs_tol, rel_tol * std::abs(whole), noise * (b - a)})) {
    acc.value += v;
    acc.error += err;
    return;
  }
  const double m = 0.5 * (a + b);
  // halve the absolute tolerance so the pieces add up to it
  adapt(f, a, m, whole, rel_tol, 0.5 * abs_tol, noise, depth - 1, acc);
  adapt(f, m, b, whole, rel_tol, 0.5 * abs_tol, noise, depth - 1, acc);
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, double tol, unsigned max_depth,
                 double abs_tol, double noise) {
  double err = 0.0;
  const double whole = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &err);
  Result r;
  adapt(f, a, b, whole, tol, abs_tol, noise, max_depth, r);
  return r;
}

}  // namespace zh::quad
