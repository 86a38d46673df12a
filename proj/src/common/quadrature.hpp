#pragma once

#include <functional>
#include <vector>

namespace zh::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points on [-1, 1].
Rule gauss_legendre(int n);

// Same rule mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

struct Result {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on a finite interval; a panel is accepted when its
// error estimate is below max(abs_tol, tol * |integral|, noise * width).
// noise is the rounding level of f per unit length, for integrands that
// are differences of large terms.
Result integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13,
                 unsigned max_depth = 18, double abs_tol = 0.0, double noise = 0.0);

}  // namespace zh::quad
