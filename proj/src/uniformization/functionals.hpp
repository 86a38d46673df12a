#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "uniformization/conformal_metric.hpp"
#include "uniformization/dtn.hpp"

namespace zh::uniform {

struct UniformizationResult {
  Eigen::VectorXd factor;  // relative to the input metric, after area rescaling
  double residual = 0.0;   // Euler-Lagrange residual in the dual norm
  int iterations = 0;
  double functional_value = 0.0;
  double constraint_violation = 0.0;  // of the constrained minimizer, before rescaling
  double area = 0.0;

  std::string to_json() const;
};

struct NewtonOptions {
  double tolerance = 1e-10;  // on the residual
  int max_iterations = 100;
  std::optional<Eigen::VectorXd> initial;  // vertex (F1) or boundary (F2) values
};

// F1(psi) = 1/2 psi^T S psi + sum kappa psi - pi chi log sum M e^{2 psi},
// relative to the metric `base` (which should have geodesic boundary).
double evaluate_F1(const ConformalMetric& base, const Eigen::VectorXd& psi);
Eigen::VectorXd gradient_F1(const ConformalMetric& base, const Eigen::VectorXd& psi);
// Damped Newton under sum M psi = 0, then psi += log(A / area) / 2.
UniformizationResult minimize_F1(const ConformalMetric& base, double A, const NewtonOptions& opts = {});

// F2(phi) = 1/2 phi^T T phi + sum kappa_b phi - 2 pi chi log sum l e^{phi}
// for boundary values phi, relative to a flat metric `base`.
double evaluate_F2(const ConformalMetric& base, const DirichletNeumann& dtn, const Eigen::VectorXd& phi);
Eigen::VectorXd gradient_F2(const ConformalMetric& base, const DirichletNeumann& dtn, const Eigen::VectorXd& phi);
// Newton under sum l phi = 0, harmonic extension, then area rescaling.
UniformizationResult minimize_F2(const ConformalMetric& base, double A, const NewtonOptions& opts = {});

}  // namespace zh::uniform
