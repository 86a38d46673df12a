#pragma once

#include <Eigen/Core>

#include "uniformization/conformal_metric.hpp"

namespace zh::uniform {

// Discrete Polyakov-Alvarez formula: h(e^{2 psi} sigma) from h(sigma) = h0.
// Energy from the stiffness matrix, curvature terms from the vertex defects
// (which carry both K dA and k ds), flux as the boundary sum of S psi.
double polyakov_alvarez_shift(const ConformalMetric& base, const Eigen::VectorXd& psi, double h0 = 0.0);

// Boundary flux of psi: sum over boundary vertices of (S psi)_b.
double discrete_flux(const ConformalMetric& base, const Eigen::VectorXd& psi);
// Boundary flux from the piecewise-linear gradient on boundary triangles.
double gradient_flux(const MetricSurface& mesh, const Eigen::VectorXd& psi);

// Factor with discrete Laplacian 1 inside, zero boundary values, shifted by a
// constant so that the area of e^{2 psi} tau is -2 pi chi.
Eigen::VectorXd inequality_factor(const ConformalMetric& tau);

struct HeightInequality {
  double lhs = 0.0;             // h(e^{2 psi} tau)
  double rhs = 0.0;             // chi / 2 + h(tau)
  double slack = 0.0;           // lhs - rhs
  bool holds = false;
  double energy = 0.0;          // integral of |grad psi|^2
  double mean_term = 0.0;       // integral of 2 psi dA / A
  double log_term = 0.0;        // log(integral of e^{2 psi} dA / A)
  bool jensen_holds = false;
  double flux = 0.0;            // sum of (S psi)_b
  double flux_gradient = 0.0;   // from boundary-triangle gradients
  double flux_target = 0.0;     // 2 pi chi
};

// Requires chi < 0, area -2 pi chi, interior curvature -1 within tol, and
// psi of the form produced by inequality_factor.
HeightInequality height_inequality_check(const ConformalMetric& tau, const Eigen::VectorXd& psi, double h_tau = 0.0,
                                         double tol = 1e-6);

}  // namespace zh::uniform
