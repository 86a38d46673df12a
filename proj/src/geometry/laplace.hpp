#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "geometry/mesh.hpp"

namespace zh::geometry {

// Piecewise-linear finite elements with cotangent weights, computed from
// edge lengths only.
struct DiscreteLaplace {
  Eigen::SparseMatrix<double> stiffness;  // positive semidefinite
  Eigen::VectorXd mass;                   // lumped vertex areas
  Eigen::VectorXd boundary_mass;          // arc length per vertex, zero inside

  static DiscreteLaplace assemble(const MetricSurface& mesh);
  double dirichlet_energy(const Eigen::VectorXd& u) const { return 0.5 * u.dot(stiffness * u); }
};

}  // namespace zh::geometry
