#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "geometry/laplace.hpp"
#include "geometry/mesh.hpp"

namespace zh::uniform {

// Discrete Dirichlet-to-Neumann operator: the Schur complement of the
// interior block of the cotangent stiffness matrix.
class DirichletNeumann {
 public:
  DirichletNeumann(const geometry::MetricSurface& mesh, const Eigen::SparseMatrix<double>& stiffness);

  const Eigen::MatrixXd& matrix() const { return T_; }
  const std::vector<int>& boundary() const { return boundary_; }
  const std::vector<int>& interior() const { return interior_; }
  int boundary_size() const { return static_cast<int>(boundary_.size()); }

  // Vertex function with the given boundary values, discretely harmonic inside.
  Eigen::VectorXd harmonic_extension(const Eigen::VectorXd& boundary_values) const;
  // Vertex function with zero boundary values and (S u)_i = f_i inside.
  Eigen::VectorXd dirichlet_solve(const Eigen::VectorXd& interior_rhs) const;
  Eigen::VectorXd restrict_to_boundary(const Eigen::VectorXd& u) const;

 private:
  std::vector<int> boundary_;
  std::vector<int> interior_;
  int n_ = 0;
  Eigen::SparseMatrix<double> Sii_;
  Eigen::SparseMatrix<double> Sib_;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> solver_;
  Eigen::MatrixXd T_;
};

}  // namespace zh::uniform
