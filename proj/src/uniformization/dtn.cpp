#include "uniformization/dtn.hpp"

#include "common/errors.hpp"

namespace zh::uniform {

DirichletNeumann::DirichletNeumann(const geometry::MetricSurface& mesh, const Eigen::SparseMatrix<double>& S)
    : boundary_(mesh.boundary_vertices()), interior_(mesh.interior_vertices()), n_(mesh.vertex_count()) {
  require(!boundary_.empty() && !interior_.empty(), ErrorCode::Topology,
          "Dirichlet-to-Neumann: need boundary and interior vertices");
  std::vector<int> local(n_, -1);
  for (std::size_t k = 0; k < interior_.size(); ++k) local[interior_[k]] = static_cast<int>(k);
  std::vector<int> blocal(n_, -1);
  for (std::size_t k = 0; k < boundary_.size(); ++k) blocal[boundary_[k]] = static_cast<int>(k);
  std::vector<Eigen::Triplet<double>> ii, ib;
  Eigen::MatrixXd Sbb = Eigen::MatrixXd::Zero(boundary_.size(), boundary_.size());
  for (int k = 0; k < S.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it) {
      const int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
      if (local[r] >= 0 && local[c] >= 0) ii.emplace_back(local[r], local[c], it.value());
      if (local[r] >= 0 && blocal[c] >= 0) ib.emplace_back(local[r], blocal[c], it.value());
      if (blocal[r] >= 0 && blocal[c] >= 0) Sbb(blocal[r], blocal[c]) += it.value();
    }
  }
  Sii_.resize(interior_.size(), interior_.size());
  Sii_.setFromTriplets(ii.begin(), ii.end());
  Sib_.resize(interior_.size(), boundary_.size());
  Sib_.setFromTriplets(ib.begin(), ib.end());
  solver_ = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(Sii_);
  require(solver_->info() == Eigen::Success, ErrorCode::Convergence,
          "Dirichlet-to-Neumann: interior stiffness block is singular");
  const Eigen::MatrixXd X = solver_->solve(Eigen::MatrixXd(Sib_));
  T_ = Sbb - Eigen::MatrixXd(Sib_.transpose()) * X;
}

Eigen::VectorXd DirichletNeumann::harmonic_extension(const Eigen::VectorXd& b) const {
  require(b.size() == boundary_size(), ErrorCode::InvalidArgument, "harmonic extension: size mismatch");
  const Eigen::VectorXd x = solver_->solve(-(Sib_ * b));
  Eigen::VectorXd u(n_);
  for (std::size_t k = 0; k < boundary_.size(); ++k) u[boundary_[k]] = b[k];
  for (std::size_t k = 0; k < interior_.size(); ++k) u[interior_[k]] = x[k];
  return u;
}

Eigen::VectorXd DirichletNeumann::dirichlet_solve(const Eigen::VectorXd& f) const {
  require(f.size() == static_cast<Eigen::Index>(interior_.size()), ErrorCode::InvalidArgument,
          "Dirichlet solve: size mismatch");
  const Eigen::VectorXd x = solver_->solve(f);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n_);
  for (std::size_t k = 0; k < interior_.size(); ++k) u[interior_[k]] = x[k];
  return u;
}

Eigen::VectorXd DirichletNeumann::restrict_to_boundary(const Eigen::VectorXd& u) const {
  Eigen::VectorXd b(boundary_.size());
  for (std::size_t k = 0; k < boundary_.size(); ++k) b[k] = u[boundary_[k]];
  return b;
}

}  // namespace zh::uniform
