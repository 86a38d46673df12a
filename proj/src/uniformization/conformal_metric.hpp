#pragma once

#include <Eigen/Core>
#include <memory>

#include "geometry/laplace.hpp"
#include "geometry/mesh.hpp"

namespace zh::uniform {

using geometry::DiscreteLaplace;
using geometry::MetricSurface;

// The metric e^{2u} g on a fixed base triangulation. Integrated curvature,
// vertex areas and boundary lengths follow the discrete conformal rules
// kappa_u = kappa + S u, M_u = M e^{2u}, l_u = l e^{u}, so Gauss-Bonnet is
// preserved exactly.
class ConformalMetric {
 public:
  explicit ConformalMetric(const MetricSurface& base);
  ConformalMetric(std::shared_ptr<const MetricSurface> base, std::shared_ptr<const DiscreteLaplace> laplace,
                  Eigen::VectorXd u);

  const MetricSurface& base() const { return *base_; }
  const DiscreteLaplace& laplace() const { return *laplace_; }
  const Eigen::SparseMatrix<double>& stiffness() const { return laplace_->stiffness; }
  const Eigen::VectorXd& u() const { return u_; }
  int vertex_count() const { return base_->vertex_count(); }
  int euler_characteristic() const { return base_->euler_characteristic(); }

  // Same base, factor u + du.
  ConformalMetric rescaled(const Eigen::VectorXd& du) const;
  ConformalMetric rescaled(double c) const;
  ConformalMetric with_factor(Eigen::VectorXd u) const;

  Eigen::VectorXd curvature() const;
  Eigen::VectorXd mass() const;
  Eigen::VectorXd boundary_weights() const;
  double area() const;
  double boundary_length() const;
  double gauss_bonnet_defect() const;

  // Edge lengths of e^{2u} g realized on the triangulation, for checks that
  // do not rely on the conformal rules above.
  MetricSurface realized() const;

 private:
  std::shared_ptr<const MetricSurface> base_;
  std::shared_ptr<const DiscreteLaplace> laplace_;
  Eigen::VectorXd u_;
  Eigen::VectorXd kappa0_;
};

}  // namespace zh::uniform
