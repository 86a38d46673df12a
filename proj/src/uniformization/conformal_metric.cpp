#include "uniformization/conformal_metric.hpp"

#include <cmath>

#include "common/constants.hpp"
#include "common/errors.hpp"

namespace zh::uniform {

ConformalMetric::ConformalMetric(const MetricSurface& base)
    : ConformalMetric(std::make_shared<const MetricSurface>(base),
                      std::make_shared<const DiscreteLaplace>(DiscreteLaplace::assemble(base)),
                      Eigen::VectorXd::Zero(base.vertex_count())) {}

ConformalMetric::ConformalMetric(std::shared_ptr<const MetricSurface> base,
                                 std::shared_ptr<const DiscreteLaplace> laplace, Eigen::VectorXd u)
    : base_(std::move(base)), laplace_(std::move(laplace)), u_(std::move(u)) {
  require(u_.size() == base_->vertex_count(), ErrorCode::InvalidArgument, "conformal metric: factor size mismatch");
  require(u_.allFinite(), ErrorCode::Domain, "conformal metric: factor must be finite");
  kappa0_ = Eigen::Map<const Eigen::VectorXd>(base_->curvature().data(), base_->vertex_count());
}

ConformalMetric ConformalMetric::rescaled(const Eigen::VectorXd& du) const { return with_factor(u_ + du); }

ConformalMetric ConformalMetric::rescaled(double c) const {
  return with_factor(u_ + Eigen::VectorXd::Constant(u_.size(), c));
}

ConformalMetric ConformalMetric::with_factor(Eigen::VectorXd u) const {
  return ConformalMetric(base_, laplace_, std::move(u));
}

Eigen::VectorXd ConformalMetric::curvature() const { return kappa0_ + laplace_->stiffness * u_; }

Eigen::VectorXd ConformalMetric::mass() const {
  return laplace_->mass.cwiseProduct((2.0 * u_).array().exp().matrix());
}

Eigen::VectorXd ConformalMetric::boundary_weights() const {
  return laplace_->boundary_mass.cwiseProduct(u_.array().exp().matrix());
}

double ConformalMetric::area() const { return mass().sum(); }
double ConformalMetric::boundary_length() const { return boundary_weights().sum(); }

double ConformalMetric::gauss_bonnet_defect() const {
  return curvature().sum() - 2.0 * constants::pi * euler_characteristic();
}

MetricSurface ConformalMetric::realized() const { return base_->conformally_rescaled(u_); }

}  // namespace zh::uniform
