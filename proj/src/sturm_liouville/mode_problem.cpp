#include "sturm_liouville/mode_problem.hpp"

#include <algorithm>
#include <cmath>

#include "common/constants.hpp"
#include "common/errors.hpp"

namespace zh::sl {

using constants::pi;

ModeProblem::ModeProblem(ProblemKind kind, double a, double b, int m, double l, Profile phi)
    : kind_(kind), a_(a), b_(b), m_(m), l_(l), phi_(std::move(phi)) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, ErrorCode::Domain, "mode problem: need a < b");
  require(m >= 0, ErrorCode::Domain, "mode problem: mode must be nonnegative");
  require(kind == ProblemKind::QPhi || (std::isfinite(l) && l > 0.0), ErrorCode::Domain,
          "mode problem: circumference must be positive");
  require(std::isfinite(weight(a)) && std::isfinite(weight(b)) && weight(a) > 0.0 && weight(b) > 0.0,
          ErrorCode::Domain, "mode problem: weight must be finite and positive on the closed interval");
}

ModeProblem ModeProblem::q_phi(const geometry::WeightedInterval& iv) {
  return ModeProblem(ProblemKind::QPhi, iv.a, iv.b, 0, 1.0, iv.phi);
}

ModeProblem ModeProblem::delta_l_m(double l, double A, double B, int m) {
  require(A > 1e-12 && B < pi - 1e-12, ErrorCode::Domain,
          "Delta_l(m): endpoints within 1e-12 of 0 or pi make the metric singular");
  return ModeProblem(ProblemKind::DeltaLM, A, B, m, l, Profile::neg_log_sin());
}

ModeProblem ModeProblem::conformal_flat(const geometry::FlatCylinder& c, int m) {
  return ModeProblem(ProblemKind::ConformalFlat, c.A, c.B, m, c.l, c.psi ? *c.psi : Profile::constant(0.0));
}

double ModeProblem::mu2() const {
  if (kind_ == ProblemKind::QPhi) return 0.0;
  const double mu = 2.0 * pi * m_ / l_;
  return mu * mu;
}

double ModeProblem::weight(double x) const {
  if (kind_ == ProblemKind::DeltaLM) {
    const double s = std::sin(x);
    return 1.0 / (s * s);
  }
  return std::exp(2.0 * phi_(x));
}

double ModeProblem::log_weight_half(double x) const {
  if (kind_ == ProblemKind::DeltaLM) return -std::log(std::sin(x));
  return phi_(x);
}

double ModeProblem::density(double x, Measure m) const {
  return m == Measure::Operator ? weight(x) : std::sqrt(weight(x));
}

double ModeProblem::min_weight() const {
  double w = std::min(weight(a_), weight(b_));
  for (int i = 1; i < 512; ++i) w = std::min(w, weight(a_ + (b_ - a_) * i / 512.0));
  return w;
}

double ModeProblem::max_weight() const {
  double w = std::max(weight(a_), weight(b_));
  for (int i = 1; i < 512; ++i) w = std::max(w, weight(a_ + (b_ - a_) * i / 512.0));
  return w;
}

ModeProblem ModeProblem::restricted(double a, double b) const {
  require(a >= a_ && b <= b_ && a < b, ErrorCode::Domain, "restricted: subinterval outside the problem interval");
  ModeProblem p = *this;
  p.a_ = a;
  p.b_ = b;
  return p;
}

}  // namespace zh::sl
