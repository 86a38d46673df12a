#include "geometry/geometry.hpp"

#include <cmath>

#include "common/constants.hpp"
#include "common/errors.hpp"
#include "common/quadrature.hpp"

namespace zh::geometry {

using constants::pi;

namespace {

// Endpoints closer than this to 0 or pi make the collar metric singular.
constexpr double kSingularMargin = 1e-12;

void check_collar(double l, double A, double B) {
  require(std::isfinite(l) && l > 0.0, ErrorCode::Domain, "collar: l must be positive");
  require(std::isfinite(A) && std::isfinite(B) && A < B, ErrorCode::Domain, "collar: need A < B");
  require(A > kSingularMargin && B < pi - kSingularMargin, ErrorCode::Domain,
          "collar: need 0 < A < B < pi away from the singular ends");
}

}  // namespace

WeightedInterval::WeightedInterval(double a_, double b_, Profile phi_) : a(a_), b(b_), phi(std::move(phi_)) {
  require(std::isfinite(a) && std::isfinite(b) && a < b, ErrorCode::Domain, "interval: need a < b");
  require(std::isfinite(phi(a)) && std::isfinite(phi(b)), ErrorCode::Domain, "interval: weight not finite at ends");
}

double WeightedInterval::metric_length() const {
  const Profile& p = phi;
  return quad::integrate([&p](double x) { return std::exp(p(x)); }, a, b).value;
}

CollarCylinder::CollarCylinder(double l_, double A_, double B_) : l(l_), A(A_), B(B_) { check_collar(l, A, B); }

double CollarCylinder::area() const { return l * (1.0 / std::tan(A) - 1.0 / std::tan(B)); }

double CollarCylinder::boundary_length() const { return l / std::sin(A) + l / std::sin(B); }

std::pair<double, double> CollarCylinder::boundary_curvatures() const { return {std::cos(A), -std::cos(B)}; }

double CollarCylinder::total_geodesic_curvature() const {
  const auto [kA, kB] = boundary_curvatures();
  return kA * l / std::sin(A) + kB * l / std::sin(B);
}

double CollarCylinder::circumference(double v) const { return l / std::sin(v); }

CollarCylinder CollarCylinder::reflected() const { return CollarCylinder(l, pi - B, pi - A); }

HalfCollar::HalfCollar(CollarCylinder c) : base(c) {}

FlatCylinder::FlatCylinder(double l_, double A_, double B_, std::optional<Profile> psi_)
    : l(l_), A(A_), B(B_), psi(std::move(psi_)) {
  require(std::isfinite(l) && l > 0.0, ErrorCode::Domain, "flat cylinder: l must be positive");
  require(std::isfinite(A) && std::isfinite(B) && A < B, ErrorCode::Domain, "flat cylinder: need A < B");
}

double FlatCylinder::area() const {
  if (!psi) return l * (B - A);
  const Profile& p = *psi;
  return l * quad::integrate([&p](double v) { return std::exp(2.0 * p(v)); }, A, B).value;
}

double FlatCylinder::boundary_length() const { return l * (std::exp(factor(A)) + std::exp(factor(B))); }

FlatCylinder FlatCylinder::scaled(double lambda) const {
  require(lambda > 0.0, ErrorCode::Domain, "scale factor must be positive");
  std::optional<Profile> p;
  if (psi) {
    Profile q = *psi;
    p = Profile([q, lambda](double v) { return q(v / lambda); },
                [q, lambda](double v) { return q.d1(v / lambda) / lambda; },
                [q, lambda](double v) { return q.d2(v / lambda) / (lambda * lambda); }, q.name());
  }
  return FlatCylinder(lambda * l, lambda * A, lambda * B, p);
}

double standard_collar_width(double l) {
  require(std::isfinite(l) && l > 0.0, ErrorCode::Domain, "standard_collar_width: l must be positive");
  return std::asinh(1.0 / std::sinh(0.5 * l));
}

Subcollar standard_subcollar(double l, SubcollarKind kind) {
  require(std::isfinite(l) && l > 0.0 && l < pi / 4.0, ErrorCode::Domain,
          "standard_subcollar: need 0 < l < pi/4");
  switch (kind) {
    case SubcollarKind::II:
      require(2.0 * l < pi / 2.0, ErrorCode::Domain, "standard_subcollar: empty type II interval");
      return {kind, CollarCylinder(l, 2.0 * l, pi / 2.0)};
    case SubcollarKind::I:
    case SubcollarKind::III:
      break;
  }
  return {kind, CollarCylinder(l, 2.0 * l, pi - 2.0 * l)};
}

TraceCoefficients trace_asymptotics(double area, double boundary_length, double total_K, double total_k) {
  TraceCoefficients c;
  c.c1 = area / (4.0 * pi);
  c.c2 = -boundary_length / (8.0 * std::sqrt(pi));
  c.c3 = (total_K + total_k) / (12.0 * pi);
  return c;
}

TraceCoefficients trace_asymptotics(const CollarCylinder& c) {
  return trace_asymptotics(c.area(), c.boundary_length(), c.total_gauss_curvature(), c.total_geodesic_curvature());
}

TraceCoefficients trace_asymptotics(const FlatCylinder& c) {
  if (!c.psi) return trace_asymptotics(c.area(), c.boundary_length(), 0.0, 0.0);
  const Profile& p = *c.psi;
  // K dA = -psi'' du dv; k ds = (-psi'(A), +psi'(B)) du.
  const double total_K = -c.l * (p.d1(c.B) - p.d1(c.A));
  const double total_k = c.l * (p.d1(c.B) - p.d1(c.A));
  return trace_asymptotics(c.area(), c.boundary_length(), total_K, total_k);
}

TraceCoefficients trace_asymptotics(const FlatRectangle& r) {
  require(r.a > 0.0 && r.b > 0.0, ErrorCode::Domain, "rectangle: sides must be positive");
  TraceCoefficients c = trace_asymptotics(r.a * r.b, 2.0 * (r.a + r.b), 0.0, 0.0);
  c.c3 = 0.0;
  c.c3_known = false;
  return c;
}

TraceCoefficients trace_asymptotics(const WeightedInterval& iv) {
  TraceCoefficients c;
  c.c1 = 0.0;
  c.c2 = iv.metric_length() / std::sqrt(4.0 * pi);
  c.c3 = -0.5;
  return c;
}

std::vector<double> conformal_gauss_curvature(const Profile& psi, const FlatCylinder& base,
                                              const std::vector<double>& v) {
  std::vector<double> K(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i];
    require(x >= base.A && x <= base.B, ErrorCode::Domain, "conformal_gauss_curvature: point outside cylinder");
    const double e0 = std::exp(-2.0 * base.factor(x));
    const double K0 = base.psi ? -e0 * base.psi->d2(x) : 0.0;
    const double lap0 = -e0 * psi.d2(x);
    K[i] = std::exp(-2.0 * psi(x)) * (lap0 + K0);
  }
  return K;
}

std::pair<double, double> conformal_geodesic_curvature(const Profile& psi, const FlatCylinder& base) {
  auto side = [&](double v, double sign) {
    const double e0 = std::exp(-base.factor(v));
    const double k0 = base.psi ? sign * e0 * base.psi->d1(v) : 0.0;
    const double dn = sign * e0 * psi.d1(v);
    return std::exp(-psi(v)) * (k0 + dn);
  };
  return {side(base.A, -1.0), side(base.B, 1.0)};
}

}  // namespace zh::geometry
