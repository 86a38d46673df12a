#include "spectral_zeta/flat_traces.hpp"

#include <cmath>
#include <memory>

#include "common/constants.hpp"
#include "common/errors.hpp"

namespace zh::zeta {

using constants::pi;

double circle_theta(double t, double c) {
  require(t > 0.0 && c > 0.0, ErrorCode::Domain, "circle_theta: t and c must be positive");
  const double q = t * (2.0 * pi / c) * (2.0 * pi / c);
  if (q >= 1.0) {
    double s = 0.0;
    for (int n = 40; n >= 1; --n) s += std::exp(-q * n * n);
    return 1.0 + 2.0 * s;
  }
  // Poisson summation
  const double r = c * c / (4.0 * t);
  double s = 0.0;
  for (int n = 40; n >= 1; --n) s += std::exp(-r * n * n);
  return c / std::sqrt(4.0 * pi * t) * (1.0 + 2.0 * s);
}

double interval_theta(double t, double L) {
  const double q = t * (pi / L) * (pi / L);
  if (q >= 1.0) {
    double s = 0.0;
    for (int k = 40; k >= 1; --k) s += std::exp(-q * k * k);
    return s;
  }
  return 0.5 * (circle_theta(t, 2.0 * L) - 1.0);
}

double flat_cylinder_theta(double t, double l, double b) { return circle_theta(t, l) * interval_theta(t, b); }

double image_free_time(double period) { return period * period / (4.0 * 32.0); }

HeatTrace interval_heat_trace(double L, double floor) {
  require(L > 0.0, ErrorCode::Domain, "interval trace: length must be positive");
  const double t_fit = std::min(image_free_time(2.0 * L), 12.0 * floor);
  const double fl = std::min(floor, t_fit / 12.0);
  const geometry::TraceCoefficients c = geometry::trace_asymptotics(geometry::WeightedInterval(0.0, L));
  return HeatTrace("interval", c, 1, (pi / L) * (pi / L), fl, {fl, t_fit}, [L](double t) {
    TraceEstimate r;
    r.value = interval_theta(t, L);
    r.discretization = 4e-16 * (r.value + 1.0);
    return r;
  });
}

HeatTrace flat_cylinder_heat_trace(const geometry::FlatCylinder& c, double floor) {
  require(!c.psi, ErrorCode::InvalidArgument, "flat cylinder trace: the metric must be exactly flat");
  const double l = c.l, b = c.height();
  const double t_fit = std::min(image_free_time(l), image_free_time(2.0 * b));
  const double fl = floor > 0.0 ? std::min(floor, t_fit / 12.0) : t_fit / 12.0;
  return HeatTrace("flat cylinder", geometry::trace_asymptotics(c), 2, (pi / b) * (pi / b), fl, {fl, t_fit},
                   [l, b](double t) {
                     TraceEstimate r;
                     r.value = flat_cylinder_theta(t, l, b);
                     r.discretization = 1e-15 * (r.value + 1.0);
                     return r;
                   });
}

double interval_zeta_prime(double L) {
  require(L > 0.0, ErrorCode::Domain, "interval length must be positive");
  return -std::log(2.0 * L);
}

double flat_cylinder_zeta_prime(double l, double b) {
  require(l > 0.0 && b > 0.0, ErrorCode::Domain, "flat cylinder: l and b must be positive");
  // Kronecker-type formula: the m != 0 modes form a product over
  // sinh(2 pi |m| b / l), the m = 0 mode is the interval.
  const double q = 4.0 * pi * b / l;
  double s = 0.0;
  for (int m = 200; m >= 1; --m) s += std::log1p(-std::exp(-q * m));
  return -std::log(2.0 * b) + pi * b / (3.0 * l) + std::log(l) - 2.0 * s;
}

double one_d_polyakov(const geometry::WeightedInterval& iv) {
  return -0.5 * (iv.phi(iv.a) + iv.phi(iv.b)) + interval_zeta_prime(iv.length());
}

namespace {

Height one_d_spectral(const sl::ModeProblem& p, const geometry::TraceCoefficients& c, const SpectralOptions& o) {
  // the expansion runs in t e^{-2 phi}: a small weight needs a smaller floor
  const double t_min = o.t_min * std::min(1.0, p.min_weight());
  sl::TracePlan plan;
  plan.t_min = t_min;
  plan.budget = o.budget;
  plan.solver.method = o.method;
  auto mode = std::make_shared<const sl::ModeTrace>(sl::plan_mode_trace(p, plan));
  const HeatTrace h = heat_trace_of_mode("Q_phi", mode, c, t_min, {t_min, 12.0 * t_min});
  ZetaOptions zo;
  zo.T = o.T;
  zo.tolerance = o.tolerance;
  return zeta_prime_at_zero(h, zo);
}

}  // namespace

Height one_d_zeta_prime_spectral(const geometry::WeightedInterval& iv, const SpectralOptions& opts) {
  return one_d_spectral(sl::ModeProblem::q_phi(iv), geometry::trace_asymptotics(iv), opts);
}

Height collar_zero_mode_zeta_prime(double A, double B, const SpectralOptions& opts) {
  const geometry::WeightedInterval iv(A, B, Profile::neg_log_sin());
  return one_d_spectral(sl::ModeProblem::delta_l_m(1.0, A, B, 0), geometry::trace_asymptotics(iv), opts);
}

}  // namespace zh::zeta
