#include "spectral_zeta/zeta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "common/constants.hpp"
#include "common/errors.hpp"
#include "common/quadrature.hpp"

namespace zh::zeta {

namespace {

struct Source {
  const HeatTrace::Evaluator* f;
  std::function<double(double)> value;
  geometry::TraceCoefficients c;
  double lambda1;
  double floor;
  std::pair<double, double> window;
  const std::vector<double>* eigenvalues;
  const std::vector<double>* weights;
};

double theta(const Source& s, double t) { return s.value(t); }
double theta_err(const Source& s, double t) { return (*s.f)(t).error(); }

double remainder(const Source& s, double t) {
  return theta(s, t) - s.c.c1 / t - s.c.c2 / std::sqrt(t) - s.c.c3;
}

// Least squares with column scaling; returns coefficients and the
// condition number of the scaled design.
Eigen::VectorXd lsq(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double* condition, double* rms) {
  Eigen::VectorXd scale = X.colwise().norm().transpose();
  Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (condition) *condition = sv[0] / sv[sv.size() - 1];
  Eigen::VectorXd b = svd.solve(y).cwiseQuotient(scale);
  if (rms) *rms = std::sqrt((X * b - y).squaredNorm() / std::max<Eigen::Index>(1, y.size()));
  return b;
}

// Fit r(t) ~ sum_j a_j t^{p_j}, p_j = j/2, j = 1..k, and return
// int_0^{t_min} r dt / t.
double small_t_integral(const std::vector<double>& ts, const std::vector<double>& rs, int k, double t_min) {
  Eigen::MatrixXd X(ts.size(), k);
  Eigen::VectorXd y(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (int j = 0; j < k; ++j) X(i, j) = std::pow(ts[i], 0.5 * (j + 1));
    y[i] = rs[i];
  }
  const Eigen::VectorXd a = lsq(X, y, nullptr, nullptr);
  double s = 0.0;
  for (int j = 0; j < k; ++j) s += a[j] * std::pow(t_min, 0.5 * (j + 1)) / (0.5 * (j + 1));
  return s;
}

// Fit theta - c1/t - c2/sqrt(t) ~ c3 + a1 sqrt(t) + ... with k extra terms.
double refit_c3(const std::vector<double>& ts, const std::vector<double>& rs, double c3, int k) {
  Eigen::MatrixXd X(ts.size(), k + 1);
  Eigen::VectorXd y(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    X(i, 0) = 1.0;
    for (int j = 1; j <= k; ++j) X(i, j) = std::pow(ts[i], 0.5 * j);
    y[i] = rs[i] + c3;
  }
  return lsq(X, y, nullptr, nullptr)[0];
}

// scale: decreasing magnitude of the terms g is a difference of; sets the
// rounding floor of each panel.
quad::Result integrate_log(const std::function<double(double)>& g, double a, double b, double tol, double abs_tol,
                           const std::function<double(double)>& scale = {}) {
  // int_a^b g(t) dt/t in u = log t, one panel per half decade
  quad::Result total;
  const double ua = std::log(a), ub = std::log(b);
  const int panels = std::max(1, static_cast<int>(std::ceil((ub - ua) / 1.15)));
  for (int p = 0; p < panels; ++p) {
    const double u0 = ua + (ub - ua) * p / panels, u1 = ua + (ub - ua) * (p + 1) / panels;
    const double noise = scale ? 64.0 * std::numeric_limits<double>::epsilon() * std::abs(scale(std::exp(u0))) : 0.0;
    const quad::Result r =
        quad::integrate([&](double u) { return g(std::exp(u)); }, u0, u1, tol, 15, abs_tol / panels, noise);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

Height regularize(const Source& s, const ZetaOptions& o, bool check) {
  require(o.T > 0.0, ErrorCode::InvalidArgument, "zeta: split time T must be positive");
  require(s.lambda1 > 0.0, ErrorCode::Domain, "zeta: first eigenvalue must be positive");
  const double t_min = s.floor;
  require(o.T > t_min, ErrorCode::InvalidArgument, "zeta: split time must exceed the sampling floor");
  Height h;
  h.T = o.T;
  h.t_min = t_min;
  h.zeta_at_zero = s.c.c3;

  // (0, t_min]: extrapolate the remainder fitted over the window
  std::vector<double> ts = log_grid(s.window.first, s.window.second, o.fit_samples), rs;
  double fit_err = 0.0;
  for (double t : ts) {
    rs.push_back(remainder(s, t));
    fit_err = std::max(fit_err, theta_err(s, t));
  }
  const double small4 = small_t_integral(ts, rs, 5, t_min);
  const double small3 = small_t_integral(ts, rs, 4, t_min);
  h.small_t_part = small4;
  h.remainder_error = std::abs(small4 - small3);

  // [t_min, T]
  const quad::Result mid = integrate_log([&](double t) { return remainder(s, t); }, t_min, o.T, o.quad_tol,
                                         o.quad_abs_tol, [&](double t) { return theta(s, t); });

  // [T, inf)
  double upper = 0.0, upper_err = 0.0;
  const double t_end = std::max(o.T, 50.0 / s.lambda1);
  if (s.eigenvalues) {
    for (std::size_t i = s.eigenvalues->size(); i-- > 0;) {
      const double x = (*s.eigenvalues)[i] * o.T;
      if (x < 700.0) upper += (*s.weights)[i] * boost::math::expint(1, x);
    }
  } else {
    const quad::Result r = integrate_log([&](double t) { return theta(s, t); }, o.T, t_end, o.quad_tol, o.quad_abs_tol);
    upper = r.value;
    upper_err = r.error + theta(s, t_end) / (s.lambda1 * t_end);
  }

  // trace error bounds integrated against dt/t
  double sup_lo = 0.0, sup_hi = 0.0;
  for (double t : log_grid(t_min, o.T, 40)) sup_lo = std::max(sup_lo, theta_err(s, t));
  if (t_end > o.T)
    for (double t : log_grid(o.T, t_end, 20)) sup_hi = std::max(sup_hi, theta_err(s, t));
  h.trace_error = sup_lo * std::log(o.T / t_min) + sup_hi * std::log(t_end / o.T) + 2.0 * fit_err;
  h.quadrature_error = mid.error + upper_err;

  const double gamma = constants::euler_gamma;
  h.value = small4 + mid.value + upper - s.c.c1 / o.T - 2.0 * s.c.c2 / std::sqrt(o.T) + s.c.c3 * (gamma + std::log(o.T));
  h.numerical_error = h.remainder_error + h.quadrature_error + h.trace_error;

  if (check) {
    const double a = refit_c3(ts, rs, s.c.c3, 4), b = refit_c3(ts, rs, s.c.c3, 3);
    h.zeta_at_zero_fit = a;
    h.zeta_at_zero_width = std::abs(a - b);
    if (std::abs(a - s.c.c3) > o.consistency_tol + h.zeta_at_zero_width) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "zeta: fitted zeta(0) = %.9g does not match the claimed c3 = %.9g", a, s.c.c3);
      fail(ErrorCode::Consistency, buf);
    }
  } else {
    h.zeta_at_zero_fit = s.c.c3;
  }
  if (h.numerical_error > o.tolerance)
    throw AccuracyError("zeta: error estimate above tolerance", h.value, h.numerical_error);
  return h;
}

}  // namespace

std::string Height::to_json() const {
  char buf[256];
  std::snprintf(buf, sizeof buf, "{\"T\": %.17g, \"error\": %.17g, \"value\": %.17g, \"zeta0\": %.17g}", T,
                numerical_error, value, zeta_at_zero);
  return buf;
}

Height zeta_prime_at_zero(const HeatTrace& trace, const ZetaOptions& opts) {
  require(trace.coefficients().c3_known, ErrorCode::Consistency,
          "zeta: the constant heat coefficient of this geometry is unknown");
  HeatTrace::Evaluator f = [&trace](double t) { return trace.evaluate(t); };
  Source s{&f,
           [&trace](double t) { return trace.value(t); },
           trace.coefficients(),
           trace.lambda1_lower(),
           trace.floor(),
           trace.fit_window(),
           trace.has_spectrum() ? &trace.eigenvalues() : nullptr,
           trace.has_spectrum() ? &trace.weights() : nullptr};
  return regularize(s, opts, opts.check_consistency);
}

Height zeta_prime_at_zero(const CornerHeatTrace& trace, const geometry::TraceCoefficients& derived,
                          double lambda1_lower, double floor, std::pair<double, double> window,
                          const ZetaOptions& opts) {
  HeatTrace::Evaluator f = [&trace](double t) { return trace.evaluate(t); };
  Source s{&f, [&trace](double t) { return trace.value(t); }, derived, lambda1_lower, floor, window, nullptr, nullptr};
  return regularize(s, opts, false);
}

CoefficientFit fit_small_t_coefficients(const HeatTrace& trace, std::optional<std::pair<double, double>> window,
                                        int n_samples) {
  CoefficientFit out;
  out.window = window.value_or(trace.fit_window());
  require(out.window.first > 0.0 && out.window.second > out.window.first, ErrorCode::InvalidArgument,
          "fit: invalid window");
  require(out.window.first >= trace.floor(), ErrorCode::Domain, "fit: window extends below the sampling floor");
  const int d = trace.dimension();
  // exponents of t: -1 (2-D only), -1/2, 0, 1/2, 1, 3/2
  std::vector<double> p;
  if (d == 2) p.push_back(-1.0);
  for (double e : {-0.5, 0.0, 0.5, 1.0, 1.5}) p.push_back(e);
  const std::vector<double> ts = log_grid(out.window.first, out.window.second, n_samples);
  require(static_cast<int>(ts.size()) > static_cast<int>(p.size()) + 2, ErrorCode::Fit, "fit: too few samples");
  Eigen::VectorXd y(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) y[i] = trace.evaluate(ts[i]).value;
  auto design = [&](std::size_t k) {
    Eigen::MatrixXd X(ts.size(), k);
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) X(i, j) = std::pow(ts[i], p[j]);
    return X;
  };
  double cond = 0.0, rms = 0.0, cond_lo = 0.0, rms_lo = 0.0;
  const Eigen::VectorXd a = lsq(design(p.size()), y, &cond, &rms);
  const Eigen::VectorXd b = lsq(design(p.size() - 1), y, &cond_lo, &rms_lo);
  out.condition = cond;
  out.residual = rms;
  if (!(cond < 1e12)) fail(ErrorCode::Fit, "fit: ill-conditioned window (condition number above 1e12)");
  const int o = d == 2 ? 0 : -1;
  auto coef = [&](const Eigen::VectorXd& v, int idx) { return idx < 0 ? 0.0 : v[idx]; };
  out.c.c1 = coef(a, o);
  out.c.c2 = coef(a, o + 1);
  out.c.c3 = coef(a, o + 2);
  out.width1 = std::abs(coef(a, o) - coef(b, o)) + 2.0 * rms;
  out.width2 = std::abs(coef(a, o + 1) - coef(b, o + 1)) + 2.0 * rms;
  out.width3 = std::abs(coef(a, o + 2) - coef(b, o + 2)) + 2.0 * rms;
  return out;
}

}  // namespace zh::zeta
