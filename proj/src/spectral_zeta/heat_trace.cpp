#include "spectral_zeta/heat_trace.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "common/errors.hpp"

namespace zh::zeta {

HeatTrace::HeatTrace(std::string provenance, geometry::TraceCoefficients coeffs, int dimension, double lambda1_lower,
                     double floor, std::pair<double, double> fit_window, Evaluator f)
    : provenance_(std::move(provenance)),
      coeffs_(coeffs),
      dimension_(dimension),
      lambda1_(lambda1_lower),
      floor_(floor),
      window_(fit_window),
      f_(std::move(f)) {
  require(dimension == 1 || dimension == 2, ErrorCode::InvalidArgument, "heat trace: dimension must be 1 or 2");
  require(lambda1_ > 0.0, ErrorCode::Domain, "heat trace: first eigenvalue must be positive (no zero modes)");
  require(floor_ > 0.0 && window_.first >= floor_ && window_.second > window_.first, ErrorCode::InvalidArgument,
          "heat trace: invalid sampling floor or fit window");
}

HeatTrace HeatTrace::from_spectrum(std::string provenance, geometry::TraceCoefficients coeffs, int dimension,
                                   std::vector<double> eigenvalues, std::vector<double> weights, double floor,
                                   std::pair<double, double> fit_window, std::function<double(double)> error_bound) {
  require(!eigenvalues.empty() && eigenvalues.size() == weights.size(), ErrorCode::InvalidArgument,
          "heat trace: eigenvalue and weight lists must be nonempty and of equal length");
  double lam1 = eigenvalues.front();
  for (double l : eigenvalues) lam1 = std::min(lam1, l);
  auto ev = std::make_shared<std::vector<double>>(eigenvalues);
  auto wt = std::make_shared<std::vector<double>>(weights);
  auto value = [ev, wt](double t) {
    double v = 0.0;
    for (std::size_t i = ev->size(); i-- > 0;) v += (*wt)[i] * std::exp(-t * (*ev)[i]);
    return v;
  };
  Evaluator f = [value, error_bound](double t) {
    TraceEstimate r;
    r.value = value(t);
    r.tail = error_bound ? error_bound(t) : 0.0;
    return r;
  };
  HeatTrace h(std::move(provenance), coeffs, dimension, lam1, floor, fit_window, std::move(f));
  h.value_ = value;
  h.eigenvalues_ = std::move(eigenvalues);
  h.weights_ = std::move(weights);
  h.err_ = std::move(error_bound);
  return h;
}

TraceEstimate HeatTrace::evaluate(double t) const {
  require(t > 0.0, ErrorCode::Domain, "heat trace: t must be positive");
  return f_(t);
}

double HeatTrace::value(double t) const {
  require(t > 0.0, ErrorCode::Domain, "heat trace: t must be positive");
  return value_ ? value_(t) : f_(t).value;
}

double HeatTrace::error_bound(double t) const { return evaluate(t).error(); }

std::vector<TraceSample> HeatTrace::samples(double t_lo, double t_hi, int n) const {
  std::vector<TraceSample> out;
  for (double t : log_grid(t_lo, t_hi, n)) {
    const TraceEstimate e = evaluate(t);
    out.push_back({t, e.value, e.error()});
  }
  return out;
}

HeatTrace HeatTrace::with_coefficients(geometry::TraceCoefficients c) const {
  HeatTrace h = *this;
  h.coeffs_ = c;
  return h;
}

HeatTrace HeatTrace::with_window(double floor, std::pair<double, double> fit_window) const {
  require(floor > 0.0 && fit_window.first >= floor && fit_window.second > fit_window.first,
          ErrorCode::InvalidArgument, "heat trace: invalid sampling floor or fit window");
  HeatTrace h = *this;
  h.floor_ = floor;
  h.window_ = fit_window;
  return h;
}

CornerHeatTrace::CornerHeatTrace(std::string provenance, int corners, HeatTrace::Evaluator f,
                                 std::function<double(double)> value)
    : provenance_(std::move(provenance)), corners_(corners), f_(std::move(f)), value_(std::move(value)) {}

CornerHeatTrace CornerHeatTrace::from_modes(std::string provenance, int corners, const ModeSum& sum) {
  auto ev = std::make_shared<std::vector<double>>();
  auto wt = std::make_shared<std::vector<double>>();
  sum.flatten(*ev, *wt);
  auto value = [ev, wt](double t) {
    double v = 0.0;
    for (std::size_t i = ev->size(); i-- > 0;) v += (*wt)[i] * std::exp(-t * (*ev)[i]);
    return v;
  };
  return CornerHeatTrace(std::move(provenance), corners, [sum](double t) { return sum.evaluate(t); }, value);
}

std::vector<TraceSample> CornerHeatTrace::samples(double t_lo, double t_hi, int n) const {
  std::vector<TraceSample> out;
  for (double t : log_grid(t_lo, t_hi, n)) {
    const TraceEstimate e = evaluate(t);
    out.push_back({t, e.value, e.error()});
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  require(lo > 0.0 && hi >= lo && n >= 1, ErrorCode::InvalidArgument, "log grid: need 0 < lo <= hi and n >= 1");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.back() = hi;
  return g;
}

std::string samples_to_csv(const std::vector<TraceSample>& samples) {
  std::string s = "t,theta,err\r\n";
  char buf[128];
  for (const auto& x : samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\r\n", x.t, x.theta, x.err);
    s += buf;
  }
  return s;
}

TraceEstimate combine_modes(const std::vector<TraceEstimate>& modes, double excluded_bound) {
  TraceEstimate r;
  // highest modes first: they are the smallest terms
  for (std::size_t m = modes.size(); m-- > 0;) {
    const double f = m == 0 ? 1.0 : 2.0;
    r.value += f * modes[m].value;
    r.tail += f * modes[m].tail;
    r.discretization += f * modes[m].discretization;
  }
  r.tail += excluded_bound;
  return r;
}

TraceEstimate ModeSum::evaluate(double t) const {
  TraceEstimate r;
  for (std::size_t j = modes.size(); j-- > 0;) {
    const TraceEstimate e = modes[j]->trace(t);
    r.value += factors[j] * e.value;
    r.tail += factors[j] * e.tail;
    r.discretization += factors[j] * e.discretization;
  }
  if (excluded) r.tail += excluded(t);
  return r;
}

double ModeSum::lambda1_lower() const {
  double l = std::numeric_limits<double>::infinity();
  for (const auto& m : modes) l = std::min(l, m->spectrum().eigenvalues.front() - m->spectrum().errors.front());
  return l;
}

void ModeSum::flatten(std::vector<double>& eigenvalues, std::vector<double>& weights) const {
  for (std::size_t j = 0; j < modes.size(); ++j) {
    for (double l : modes[j]->spectrum().eigenvalues) {
      eigenvalues.push_back(l);
      weights.push_back(factors[j]);
    }
  }
}

HeatTrace heat_trace_of_product(std::string provenance, const ModeSum& sum, geometry::TraceCoefficients coeffs,
                                double floor, std::pair<double, double> fit_window) {
  require(sum.modes.size() == sum.factors.size() && !sum.modes.empty(), ErrorCode::InvalidArgument,
          "heat_trace_of_product: modes and factors must match");
  std::vector<double> ev, wt;
  sum.flatten(ev, wt);
  auto err = [sum](double t) {
    TraceEstimate r;
    for (std::size_t j = 0; j < sum.modes.size(); ++j)
      r.tail += sum.factors[j] * (sum.modes[j]->tail_bound(t) + sum.modes[j]->discretization_bound(t));
    if (sum.excluded) r.tail += sum.excluded(t);
    return r.tail;
  };
  return HeatTrace::from_spectrum(std::move(provenance), coeffs, 2, std::move(ev), std::move(wt), floor, fit_window,
                                  err);
}

HeatTrace heat_trace_of_mode(std::string provenance, std::shared_ptr<const sl::ModeTrace> mode,
                             geometry::TraceCoefficients coeffs, double floor, std::pair<double, double> fit_window) {
  std::vector<double> ev = mode->spectrum().eigenvalues;
  std::vector<double> wt(ev.size(), 1.0);
  auto err = [mode](double t) { return mode->tail_bound(t) + mode->discretization_bound(t); };
  return HeatTrace::from_spectrum(std::move(provenance), coeffs, 1, std::move(ev), std::move(wt), floor, fit_window,
                                  err);
}

}  // namespace zh::zeta
