#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geometry/geometry.hpp"
#include "sturm_liouville/mode_trace.hpp"

namespace zh::zeta {

using sl::TraceEstimate;

struct TraceSample {
  double t = 0.0;
  double theta = 0.0;
  double err = 0.0;
};

// A Dirichlet heat trace theta(t) with certified error for t >= floor().
// Carries the claimed small-t coefficients and, when available, the
// eigenvalue list it was summed from.
class HeatTrace {
 public:
  using Evaluator = std::function<TraceEstimate(double)>;

  HeatTrace(std::string provenance, geometry::TraceCoefficients coeffs, int dimension, double lambda1_lower,
            double floor, std::pair<double, double> fit_window, Evaluator f);

  // theta(t) = sum_i weight_i exp(-t lambda_i) + error(t).
  static HeatTrace from_spectrum(std::string provenance, geometry::TraceCoefficients coeffs, int dimension,
                                 std::vector<double> eigenvalues, std::vector<double> weights, double floor,
                                 std::pair<double, double> fit_window, std::function<double(double)> error_bound);

  TraceEstimate evaluate(double t) const;
  TraceEstimate operator()(double t) const { return evaluate(t); }
  // theta(t) without computing the error bound.
  double value(double t) const;

  const geometry::TraceCoefficients& coefficients() const { return coeffs_; }
  int dimension() const { return dimension_; }
  double lambda1_lower() const { return lambda1_; }
  double floor() const { return floor_; }
  std::pair<double, double> fit_window() const { return window_; }
  const std::string& provenance() const { return provenance_; }

  bool has_spectrum() const { return !eigenvalues_.empty(); }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  const std::vector<double>& weights() const { return weights_; }
  double error_bound(double t) const;

  // Log-spaced samples.
  std::vector<TraceSample> samples(double t_lo, double t_hi, int n) const;

  HeatTrace with_coefficients(geometry::TraceCoefficients c) const;
  HeatTrace with_window(double floor, std::pair<double, double> fit_window) const;

 private:
  std::string provenance_;
  geometry::TraceCoefficients coeffs_;
  int dimension_;
  double lambda1_;
  double floor_;
  std::pair<double, double> window_;
  Evaluator f_;
  std::function<double(double)> value_;
  std::vector<double> eigenvalues_;
  std::vector<double> weights_;
  std::function<double(double)> err_;
};

// Weighted sum of mode traces, sum_j factor_j theta_{m_j}(t), with a bound
// for the modes left out.
struct ModeSum {
  std::vector<std::shared_ptr<const sl::ModeTrace>> modes;
  std::vector<double> factors;
  std::function<double(double)> excluded;  // may be empty

  TraceEstimate evaluate(double t) const;
  double lambda1_lower() const;
  void flatten(std::vector<double>& eigenvalues, std::vector<double>& weights) const;
};

// Trace of a domain with corners. It has no small-t coefficients and
// therefore no fitting or regularization path; it exists to compare traces.
class CornerHeatTrace {
 public:
  CornerHeatTrace(std::string provenance, int corners, HeatTrace::Evaluator f,
                  std::function<double(double)> value = {});
  static CornerHeatTrace from_modes(std::string provenance, int corners, const ModeSum& sum);
  TraceEstimate evaluate(double t) const { return f_(t); }
  TraceEstimate operator()(double t) const { return f_(t); }
  double value(double t) const { return value_ ? value_(t) : f_(t).value; }
  int corners() const { return corners_; }
  const std::string& provenance() const { return provenance_; }
  std::vector<TraceSample> samples(double t_lo, double t_hi, int n) const;

 private:
  std::string provenance_;
  int corners_;
  HeatTrace::Evaluator f_;
  std::function<double(double)> value_;
};

std::vector<double> log_grid(double lo, double hi, int n);

// CSV with columns t, theta, err.
std::string samples_to_csv(const std::vector<TraceSample>& samples);

// theta_0 + 2 sum_{m >= 1} theta_m, errors added.
TraceEstimate combine_modes(const std::vector<TraceEstimate>& modes, double excluded_bound = 0.0);

// Cylinder trace from its Fourier modes: theta_0 + 2 sum_{m>=1} theta_m
// when modes[0] is the m = 0 mode.
HeatTrace heat_trace_of_product(std::string provenance, const ModeSum& sum, geometry::TraceCoefficients coeffs,
                                double floor, std::pair<double, double> fit_window);

// Trace of a single 1-D mode as a heat trace in its own right.
HeatTrace heat_trace_of_mode(std::string provenance, std::shared_ptr<const sl::ModeTrace> mode,
                             geometry::TraceCoefficients coeffs, double floor, std::pair<double, double> fit_window);

}  // namespace zh::zeta
