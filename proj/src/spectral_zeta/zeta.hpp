#pragma once

#include <optional>
#include <string>
#include <utility>

#include "geometry/geometry.hpp"
#include "spectral_zeta/heat_trace.hpp"

namespace zh::zeta {

struct ZetaOptions {
  double T = 1.0;                 // split time
  double tolerance = 1e-6;        // AccuracyError when the error estimate is larger
  bool check_consistency = true;  // compare a fitted zeta(0) with the claimed c3
  double consistency_tol = 1e-6;
  int fit_samples = 48;
  double quad_tol = 1e-13;
  double quad_abs_tol = 1e-12;
};

// zeta'(0) with the pieces of its error estimate. value is zeta'(0) itself,
// which is the height -log det.
struct Height {
  double value = 0.0;
  double zeta_at_zero = 0.0;  // claimed c3
  double numerical_error = 0.0;
  double T = 1.0;
  double zeta_at_zero_fit = 0.0;  // c3 refitted from the samples
  double zeta_at_zero_width = 0.0;
  double small_t_part = 0.0;       // extrapolated contribution of (0, t_min]
  double remainder_error = 0.0;    // disagreement of two remainder fits
  double quadrature_error = 0.0;
  double trace_error = 0.0;        // propagated trace error bounds
  double t_min = 0.0;

  // {"T", "error", "value", "zeta0"}
  std::string to_json() const;
};

Height zeta_prime_at_zero(const HeatTrace& trace, const ZetaOptions& opts = {});

// Corner traces are regularized with coefficients obtained elsewhere (the
// heights identity); no refit of zeta(0) is attempted.
Height zeta_prime_at_zero(const CornerHeatTrace& trace, const geometry::TraceCoefficients& derived,
                          double lambda1_lower, double floor, std::pair<double, double> window,
                          const ZetaOptions& opts = {});

struct CoefficientFit {
  geometry::TraceCoefficients c;
  double width1 = 0.0;
  double width2 = 0.0;
  double width3 = 0.0;
  double condition = 0.0;
  double residual = 0.0;  // rms of the fit residual
  std::pair<double, double> window;
};

// Least-squares fit of theta ~ c1/t + c2/sqrt(t) + c3 + higher powers of
// sqrt(t) over a small-t window (c1 is dropped in dimension 1).
CoefficientFit fit_small_t_coefficients(const HeatTrace& trace,
                                        std::optional<std::pair<double, double>> window = std::nullopt,
                                        int n_samples = 64);

}  // namespace zh::zeta
