#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sturm_liouville/mode_problem.hpp"
#include "sturm_liouville/solver.hpp"

namespace zh::sl {

struct TraceEstimate {
  double value = 0.0;
  double tail = 0.0;            // bound on omitted eigenvalues
  double discretization = 0.0;  // bound from eigenvalue error estimates
  double error() const { return tail + discretization; }
};

// Upper bound on the eigenvalue counting function by Neumann bracketing:
// the interval is cut into pieces and the weight frozen at its maximum on
// each piece, which can only lower Rayleigh quotients.
class CountingBound {
 public:
  explicit CountingBound(const ModeProblem& problem, int pieces = 48);
  // At least #{k : lambda_k <= Lambda}.
  double count(double Lambda) const;
  // Bound on sum_{k > n} exp(-t lambda_k) given lambda_{n} >= lambda_floor
  // (n = 0 bounds the whole trace).
  double tail(double t, int n, double lambda_floor) const;

 private:
  std::vector<double> length_;
  std::vector<double> wmax_;
  double mu2_;
  double sqrt_coeff_;  // count(Lambda) <= pieces + sqrt_coeff * sqrt(Lambda)
};

// Computed spectrum of one mode with the bounds needed to certify traces.
class ModeTrace {
 public:
  ModeTrace(const ModeProblem& problem, Spectrum spectrum);
  ModeTrace(const ModeProblem& problem, EigenSystem system);

  const ModeProblem& problem() const { return problem_; }
  const Spectrum& spectrum() const { return spectrum_; }
  bool has_vectors() const { return system_.has_value(); }

  TraceEstimate trace(double t) const;
  double tail_bound(double t) const;
  double discretization_bound(double t) const;
  // sum_k exp(-t lambda_k) int varphi |f_k|^2, f_k normalized in the space
  // the operator is self-adjoint on. The value does not depend on which
  // measure the kernel is written against.
  TraceEstimate modified_trace(const std::function<double(double)>& varphi, double t) const;
  // Diagonal of the heat kernel with respect to the chosen measure.
  double diagonal_kernel(double x, double t, Measure measure) const;

 private:
  ModeProblem problem_;
  Spectrum spectrum_;
  CountingBound counting_;
  std::optional<EigenSystem> system_;
};

struct TracePlan {
  double t_min = 1e-4;
  double budget = 1e-9;  // absolute error allowed on the trace for every t >= t_min
  SolverOptions solver;
  int initial_grid = 0;  // 0 picks the grid from the eigenvalue cutoff
};

// Chooses the eigenvalue cutoff and grid so that tail and discretization
// bounds together stay below the budget for all t >= t_min.
ModeTrace plan_mode_trace(const ModeProblem& problem, const TracePlan& plan);

// Single trace value; throws AccuracyError when the certified error exceeds tol.
TraceEstimate mode_heat_trace(const ModeProblem& problem, double t, double tol = 1e-9, const SolverOptions& opts = {});

TraceEstimate modified_mode_trace(const ModeProblem& problem, const std::function<double(double)>& varphi, double t,
                                  double tol = 1e-9, const SolverOptions& opts = {});

// Rigorous bound on the entire trace of the mode.
double full_trace_bound(const ModeProblem& problem, double t);

}  // namespace zh::sl
