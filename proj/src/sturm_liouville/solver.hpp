#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sturm_liouville/mode_problem.hpp"

namespace zh::sl {

enum class Discretization {
  Spectral,           // Legendre-Galerkin, Shen basis L_k - L_{k+2}
  FiniteDifference2,  // central differences, lumped weight
};

std::string to_string(Discretization d);

struct SolverOptions {
  Discretization method = Discretization::Spectral;
  // Largest accepted relative two-resolution disagreement.
  double rel_tol = 1e-10;
  bool vectors = false;
};

struct DiscretizationInfo {
  Discretization method = Discretization::Spectral;
  int grid = 0;        // basis size or interior grid points
  int check_grid = 0;  // resolution used for the error estimate
  int order = 0;       // algebraic order (0 = spectral)
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> errors;       // absolute error estimate per eigenvalue
  int requested = 0;
  double truncation_error_bound = 0.0;  // set by trace routines for a given t
  DiscretizationInfo info;
  int count() const { return static_cast<int>(eigenvalues.size()); }
};

// Eigenpairs together with what is needed to evaluate eigenfunctions.
// Eigenfunctions are normalized in the operator measure.
class EigenSystem {
 public:
  Spectrum spectrum;

  double eigenfunction(int k, double x, Measure measure = Measure::Operator) const;
  // Quadrature nodes on [a, b], weights for dx, and eigenfunction values there.
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& node_values() const { return values_; }
  // Integral of f * |f_k|^2 in the chosen measure.
  double weighted_norm(int k, const std::function<double(double)>& f, Measure measure = Measure::Operator) const;

 private:
  friend EigenSystem solve_mode_system(const ModeProblem&, int, int, const SolverOptions&);
  std::optional<ModeProblem> problem_;
  Discretization method_ = Discretization::Spectral;
  Eigen::MatrixXd coeffs_;  // spectral: basis coefficients; fd: grid values
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd w_at_nodes_;
  Eigen::MatrixXd values_;
};

// Eigenvalues from the primary grid with two-resolution error estimates;
// no accuracy requirement is enforced.
Spectrum solve_mode_raw(const ModeProblem& problem, int n_eigs, int grid, const SolverOptions& opts = {});

// Lowest n_eigs eigenvalues; throws AccuracyError when the two resolutions
// disagree by more than rel_tol for any of them.
Spectrum solve_mode(const ModeProblem& problem, int n_eigs, int grid, const SolverOptions& opts = {});

EigenSystem solve_mode_system(const ModeProblem& problem, int n_eigs, int grid, const SolverOptions& opts = {});

// Basis size that resolves eigenvalues up to Lambda for the spectral method.
int spectral_grid_for(const ModeProblem& problem, double Lambda);

}  // namespace zh::sl
