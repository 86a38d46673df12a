#pragma once

#include <Eigen/Core>
#include <vector>

#include "uniformization/conformal_metric.hpp"
#include "uniformization/functionals.hpp"

namespace zh::uniform {

struct Normalized {
  ConformalMetric metric;
  Eigen::VectorXd factor;  // added to the input factor
};

// Boundary defects removed by a factor with (S phi)_b = -kappa_b, spreading
// their total uniformly over the interior area; sum M phi = 0.
Normalized normalize_geodesic_boundary(const ConformalMetric& sigma);

// Interior defects removed by (S phi)_i = -kappa_i with phi = 0 on the
// boundary. The input must have constant curvature expected_K (relative
// tolerance tol) at interior vertices.
Normalized normalize_flat(const ConformalMetric& tau, double expected_K = -1.0, double tol = 1e-6);

// Independent measurement on the realized edge lengths: interior curvature
// defect / vertex area, boundary geodesic curvature (defect - K M) / length.
struct UniformityReport {
  double target_K = 0.0;
  double mean_K = 0.0;
  double max_K_deviation = 0.0;   // max |K_i - target| / max(|target|, 1)
  double rms_K_deviation = 0.0;
  double max_K_deviation_inner = 0.0;  // over vertices with no boundary neighbour
  std::vector<double> loop_k;     // mean geodesic curvature per boundary loop
  double max_k_spread = 0.0;      // max |k_b - mean k| over all boundary vertices
  double max_k_deviation = 0.0;   // max |k_b - mean of all loops| (type II uniformity)
  double mesh_size = 0.0;
};

UniformityReport measure_uniformity(const MetricSurface& realized, double target_K);

struct MapResult {
  ConformalMetric metric;
  UniformizationResult minimization;
  Eigen::VectorXd normalization;  // factor added before minimization
};

// Type II -> type I at area A (default -2 pi chi, curvature -1).
MapResult map_Psi(const ConformalMetric& sigma, double A = 0.0, const NewtonOptions& opts = {});
// Type I -> type II at area A (default: area of tau).
MapResult map_Phi(const ConformalMetric& tau, double A = 0.0, double precondition_tol = 1e-6,
                  const NewtonOptions& opts = {});

struct RoundTrip {
  ConformalMetric sigma;      // type II start
  ConformalMetric tau;        // Psi(sigma)
  ConformalMetric sigma_back; // Phi(tau)
  double discrepancy = 0.0;   // max |u(sigma_back) - u(sigma)|
  double residual_F1 = 0.0;
  double residual_F2 = 0.0;
};

// Starts from a flat mesh, makes it type II at area A with minimize_F2,
// then maps it through Psi and Phi.
RoundTrip round_trip(const MetricSurface& flat_mesh, double A = 0.0, const NewtonOptions& opts = {});

struct ContinuityRow {
  double eta = 0.0;
  double factor_change = 0.0;  // max |u_tau(perturbed) - u_tau|
  double ratio = 0.0;          // factor_change / eta
};

// Perturbs interior vertices of a planar mesh by eta * spacing and compares
// the type I factors Psi(type II(mesh)).
std::vector<ContinuityRow> continuity_probe(const MetricSurface& flat_mesh, const std::vector<double>& etas,
                                            std::uint64_t seed = 11, double A = 0.0);

}  // namespace zh::uniform
