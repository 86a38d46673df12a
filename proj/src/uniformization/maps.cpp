#include "uniformization/maps.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "common/constants.hpp"
#include "common/errors.hpp"
#include "geometry/meshgen.hpp"
#include "uniformization/dtn.hpp"

namespace zh::uniform {

using constants::pi;

Normalized normalize_geodesic_boundary(const ConformalMetric& sigma) {
  const MetricSurface& mesh = sigma.base();
  const int n = sigma.vertex_count();
  const Eigen::VectorXd kappa = sigma.curvature(), M = sigma.mass();
  double kb_sum = 0.0, interior_area = 0.0;
  for (int v : mesh.boundary_vertices()) kb_sum += kappa[v];
  for (int v : mesh.interior_vertices()) interior_area += M[v];
  require(interior_area > 0.0, ErrorCode::Topology, "normalize_geodesic_boundary: mesh has no interior vertices");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  for (int v : mesh.boundary_vertices()) rhs[v] = -kappa[v];
  for (int v : mesh.interior_vertices()) rhs[v] = kb_sum * M[v] / interior_area;

  const Eigen::SparseMatrix<double>& S = sigma.stiffness();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(S.nonZeros() + 2 * n);
  for (int k = 0; k < S.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it)
      trip.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, n, M[i]);
    trip.emplace_back(n, i, M[i]);
  }
  Eigen::SparseMatrix<double> K(n + 1, n + 1);
  K.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(K);
  require(lu.info() == Eigen::Success, ErrorCode::Convergence, "normalize_geodesic_boundary: singular system");
  const Eigen::VectorXd phi = lu.solve(rhs).head(n);
  return {sigma.rescaled(phi), phi};
}

Normalized normalize_flat(const ConformalMetric& tau, double expected_K, double tol) {
  const MetricSurface& mesh = tau.base();
  const Eigen::VectorXd kappa = tau.curvature(), M = tau.mass();
  const double scale = std::max(std::abs(expected_K), 1e-300);
  for (int v : mesh.interior_vertices()) {
    if (std::abs(kappa[v] / M[v] - expected_K) > tol * scale)
      fail(ErrorCode::Precondition, "normalize_flat: input curvature is not the expected constant");
  }
  const DirichletNeumann dtn(mesh, tau.stiffness());
  Eigen::VectorXd f(dtn.interior().size());
  for (std::size_t k = 0; k < dtn.interior().size(); ++k) f[k] = -kappa[dtn.interior()[k]];
  const Eigen::VectorXd phi = dtn.dirichlet_solve(f);
  return {tau.rescaled(phi), phi};
}

UniformityReport measure_uniformity(const MetricSurface& m, double target_K) {
  UniformityReport r;
  r.target_K = target_K;
  r.mesh_size = m.mesh_size();
  const auto& kappa = m.curvature();
  const auto& area = m.vertex_area();
  const auto& len = m.boundary_vertex_length();
  const double scale = std::max(std::abs(target_K), 1.0);
  std::vector<char> near(m.vertex_count(), 0);
  for (const auto& e : m.edges()) {
    if (m.is_boundary_vertex(e[0])) near[e[1]] = 1;
    if (m.is_boundary_vertex(e[1])) near[e[0]] = 1;
  }
  double sum_dev2 = 0.0, sum_area = 0.0, sum_K = 0.0;
  for (int v : m.interior_vertices()) {
    const double K = kappa[v] / area[v];
    const double dev = std::abs(K - target_K) / scale;
    r.max_K_deviation = std::max(r.max_K_deviation, dev);
    if (!near[v]) r.max_K_deviation_inner = std::max(r.max_K_deviation_inner, dev);
    sum_dev2 += dev * dev * area[v];
    sum_K += kappa[v];
    sum_area += area[v];
  }
  r.mean_K = sum_area > 0.0 ? sum_K / sum_area : 0.0;
  r.rms_K_deviation = sum_area > 0.0 ? std::sqrt(sum_dev2 / sum_area) : 0.0;
  std::vector<std::vector<double>> ks;
  double all = 0.0, all_len = 0.0;
  for (const auto& loop : m.boundary_loops()) {
    std::vector<double> k;
    double s = 0.0, l = 0.0;
    for (int v : loop) {
      k.push_back((kappa[v] - target_K * area[v]) / len[v]);
      s += kappa[v] - target_K * area[v];
      l += len[v];
    }
    r.loop_k.push_back(s / l);
    all += s;
    all_len += l;
    ks.push_back(std::move(k));
  }
  const double k_all = all_len > 0.0 ? all / all_len : 0.0;
  for (std::size_t j = 0; j < ks.size(); ++j)
    for (double k : ks[j]) {
      r.max_k_spread = std::max(r.max_k_spread, std::abs(k - r.loop_k[j]));
      r.max_k_deviation = std::max(r.max_k_deviation, std::abs(k - k_all));
    }
  return r;
}

MapResult map_Psi(const ConformalMetric& sigma, double A, const NewtonOptions& opts) {
  const int chi = sigma.euler_characteristic();
  if (chi >= 0) fail(ErrorCode::Topology, "map_Psi: needs negative Euler characteristic");
  if (A <= 0.0) A = -2.0 * pi * chi;
  Normalized nz = normalize_geodesic_boundary(sigma);
  UniformizationResult res = minimize_F1(nz.metric, A, opts);
  ConformalMetric tau = nz.metric.rescaled(res.factor);
  return {std::move(tau), std::move(res), std::move(nz.factor)};
}

MapResult map_Phi(const ConformalMetric& tau, double A, double precondition_tol, const NewtonOptions& opts) {
  const int chi = tau.euler_characteristic();
  if (A <= 0.0) A = tau.area();
  Normalized nz = normalize_flat(tau, 2.0 * pi * chi / tau.area(), precondition_tol);
  UniformizationResult res = minimize_F2(nz.metric, A, opts);
  ConformalMetric sigma = nz.metric.rescaled(res.factor);
  return {std::move(sigma), std::move(res), std::move(nz.factor)};
}

RoundTrip round_trip(const MetricSurface& flat_mesh, double A, const NewtonOptions& opts) {
  const ConformalMetric start(flat_mesh);
  if (A <= 0.0) A = -2.0 * pi * start.euler_characteristic();
  const UniformizationResult s = minimize_F2(start, A, opts);
  ConformalMetric sigma = start.rescaled(s.factor);
  MapResult psi = map_Psi(sigma, A, opts);
  MapResult phi = map_Phi(psi.metric, A, 1e-6, opts);
  RoundTrip r{sigma, psi.metric, phi.metric};
  r.discrepancy = (phi.metric.u() - sigma.u()).cwiseAbs().maxCoeff();
  r.residual_F1 = psi.minimization.residual;
  r.residual_F2 = phi.minimization.residual;
  return r;
}

namespace {

Eigen::VectorXd type_one_factor(const MetricSurface& mesh, double A) {
  const ConformalMetric start(mesh);
  const UniformizationResult s = minimize_F2(start, A);
  return map_Psi(start.rescaled(s.factor), A).metric.u();
}

}  // namespace

std::vector<ContinuityRow> continuity_probe(const MetricSurface& flat_mesh, const std::vector<double>& etas,
                                            std::uint64_t seed, double A) {
  if (A <= 0.0) A = -2.0 * pi * flat_mesh.euler_characteristic();
  const Eigen::VectorXd u0 = type_one_factor(flat_mesh, A);
  std::vector<ContinuityRow> rows;
  for (double eta : etas) {
    const Eigen::VectorXd u = type_one_factor(geometry::perturb_interior(flat_mesh, eta, seed), A);
    ContinuityRow row;
    row.eta = eta;
    row.factor_change = (u - u0).cwiseAbs().maxCoeff();
    row.ratio = row.factor_change / eta;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zh::uniform
