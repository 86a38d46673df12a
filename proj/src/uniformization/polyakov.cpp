#include "uniformization/polyakov.hpp"

#include <cmath>

#include "common/constants.hpp"
#include "common/errors.hpp"
#include "uniformization/dtn.hpp"

namespace zh::uniform {

using constants::pi;

double discrete_flux(const ConformalMetric& base, const Eigen::VectorXd& psi) {
  const Eigen::VectorXd Spsi = base.stiffness() * psi;
  double f = 0.0;
  for (int v : base.base().boundary_vertices()) f += Spsi[v];
  return f;
}

double polyakov_alvarez_shift(const ConformalMetric& base, const Eigen::VectorXd& psi, double h0) {
  require(psi.size() == base.vertex_count(), ErrorCode::InvalidArgument, "Polyakov shift: factor size mismatch");
  const double quad = 0.5 * psi.dot(base.stiffness() * psi) + base.curvature().dot(psi);
  return h0 + quad / (6.0 * pi) + discrete_flux(base, psi) / (4.0 * pi);
}

double gradient_flux(const MetricSurface& mesh, const Eigen::VectorXd& psi) {
  const auto& L = mesh.edge_lengths();
  double flux = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    for (int c = 0; c < 3; ++c) {
      const int a = tri[(c + 1) % 3], b = tri[(c + 2) % 3], o = tri[c];
      if (!mesh.is_boundary_vertex(a) || !mesh.is_boundary_vertex(b)) continue;
      // boundary edge iff it borders a single triangle; checked via the loops
      bool on_loop = false;
      for (const auto& loop : mesh.boundary_loops()) {
        for (std::size_t k = 0; k < loop.size() && !on_loop; ++k) {
          const int p = loop[k], q = loop[(k + 1) % loop.size()];
          on_loop = (p == a && q == b) || (p == b && q == a);
        }
        if (on_loop) break;
      }
      if (!on_loop) continue;
      // local frame: a at 0, b on the x axis, o above
      const double lab = L[mesh.triangle_edge(t, c)];
      const double lao = L[mesh.triangle_edge(t, (c + 2) % 3)];
      const double lbo = L[mesh.triangle_edge(t, (c + 1) % 3)];
      const double x = (lab * lab + lao * lao - lbo * lbo) / (2.0 * lab);
      const double y = std::sqrt(std::max(lao * lao - x * x, 0.0));
      // psi = psi_a + g . p on the triangle
      const double gx = (psi[b] - psi[a]) / lab;
      const double gy = (psi[o] - psi[a] - gx * x) / y;
      flux += -gy * lab;  // outward normal is (0, -1)
    }
  }
  return flux;
}

Eigen::VectorXd inequality_factor(const ConformalMetric& tau) {
  const DirichletNeumann dtn(tau.base(), tau.stiffness());
  const Eigen::VectorXd M = tau.mass();
  Eigen::VectorXd f(dtn.interior().size());
  for (std::size_t k = 0; k < dtn.interior().size(); ++k) f[k] = M[dtn.interior()[k]];
  Eigen::VectorXd psi = dtn.dirichlet_solve(f);
  const double A = -2.0 * pi * tau.euler_characteristic();
  const double Z = M.dot((2.0 * psi).array().exp().matrix());
  psi.array() += 0.5 * std::log(A / Z);
  return psi;
}

HeightInequality height_inequality_check(const ConformalMetric& tau, const Eigen::VectorXd& psi, double h_tau,
                                         double tol) {
  const int chi = tau.euler_characteristic();
  if (chi >= 0) fail(ErrorCode::Precondition, "height inequality: needs negative Euler characteristic");
  require(psi.size() == tau.vertex_count(), ErrorCode::InvalidArgument, "height inequality: factor size mismatch");
  const double A = -2.0 * pi * chi;
  const Eigen::VectorXd M = tau.mass(), kappa = tau.curvature();
  if (std::abs(tau.area() - A) > tol * A)
    fail(ErrorCode::Precondition, "height inequality: area of tau must be -2 pi chi");
  for (int v : tau.base().interior_vertices())
    if (std::abs(kappa[v] / M[v] + 1.0) > tol)
      fail(ErrorCode::Precondition, "height inequality: tau must have curvature -1");
  // Laplacian 1 inside, constant on the boundary
  const Eigen::VectorXd Spsi = tau.stiffness() * psi;
  double scale = 0.0;
  for (int v : tau.base().interior_vertices()) scale = std::max(scale, std::abs(Spsi[v] / M[v] - 1.0));
  if (scale > 1e-6) fail(ErrorCode::Precondition, "height inequality: psi must satisfy Laplacian psi = 1");
  const auto& bv = tau.base().boundary_vertices();
  for (int v : bv)
    if (std::abs(psi[v] - psi[bv.front()]) > 1e-9)
      fail(ErrorCode::Precondition, "height inequality: psi must be constant on the boundary");
  const double Z = M.dot((2.0 * psi).array().exp().matrix());
  if (std::abs(Z - A) > tol * A)
    fail(ErrorCode::Precondition, "height inequality: e^{2 psi} tau must have area -2 pi chi");

  HeightInequality r;
  r.lhs = polyakov_alvarez_shift(tau, psi, h_tau);
  r.rhs = chi / 2.0 + h_tau;
  r.slack = r.lhs - r.rhs;
  r.holds = r.slack >= 0.0;
  r.energy = psi.dot(Spsi);
  r.mean_term = 2.0 * M.dot(psi) / A;
  r.log_term = std::log(Z / A);
  r.jensen_holds = r.mean_term <= r.log_term;
  r.flux = discrete_flux(tau, psi);
  r.flux_gradient = gradient_flux(tau.realized(), psi);
  r.flux_target = 2.0 * pi * chi;
  return r;
}

}  // namespace zh::uniform
