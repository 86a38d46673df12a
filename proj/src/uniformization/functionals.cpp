#include "uniformization/functionals.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <cmath>
#include <cstdio>
#include <vector>

#include "common/constants.hpp"
#include "common/errors.hpp"

namespace zh::uniform {

using constants::pi;

std::string UniformizationResult::to_json() const {
  std::string s;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "{\"area\": %.17g, \"constraint_violation\": %.17g, \"factor\": [", area, constraint_violation);
  s += buf;
  for (Eigen::Index i = 0; i < factor.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? ", " : "", factor[i]);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "], \"functional_value\": %.17g, \"iterations\": %d, \"residual\": %.17g}",
                functional_value, iterations, residual);
  s += buf;
  return s;
}

namespace {

// log sum w e^{a x} without overflow
double log_sum_exp(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double a) {
  const double m = (a * x).maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += w[i] * std::exp(a * x[i] - m);
  return m + std::log(s);
}

Eigen::VectorXd softmax_weights(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double a) {
  const double lz = log_sum_exp(w, x, a);
  Eigen::VectorXd p(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) p[i] = w[i] * std::exp(a * x[i] - lz);
  return p;
}

double dual_norm(const Eigen::VectorXd& g, const Eigen::VectorXd& w) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (w[i] > 0.0) s += g[i] * g[i] / w[i];
  return std::sqrt(s);
}

}  // namespace

double evaluate_F1(const ConformalMetric& base, const Eigen::VectorXd& psi) {
  const double chi = base.euler_characteristic();
  return 0.5 * psi.dot(base.stiffness() * psi) + base.curvature().dot(psi) -
         pi * chi * log_sum_exp(base.mass(), psi, 2.0);
}

Eigen::VectorXd gradient_F1(const ConformalMetric& base, const Eigen::VectorXd& psi) {
  const double chi = base.euler_characteristic();
  return base.stiffness() * psi + base.curvature() - 2.0 * pi * chi * softmax_weights(base.mass(), psi, 2.0);
}

UniformizationResult minimize_F1(const ConformalMetric& base, double A, const NewtonOptions& o) {
  const int chi = base.euler_characteristic();
  if (chi >= 0) fail(ErrorCode::Topology, "minimize_F1: needs negative Euler characteristic");
  require(A > 0.0, ErrorCode::InvalidArgument, "minimize_F1: area must be positive");
  const int n = base.vertex_count();
  const Eigen::VectorXd M = base.mass();
  const double Msum = M.sum();
  Eigen::VectorXd psi = o.initial ? *o.initial : Eigen::VectorXd::Zero(n);
  require(psi.size() == n, ErrorCode::InvalidArgument, "minimize_F1: initial guess size mismatch");
  psi.array() -= M.dot(psi) / Msum;
  const double a = 4.0 * pi * std::abs(chi);
  const Eigen::SparseMatrix<double>& S = base.stiffness();

  UniformizationResult r;
  double F = evaluate_F1(base, psi);
  for (r.iterations = 0;; ++r.iterations) {
    const Eigen::VectorXd p = softmax_weights(M, psi, 2.0);
    const Eigen::VectorXd g = S * psi + base.curvature() - 2.0 * pi * chi * p;
    r.residual = dual_norm(g, M);
    if (r.residual < o.tolerance) break;
    if (r.iterations >= o.max_iterations)
      fail(ErrorCode::Convergence, "minimize_F1: no convergence within the iteration limit");
    // Hessian S + a (diag p - p p^T), the rank-one part kept out of the
    // sparse matrix through an extra unknown y = p^T d.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(S.nonZeros() + 4 * n);
    for (int k = 0; k < S.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it)
        trip.emplace_back(it.row(), it.col(), it.value());
    for (int i = 0; i < n; ++i) {
      trip.emplace_back(i, i, a * p[i]);
      trip.emplace_back(i, n, -a * p[i]);
      trip.emplace_back(n, i, p[i]);
      trip.emplace_back(i, n + 1, M[i]);
      trip.emplace_back(n + 1, i, M[i]);
    }
    trip.emplace_back(n, n, -1.0);
    Eigen::SparseMatrix<double> K(n + 2, n + 2);
    K.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(K);
    require(lu.info() == Eigen::Success, ErrorCode::Convergence, "minimize_F1: Newton system is singular");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 2);
    rhs.head(n) = -g;
    const Eigen::VectorXd sol = lu.solve(rhs);
    const Eigen::VectorXd d = sol.head(n);
    // Armijo backtracking
    const double slope = g.dot(d);
    double step = 1.0;
    double F_new = F;
    for (int k = 0; k < 60; ++k) {
      F_new = evaluate_F1(base, psi + step * d);
      if (F_new <= F + 1e-4 * step * slope || std::abs(F_new - F) < 1e-15 * std::abs(F)) break;
      step *= 0.5;
    }
    psi += step * d;
    F = F_new;
  }
  r.functional_value = F;
  r.constraint_violation = std::abs(M.dot(psi)) / Msum;
  const double Z = std::exp(log_sum_exp(M, psi, 2.0));
  psi.array() += 0.5 * std::log(A / Z);
  r.factor = psi;
  r.area = base.rescaled(psi).area();
  return r;
}

double evaluate_F2(const ConformalMetric& base, const DirichletNeumann& dtn, const Eigen::VectorXd& phi) {
  const double chi = base.euler_characteristic();
  const Eigen::VectorXd kb = dtn.restrict_to_boundary(base.curvature());
  const Eigen::VectorXd lb = dtn.restrict_to_boundary(base.boundary_weights());
  double v = 0.5 * phi.dot(dtn.matrix() * phi) + kb.dot(phi);
  if (chi != 0) v -= 2.0 * pi * chi * log_sum_exp(lb, phi, 1.0);
  return v;
}

Eigen::VectorXd gradient_F2(const ConformalMetric& base, const DirichletNeumann& dtn, const Eigen::VectorXd& phi) {
  const double chi = base.euler_characteristic();
  const Eigen::VectorXd kb = dtn.restrict_to_boundary(base.curvature());
  const Eigen::VectorXd lb = dtn.restrict_to_boundary(base.boundary_weights());
  Eigen::VectorXd g = dtn.matrix() * phi + kb;
  if (chi != 0) g -= 2.0 * pi * chi * softmax_weights(lb, phi, 1.0);
  return g;
}

UniformizationResult minimize_F2(const ConformalMetric& base, double A, const NewtonOptions& o) {
  const int chi = base.euler_characteristic();
  if (chi > 0) fail(ErrorCode::Topology, "minimize_F2: positive Euler characteristic is not supported");
  require(A > 0.0, ErrorCode::InvalidArgument, "minimize_F2: area must be positive");
  const Eigen::VectorXd kappa = base.curvature();
  for (int v : base.base().interior_vertices())
    if (std::abs(kappa[v]) > 1e-8)
      fail(ErrorCode::Precondition, "minimize_F2: reference metric is not flat at interior vertices");
  const DirichletNeumann dtn(base.base(), base.stiffness());
  const int nb = dtn.boundary_size();
  const Eigen::VectorXd lb = dtn.restrict_to_boundary(base.boundary_weights());
  const double lsum = lb.sum();
  Eigen::VectorXd phi = o.initial ? *o.initial : Eigen::VectorXd::Zero(nb);
  require(phi.size() == nb, ErrorCode::InvalidArgument, "minimize_F2: initial guess size mismatch");
  phi.array() -= lb.dot(phi) / lsum;
  const double a = 2.0 * pi * std::abs(chi);

  UniformizationResult r;
  double F = evaluate_F2(base, dtn, phi);
  for (r.iterations = 0;; ++r.iterations) {
    const Eigen::VectorXd g = gradient_F2(base, dtn, phi);
    r.residual = dual_norm(g, lb);
    if (r.residual < o.tolerance) break;
    if (r.iterations >= o.max_iterations)
      fail(ErrorCode::Convergence, "minimize_F2: no convergence within the iteration limit");
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nb + 1, nb + 1);
    K.topLeftCorner(nb, nb) = dtn.matrix();
    if (chi != 0) {
      const Eigen::VectorXd q = softmax_weights(lb, phi, 1.0);
      K.topLeftCorner(nb, nb) += a * (Eigen::MatrixXd(q.asDiagonal()) - q * q.transpose());
    }
    K.block(0, nb, nb, 1) = lb;
    K.block(nb, 0, 1, nb) = lb.transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb + 1);
    rhs.head(nb) = -g;
    const Eigen::VectorXd d = K.partialPivLu().solve(rhs).head(nb);
    const double slope = g.dot(d);
    double step = 1.0, F_new = F;
    for (int k = 0; k < 60; ++k) {
      F_new = evaluate_F2(base, dtn, phi + step * d);
      if (F_new <= F + 1e-4 * step * slope || std::abs(F_new - F) < 1e-15 * std::abs(F)) break;
      step *= 0.5;
    }
    phi += step * d;
    F = F_new;
  }
  r.functional_value = F;
  r.constraint_violation = std::abs(lb.dot(phi)) / lsum;
  Eigen::VectorXd u = dtn.harmonic_extension(phi);
  u.array() += 0.5 * std::log(A / base.rescaled(u).area());
  r.factor = u;
  r.area = base.rescaled(u).area();
  return r;
}

}  // namespace zh::uniform
