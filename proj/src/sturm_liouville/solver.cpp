#include "sturm_liouville/solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "common/errors.hpp"
#include "common/quadrature.hpp"

namespace zh::sl {

namespace {

struct DenseResult {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd coeffs;           // columns aligned with eigenvalues
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::VectorXd w_at_nodes;
  Eigen::MatrixXd values;
};

// Legendre polynomials P_0..P_n at x.
void legendre_all(double x, int n, double* out) {
  out[0] = 1.0;
  if (n >= 1) out[1] = x;
  for (int k = 2; k <= n; ++k) out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
}

DenseResult spectral_solve(const ModeProblem& p, int N, int n_eigs, bool vectors) {
  const double h = 0.5 * (p.b() - p.a()), c = 0.5 * (p.a() + p.b());
  const int Q = N + N / 2 + 32;
  const quad::Rule rule = quad::gauss_legendre(Q);
  Eigen::MatrixXd V(Q, N);
  Eigen::VectorXd wq(Q), mq(Q), xq(Q), wx(Q);
  std::vector<double> P(N + 2);
  for (int q = 0; q < Q; ++q) {
    legendre_all(rule.nodes[q], N + 1, P.data());
    for (int k = 0; k < N; ++k) V(q, k) = P[k] - P[k + 2];
    xq[q] = c + h * rule.nodes[q];
    wx[q] = p.weight(xq[q]);
    wq[q] = h * rule.weights[q] * wx[q];
    mq[q] = h * rule.weights[q];
  }
  Eigen::MatrixXd Vw = wq.cwiseSqrt().asDiagonal() * V;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
  B.selfadjointView<Eigen::Lower>().rankUpdate(Vw.transpose());
  B.triangularView<Eigen::StrictlyUpper>() = B.transpose();
  // Stiffness is diagonal in this basis and the unweighted mass couples only
  // k and k + 2, so A = diag + mu^2 mass has a Cholesky factor with the two
  // diagonals 0 and -2.
  const double mu2 = p.mu2();
  Eigen::VectorXd a0(N), a2 = Eigen::VectorXd::Zero(N);
  for (int k = 0; k < N; ++k) {
    a0[k] = (4.0 * k + 6.0) / h + mu2 * h * (2.0 / (2 * k + 1) + 2.0 / (2 * k + 5));
    if (k >= 2) a2[k] = -mu2 * h * 2.0 / (2 * k + 1);
  }
  Eigen::VectorXd d(N);
  for (int k = 0; k < N; ++k) d[k] = 1.0 / std::sqrt(a0[k]);
  Eigen::VectorXd l0(N), l2 = Eigen::VectorXd::Zero(N);
  for (int k = 0; k < N; ++k) {
    const double off = k >= 2 ? a2[k] * d[k] * d[k - 2] : 0.0;
    if (k >= 2) l2[k] = off / l0[k - 2];
    l0[k] = std::sqrt(1.0 - l2[k] * l2[k]);
  }
  B = d.asDiagonal() * B * d.asDiagonal();
  // Inverted problem B x = nu A x keeps relative accuracy for small lambda;
  // reduced to L^{-1} B L^{-T}.
  auto forward = [&](Eigen::MatrixXd& X) {
    for (int k = 0; k < N; ++k) {
      if (k >= 2) X.row(k) -= l2[k] * X.row(k - 2);
      X.row(k) /= l0[k];
    }
  };
  forward(B);
  B.transposeInPlace();
  forward(B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ges(B, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  require(ges.info() == Eigen::Success, ErrorCode::Accuracy, "spectral eigensolver failed");
  const Eigen::VectorXd& nu = ges.eigenvalues();
  auto backward = [&](Eigen::MatrixXd& X) {
    for (int k = N - 1; k >= 0; --k) {
      if (k + 2 < N) X.row(k) -= l2[k + 2] * X.row(k + 2);
      X.row(k) /= l0[k];
    }
  };
  const int n = std::min(n_eigs, N);
  DenseResult r;
  r.eigenvalues.resize(n);
  for (int k = 0; k < n; ++k) r.eigenvalues[k] = 1.0 / nu[N - 1 - k];
  if (vectors) {
    Eigen::MatrixXd Y = ges.eigenvectors().rightCols(n).rowwise().reverse();
    backward(Y);
    r.coeffs.resize(N, n);
    for (int k = 0; k < n; ++k) r.coeffs.col(k) = d.asDiagonal() * Y.col(k) / std::sqrt(nu[N - 1 - k]);
    r.nodes = xq;
    r.weights = mq;
    r.w_at_nodes = wx;
    r.values = V * r.coeffs;
    // Fix the sign: positive slope at the left end.
    for (int k = 0; k < n; ++k) {
      double slope = 0.0;
      for (int j = 0; j < N; ++j) slope -= r.coeffs(j, k) * (2.0 * j + 3.0) * ((j % 2) ? 1.0 : -1.0);
      if (slope < 0) {
        r.coeffs.col(k) *= -1.0;
        r.values.col(k) *= -1.0;
      }
    }
  }
  return r;
}

DenseResult fd_solve(const ModeProblem& p, int N, int n_eigs, bool vectors) {
  const double h = (p.b() - p.a()) / (N + 1);
  Eigen::VectorXd w(N), x(N), diag(N), sub(std::max(N - 1, 0));
  for (int j = 0; j < N; ++j) {
    x[j] = p.a() + (j + 1) * h;
    w[j] = p.weight(x[j]);
    diag[j] = (2.0 / (h * h) + p.mu2()) / w[j];
  }
  for (int j = 0; j + 1 < N; ++j) sub[j] = -1.0 / (h * h * std::sqrt(w[j] * w[j + 1]));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorCode::Accuracy, "tridiagonal eigensolver failed");
  const int n = std::min(n_eigs, N);
  DenseResult r;
  r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  if (vectors) {
    r.coeffs.resize(N, n);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd y = es.eigenvectors().col(k).cwiseQuotient((w * h).cwiseSqrt());
      if (y[0] < 0) y = -y;
      r.coeffs.col(k) = y;
    }
    r.nodes = x;
    r.weights = Eigen::VectorXd::Constant(N, h);
    r.w_at_nodes = w;
    r.values = r.coeffs;
  }
  return r;
}

DenseResult dense_solve(const ModeProblem& p, Discretization method, int grid, int n_eigs, bool vectors) {
  return method == Discretization::Spectral ? spectral_solve(p, grid, n_eigs, vectors)
                                            : fd_solve(p, grid, n_eigs, vectors);
}

int check_grid_for(Discretization method, int grid) {
  if (method == Discretization::Spectral) return grid - std::max(12, grid / 6);
  return (grid - 1) / 2;
}

struct Solved {
  Spectrum spectrum;
  DenseResult primary;
};

Solved solve_impl(const ModeProblem& p, int n_eigs, int grid, const SolverOptions& opts) {
  require(n_eigs >= 1, ErrorCode::InvalidArgument, "solve_mode: n_eigs must be at least 1");
  const int min_grid = opts.method == Discretization::Spectral ? 24 : 7;
  require(grid >= min_grid, ErrorCode::InvalidArgument, "solve_mode: grid too small");
  require(n_eigs <= grid, ErrorCode::InvalidArgument, "solve_mode: more eigenvalues requested than grid size");
  const int cg = check_grid_for(opts.method, grid);
  Solved s;
  s.primary = dense_solve(p, opts.method, grid, n_eigs, opts.vectors);
  const DenseResult check = dense_solve(p, opts.method, cg, n_eigs, false);
  Spectrum& sp = s.spectrum;
  sp.eigenvalues = s.primary.eigenvalues;
  sp.requested = n_eigs;
  sp.info = {opts.method, grid, cg, opts.method == Discretization::Spectral ? 0 : 2};
  sp.errors.resize(sp.eigenvalues.size());
  for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
    if (k < check.eigenvalues.size()) {
      double e = std::abs(sp.eigenvalues[k] - check.eigenvalues[k]);
      // second order: the finer value carries a third of the difference
      if (opts.method == Discretization::FiniteDifference2) e /= 3.0;
      sp.errors[k] = e;
    } else {
      sp.errors[k] = std::numeric_limits<double>::infinity();
    }
  }
  return s;
}

void enforce(const Spectrum& sp, int n_eigs, double rel_tol) {
  for (int k = 0; k < n_eigs; ++k) {
    if (!(sp.errors[k] <= rel_tol * sp.eigenvalues[k])) {
      throw AccuracyError("solve_mode: eigenvalue " + std::to_string(k + 1) + " not resolved (two-resolution " +
                              "disagreement " + std::to_string(sp.errors[k] / sp.eigenvalues[k]) + " relative)",
                          sp.eigenvalues[k], sp.eigenvalues[k] + sp.errors[k]);
    }
  }
}

}  // namespace

std::string to_string(Discretization d) { return d == Discretization::Spectral ? "spectral" : "fd2"; }

Spectrum solve_mode_raw(const ModeProblem& problem, int n_eigs, int grid, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.vectors = false;
  return solve_impl(problem, n_eigs, grid, o).spectrum;
}

Spectrum solve_mode(const ModeProblem& problem, int n_eigs, int grid, const SolverOptions& opts) {
  Spectrum sp = solve_mode_raw(problem, n_eigs, grid, opts);
  enforce(sp, n_eigs, opts.rel_tol);
  return sp;
}

EigenSystem solve_mode_system(const ModeProblem& problem, int n_eigs, int grid, const SolverOptions& opts) {
  SolverOptions o = opts;
  o.vectors = true;
  Solved s = solve_impl(problem, n_eigs, grid, o);
  enforce(s.spectrum, n_eigs, opts.rel_tol);
  EigenSystem es;
  es.spectrum = std::move(s.spectrum);
  es.problem_ = problem;
  es.method_ = opts.method;
  es.coeffs_ = std::move(s.primary.coeffs);
  es.nodes_ = std::move(s.primary.nodes);
  es.weights_ = std::move(s.primary.weights);
  es.w_at_nodes_ = std::move(s.primary.w_at_nodes);
  es.values_ = std::move(s.primary.values);
  return es;
}

double EigenSystem::eigenfunction(int k, double x, Measure measure) const {
  require(problem_.has_value() && k >= 0 && k < coeffs_.cols(), ErrorCode::InvalidArgument,
          "eigenfunction: index out of range");
  const ModeProblem& p = *problem_;
  require(x >= p.a() && x <= p.b(), ErrorCode::Domain, "eigenfunction: point outside interval");
  double f = 0.0;
  if (method_ == Discretization::Spectral) {
    const int N = static_cast<int>(coeffs_.rows());
    std::vector<double> P(N + 2);
    const double xi = (2.0 * x - p.a() - p.b()) / (p.b() - p.a());
    legendre_all(xi, N + 1, P.data());
    for (int j = 0; j < N; ++j) f += coeffs_(j, k) * (P[j] - P[j + 2]);
  } else {
    const int N = static_cast<int>(coeffs_.rows());
    const double h = (p.b() - p.a()) / (N + 1);
    const double s = (x - p.a()) / h;
    const int j = std::min(static_cast<int>(s), N);
    const double t = s - j;
    const double left = j == 0 ? 0.0 : coeffs_(j - 1, k);
    const double right = j == N ? 0.0 : coeffs_(j, k);
    f = (1 - t) * left + t * right;
  }
  if (measure == Measure::Metric) f *= std::pow(p.weight(x), 0.25);
  return f;
}

double EigenSystem::weighted_norm(int k, const std::function<double(double)>& f, Measure measure) const {
  double s = 0.0;
  for (int q = 0; q < nodes_.size(); ++q) {
    const double rho = measure == Measure::Operator ? w_at_nodes_[q] : std::sqrt(w_at_nodes_[q]);
    s += weights_[q] * rho * values_(q, k) * values_(q, k) * f(nodes_[q]);
  }
  return s;
}

int spectral_grid_for(const ModeProblem& p, double Lambda) {
  double R = 0.0;
  const int S = 600;
  for (int i = 1; i < S; ++i) {
    const double x = p.a() + (p.b() - p.a()) * i / S;
    const double k2 = std::max(Lambda * p.weight(x) - p.mu2(), 0.0);
    R = std::max(R, std::sqrt(k2 * (x - p.a()) * (p.b() - x)));
  }
  return static_cast<int>(std::ceil(1.3 * R)) + 40;
}

}  // namespace zh::sl
