#include "verify/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "common/constants.hpp"
#include "common/errors.hpp"
#include "common/rng.hpp"
#include "geometry/geometry.hpp"
#include "geometry/laplace.hpp"
#include "geometry/meshgen.hpp"
#include "spectral_zeta/flat_traces.hpp"
#include "spectral_zeta/zeta.hpp"
#include "sturm_liouville/mode_trace.hpp"
#include "sturm_liouville/solver.hpp"
#include "uniformization/conformal_metric.hpp"
#include "uniformization/dtn.hpp"
#include "uniformization/functionals.hpp"

namespace zh::verify {

using constants::pi;

bool SuiteReport::passed() const { return failures() == 0; }

int SuiteReport::failures() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
}

namespace {

void record(SuiteReport& r, std::string name, double violation, double tol) {
  r.checks.push_back({std::move(name), std::isfinite(violation) && violation <= tol, violation, tol});
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

struct Nesting {
  double l, A, B, A2, B2;
  int m;
};

Nesting random_nesting(Rng& rng) {
  Nesting n;
  n.l = rng.uniform(0.3, 1.0);
  n.A = rng.uniform(0.4, 1.1);
  n.B = pi - rng.uniform(0.4, 1.1);
  const double w = n.B - n.A;
  n.A2 = n.A + rng.uniform(0.0, 0.25) * w;
  n.B2 = n.B - rng.uniform(0.0, 0.25) * w;
  n.m = static_cast<int>(rng.next() % 4);
  return n;
}

void eigen_monotonicity(SuiteReport& r, Rng& rng) {
  constexpr int k = 10;
  for (int trial = 0; trial < 20; ++trial) {
    const Nesting n = random_nesting(rng);
    const auto outer = sl::ModeProblem::delta_l_m(n.l, n.A, n.B, n.m);
    const auto inner = sl::ModeProblem::delta_l_m(n.l, n.A2, n.B2, n.m);
    const auto so = sl::solve_mode(outer, k, 96);
    const auto si = sl::solve_mode(inner, k, 96);
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      const double slack = so.eigenvalues[j] - si.eigenvalues[j] - so.errors[j] - si.errors[j];
      worst = std::max(worst, slack / so.eigenvalues[j]);
    }
    record(r, fmt("Delta_l(m) l=%.3f [%.3f,%.3f] in [%.3f,", n.l, n.A2, n.B2, n.A) + fmt("%.3f] m=%g", n.B, n.m),
           worst, 0.0);
  }
  // Weighted intervals: shrinking the interval raises every eigenvalue
  for (int trial = 0; trial < 4; ++trial) {
    const double a = rng.uniform(0.2, 0.6), b = rng.uniform(2.0, 2.8);
    const double a2 = a + rng.uniform(0.0, 0.3), b2 = b - rng.uniform(0.0, 0.3);
    const Profile phi = Profile::trig(0.0, {rng.uniform(-0.3, 0.3), rng.uniform(-0.2, 0.2)},
                                      {rng.uniform(0.0, 2 * pi), rng.uniform(0.0, 2 * pi)}, a, b);
    const auto so = sl::solve_mode(sl::ModeProblem::q_phi({a, b, phi}), k, 96);
    const auto si = sl::solve_mode(sl::ModeProblem::q_phi({a2, b2, phi}), k, 96);
    double worst = 0.0;
    for (int j = 0; j < k; ++j)
      worst = std::max(worst, (so.eigenvalues[j] - si.eigenvalues[j] - so.errors[j] - si.errors[j]) / so.eigenvalues[j]);
    record(r, fmt("Q_phi [%.3f,%.3f] in [%.3f,%.3f]", a2, b2, a, b), worst, 0.0);
  }
}

void trace_monotonicity(SuiteReport& r, Rng& rng) {
  const double ts[] = {0.02, 0.1, 0.5, 2.0};
  for (int trial = 0; trial < 12; ++trial) {
    const Nesting n = random_nesting(rng);
    const auto outer = sl::ModeProblem::delta_l_m(n.l, n.A, n.B, n.m);
    const auto inner = sl::ModeProblem::delta_l_m(n.l, n.A2, n.B2, n.m);
    double worst = -1.0;
    for (double t : ts) {
      const auto to = sl::mode_heat_trace(outer, t, 1e-9);
      const auto ti = sl::mode_heat_trace(inner, t, 1e-9);
      worst = std::max(worst, ti.value - to.value - to.error() - ti.error());
    }
    record(r, fmt("theta_m l=%.3f m=%g nested", n.l, n.m), std::max(worst, 0.0), 0.0);
  }
  for (int trial = 0; trial < 4; ++trial) {
    const double l = rng.uniform(0.3, 2.0), b = rng.uniform(0.5, 2.0), b2 = b * rng.uniform(0.5, 1.0);
    double worst = -1.0;
    for (double t : ts) worst = std::max(worst, zeta::flat_cylinder_theta(t, l, b2) - zeta::flat_cylinder_theta(t, l, b));
    record(r, fmt("flat cylinder l=%.3f height %.3f in %.3f", l, b2, b), std::max(worst, 0.0), 0.0);
  }
}

void gauss_bonnet(SuiteReport& r, Rng& rng) {
  auto check_mesh = [&](const std::string& label, const geometry::MetricSurface& mesh) {
    record(r, label + " angle defects", std::abs(mesh.gauss_bonnet_defect()), 1e-10);
    const uniform::ConformalMetric g(mesh);
    // smooth random factor: vertexwise noise would break triangle inequalities
    double a[3], kx[3], ky[3], ph[3];
    for (int j = 0; j < 3; ++j) {
      a[j] = rng.uniform(-0.1, 0.1);
      kx[j] = rng.uniform(-3.0, 3.0);
      ky[j] = rng.uniform(-3.0, 3.0);
      ph[j] = rng.uniform(0.0, 2 * pi);
    }
    Eigen::VectorXd u(mesh.vertex_count());
    for (int i = 0; i < u.size(); ++i) {
      const auto& p = mesh.vertices()[i];
      u[i] = 0.0;
      for (int j = 0; j < 3; ++j) u[i] += a[j] * std::sin(kx[j] * p.x() + ky[j] * p.y() + ph[j]);
    }
    const auto h = g.with_factor(u);
    record(r, label + " conformal rules", std::abs(h.gauss_bonnet_defect()), 1e-10);
    record(r, label + " realized lengths", std::abs(h.realized().gauss_bonnet_defect()), 1e-10);
  };
  for (int trial = 0; trial < 3; ++trial) {
    const double h = rng.uniform(0.08, 0.14);
    const std::uint64_t seed = rng.next();
    check_mesh(fmt("pants spacing %.3f", h), geometry::pants_mesh(h, {}, seed));
  }
  check_mesh("annulus", geometry::annulus_mesh(1.0, rng.uniform(1.5, 4.0), 48, 12));
  {
    const double A = rng.uniform(0.4, 1.2), B = pi - rng.uniform(0.4, 1.2);
    check_mesh(fmt("collar mesh [%.3f,%.3f]", A, B),
               geometry::cylinder_mesh(0.5, A, B, 24, 40, Profile::neg_log_sin()));
  }
  // continuum: a collar has integral K + integral k = 0
  for (int trial = 0; trial < 4; ++trial) {
    const geometry::CollarCylinder c(rng.uniform(0.05, 1.0), rng.uniform(0.2, 1.4), pi - rng.uniform(0.2, 1.4));
    record(r, fmt("collar l=%.3f [%.3f,%.3f] total curvature", c.l, c.A, c.B),
           std::abs(c.total_gauss_curvature() + c.total_geodesic_curvature()), 1e-12);
  }
}

void dtn_operator(SuiteReport& r, Rng& rng) {
  auto check = [&](const std::string& label, const geometry::MetricSurface& mesh) {
    const auto lap = geometry::DiscreteLaplace::assemble(mesh);
    const uniform::DirichletNeumann dtn(mesh, lap.stiffness);
    const Eigen::MatrixXd& T = dtn.matrix();
    const double scale = T.cwiseAbs().maxCoeff();
    record(r, label + " symmetry", (T - T.transpose()).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, scale));
    record(r, label + " constants in kernel", (T * Eigen::VectorXd::Ones(T.rows())).cwiseAbs().maxCoeff(),
           1e-12 * std::max(1.0, scale));
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (T + T.transpose()),
                                                                              Eigen::EigenvaluesOnly).eigenvalues();
    record(r, label + " nonnegative", std::max(0.0, -ev[0]), 1e-10 * scale);
    record(r, label + " kernel is one-dimensional", ev[1] > 1e-8 * scale ? 0.0 : 1.0, 0.0);
  };
  for (int trial = 0; trial < 3; ++trial) {
    const double h = rng.uniform(0.08, 0.14);
    check(fmt("pants spacing %.3f", h), geometry::pants_mesh(h, {}, rng.next()));
  }
  check("annulus", geometry::annulus_mesh(1.0, rng.uniform(1.5, 4.0), 48, 12));
}

void split_point(SuiteReport& r, Rng& rng) {
  zeta::ZetaOptions base;
  for (int trial = 0; trial < 3; ++trial) {
    const double L = rng.uniform(0.3, 3.0);
    const auto trace = zeta::interval_heat_trace(L);
    const double h1 = zeta::zeta_prime_at_zero(trace, base).value;
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      zeta::ZetaOptions o = base;
      o.T = rng.uniform(0.2, 2.0);
      worst = std::max(worst, std::abs(zeta::zeta_prime_at_zero(trace, o).value - h1));
    }
    record(r, fmt("interval L=%.3f", L), worst, 1e-8);
  }
  for (int trial = 0; trial < 3; ++trial) {
    const geometry::FlatCylinder c(rng.uniform(0.5, 2.0), 0.0, rng.uniform(0.5, 2.0));
    const auto trace = zeta::flat_cylinder_heat_trace(c);
    const double h1 = zeta::zeta_prime_at_zero(trace, base).value;
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      zeta::ZetaOptions o = base;
      o.T = rng.uniform(0.2, 2.0);
      worst = std::max(worst, std::abs(zeta::zeta_prime_at_zero(trace, o).value - h1));
    }
    record(r, fmt("flat cylinder l=%.3f b=%.3f", c.l, c.B), worst, 1e-8);
  }
}

// Gradients of F1 and F2 against central differences; midpoint convexity.
void functionals(SuiteReport& r, Rng& rng) {
  const auto mesh = geometry::pants_mesh(0.12, {}, rng.next());
  const uniform::ConformalMetric g(mesh);
  const int n = mesh.vertex_count();
  auto random_vec = [&](int size, double amp) {
    Eigen::VectorXd v(size);
    for (int i = 0; i < size; ++i) v[i] = rng.uniform(-amp, amp);
    return v;
  };
  const uniform::DirichletNeumann dtn(mesh, g.stiffness());
  const int nb = dtn.boundary_size();
  double worst1 = 0.0, worst2 = 0.0;
  for (int k = 0; k < 5; ++k) {
    const Eigen::VectorXd x = random_vec(n, 0.3), d = random_vec(n, 1.0);
    const double e = 1e-5;
    const double fd = (uniform::evaluate_F1(g, x + e * d) - uniform::evaluate_F1(g, x - e * d)) / (2 * e);
    worst1 = std::max(worst1, std::abs(fd - uniform::gradient_F1(g, x).dot(d)) / std::max(1.0, std::abs(fd)));
    const Eigen::VectorXd y = random_vec(nb, 0.3), db = random_vec(nb, 1.0);
    const double fd2 = (uniform::evaluate_F2(g, dtn, y + e * db) - uniform::evaluate_F2(g, dtn, y - e * db)) / (2 * e);
    worst2 = std::max(worst2, std::abs(fd2 - uniform::gradient_F2(g, dtn, y).dot(db)) / std::max(1.0, std::abs(fd2)));
  }
  record(r, "F1 gradient vs central differences", worst1, 1e-6);
  record(r, "F2 gradient vs central differences", worst2, 1e-6);
  double convex1 = 0.0, convex2 = 0.0;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd x = random_vec(n, 0.5), y = random_vec(n, 0.5);
    const Eigen::VectorXd M = g.mass();
    x.array() -= M.dot(x) / M.sum();
    y.array() -= M.dot(y) / M.sum();
    convex1 = std::max(convex1, uniform::evaluate_F1(g, 0.5 * (x + y)) -
                                    0.5 * (uniform::evaluate_F1(g, x) + uniform::evaluate_F1(g, y)));
    const Eigen::VectorXd a = random_vec(nb, 0.5), b = random_vec(nb, 0.5);
    convex2 = std::max(convex2, uniform::evaluate_F2(g, dtn, 0.5 * (a + b)) -
                                    0.5 * (uniform::evaluate_F2(g, dtn, a) + uniform::evaluate_F2(g, dtn, b)));
  }
  record(r, "F1 midpoint convexity", std::max(convex1, 0.0), 1e-10);
  record(r, "F2 midpoint convexity", std::max(convex2, 0.0), 1e-10);
}

using SuiteFn = std::function<void(SuiteReport&, Rng&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"eigen_monotonicity", eigen_monotonicity}, {"trace_monotonicity", trace_monotonicity},
      {"gauss_bonnet", gauss_bonnet},             {"dtn", dtn_operator},
      {"split_point", split_point},               {"functionals", functionals},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  const auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::InvalidArgument, "unknown verification suite: " + name);
  SuiteReport r;
  r.suite = name;
  Rng rng(seed);
  const auto t0 = std::chrono::steady_clock::now();
  it->second(r, rng);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed) {
  std::vector<SuiteReport> out;
  if (name == "all") {
    for (const auto& s : suite_names()) out.push_back(run_suite(s, seed));
  } else {
    out.push_back(run_suite(name, seed));
  }
  return out;
}

}  // namespace zh::verify
