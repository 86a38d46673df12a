#include "sturm_liouville/mode_trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/constants.hpp"
#include "common/errors.hpp"

namespace zh::sl {

using constants::pi;

CountingBound::CountingBound(const ModeProblem& p, int pieces) : mu2_(p.mu2()) {
  // Cut points equidistributed in sqrt(w) dx.
  const int S = 64 * pieces;
  std::vector<double> xs(S + 1), cum(S + 1, 0.0);
  for (int i = 0; i <= S; ++i) xs[i] = p.a() + (p.b() - p.a()) * i / S;
  for (int i = 0; i < S; ++i) cum[i + 1] = cum[i] + (xs[i + 1] - xs[i]) * std::sqrt(p.weight(0.5 * (xs[i] + xs[i + 1])));
  int i0 = 0;
  sqrt_coeff_ = 0.0;
  for (int j = 0; j < pieces; ++j) {
    int i1 = i0;
    const double target = cum[S] * (j + 1) / pieces;
    while (i1 < S && (cum[i1] < target || i1 == i0)) ++i1;
    if (j == pieces - 1) i1 = S;
    double w = 0.0;
    for (int i = i0; i <= i1; ++i) w = std::max(w, p.weight(xs[i]));
    w *= 1.01;
    length_.push_back(xs[i1] - xs[i0]);
    wmax_.push_back(w);
    sqrt_coeff_ += length_.back() * std::sqrt(w) / pi;
    i0 = i1;
    if (i0 == S) break;
  }
}

double CountingBound::count(double Lambda) const {
  double n = 0.0;
  for (std::size_t j = 0; j < length_.size(); ++j) {
    const double k2 = Lambda * wmax_[j] - mu2_;
    if (k2 >= 0.0) n += 1.0 + length_[j] * std::sqrt(k2) / pi;
  }
  return n;
}

double CountingBound::tail(double t, int n, double lambda_floor) const {
  // sum_{k>n} e^{-t lambda_k} = int t e^{-t L} #{k > n : lambda_k <= L} dL
  // over L >= lambda_floor; upper Riemann sum in s = t (L - lambda_floor).
  const double floor = std::max(lambda_floor, 0.0);
  const double ds = 0.02, s_max = 60.0;
  double acc = 0.0;
  for (double s = 0.0; s < s_max; s += ds) {
    const double c = count(floor + (s + ds) / t) - n;
    if (c > 0.0) acc += (std::exp(-s) - std::exp(-s - ds)) * c;
  }
  const double P = static_cast<double>(length_.size());
  acc += std::exp(-s_max) * (P + sqrt_coeff_ * (std::sqrt(floor) + std::sqrt(s_max / t) + 1.0 / std::sqrt(t)));
  return std::exp(-t * floor) * acc;
}

ModeTrace::ModeTrace(const ModeProblem& problem, Spectrum spectrum)
    : problem_(problem), spectrum_(std::move(spectrum)), counting_(problem_) {
  require(spectrum_.count() > 0, ErrorCode::InvalidArgument, "mode trace: empty spectrum");
  require(spectrum_.eigenvalues.front() > 0.0, ErrorCode::Domain, "mode trace: nonpositive eigenvalue");
}

ModeTrace::ModeTrace(const ModeProblem& problem, EigenSystem system)
    : ModeTrace(problem, system.spectrum) {
  system_ = std::move(system);
}

double ModeTrace::tail_bound(double t) const {
  const int n = spectrum_.count();
  return counting_.tail(t, n, spectrum_.eigenvalues.back() - spectrum_.errors.back());
}

double ModeTrace::discretization_bound(double t) const {
  double b = 0.0;
  for (int k = 0; k < spectrum_.count(); ++k) {
    const double e = spectrum_.errors[k];
    b += t * e * std::exp(-t * (spectrum_.eigenvalues[k] - e));
  }
  return b;
}

TraceEstimate ModeTrace::trace(double t) const {
  require(t > 0.0, ErrorCode::Domain, "trace: t must be positive");
  TraceEstimate r;
  // largest eigenvalues first keeps the sum accurate
  for (int k = spectrum_.count() - 1; k >= 0; --k) r.value += std::exp(-t * spectrum_.eigenvalues[k]);
  r.tail = tail_bound(t);
  r.discretization = discretization_bound(t);
  return r;
}

TraceEstimate ModeTrace::modified_trace(const std::function<double(double)>& varphi, double t) const {
  require(system_.has_value(), ErrorCode::InvalidArgument, "modified trace: eigenfunctions were not computed");
  require(t > 0.0, ErrorCode::Domain, "trace: t must be positive");
  const EigenSystem& es = *system_;
  double sup = 0.0;
  const auto& x = es.nodes();
  std::vector<double> f(x.size());
  for (int q = 0; q < x.size(); ++q) {
    f[q] = varphi(x[q]);
    sup = std::max(sup, std::abs(f[q]));
  }
  const auto& V = es.node_values();
  const auto& wt = es.weights();
  TraceEstimate r;
  for (int k = spectrum_.count() - 1; k >= 0; --k) {
    double s = 0.0;
    for (int q = 0; q < x.size(); ++q) s += wt[q] * problem_.weight(x[q]) * V(q, k) * V(q, k) * f[q];
    r.value += std::exp(-t * spectrum_.eigenvalues[k]) * s;
  }
  r.tail = sup * tail_bound(t);
  r.discretization = sup * discretization_bound(t);
  return r;
}

double ModeTrace::diagonal_kernel(double x, double t, Measure measure) const {
  require(system_.has_value(), ErrorCode::InvalidArgument, "diagonal kernel: eigenfunctions were not computed");
  double s = 0.0;
  for (int k = spectrum_.count() - 1; k >= 0; --k) {
    const double f = system_->eigenfunction(k, x, Measure::Operator);
    s += std::exp(-t * spectrum_.eigenvalues[k]) * f * f;
  }
  // kernel against sqrt(w) dx is the operator-measure kernel times sqrt(w)
  if (measure == Measure::Metric) s *= std::sqrt(problem_.weight(x));
  return s;
}

namespace {

// Worst case of the discretization bound over t >= t_min.
double worst_discretization(const ModeTrace& mt, double t_min) {
  const double lam1 = mt.spectrum().eigenvalues.front();
  double worst = 0.0;
  for (double t = t_min; t < 60.0 / lam1; t *= 1.25) worst = std::max(worst, mt.discretization_bound(t));
  return worst;
}

}  // namespace

ModeTrace plan_mode_trace(const ModeProblem& problem, const TracePlan& plan) {
  require(plan.t_min > 0.0 && plan.budget > 0.0, ErrorCode::InvalidArgument, "trace plan: t_min and budget must be positive");
  const CountingBound cb(problem);
  double X = 30.0;
  int grid_override = plan.initial_grid;
  for (int attempt = 0; attempt < 14; ++attempt) {
    const double Lambda = X / plan.t_min;
    int grid = grid_override > 0 ? grid_override : spectral_grid_for(problem, Lambda);
    if (plan.solver.method == Discretization::FiniteDifference2 && grid_override == 0) grid = 8 * grid + 1;
    const int n_req = std::max(1, std::min(grid, static_cast<int>(std::ceil(cb.count(Lambda)))));
    SolverOptions o = plan.solver;
    o.vectors = false;
    Spectrum sp = solve_mode_raw(problem, n_req, grid, o);
    // keep eigenvalues up to the cutoff (at least one)
    int n = 0;
    while (n < sp.count() && sp.eigenvalues[n] <= Lambda) ++n;
    n = std::max(n, 1);
    sp.eigenvalues.resize(n);
    sp.errors.resize(n);
    std::optional<ModeTrace> mt;
    if (plan.solver.vectors) {
      o.rel_tol = std::numeric_limits<double>::infinity();
      mt.emplace(problem, solve_mode_system(problem, n, grid, o));
    } else {
      mt.emplace(problem, std::move(sp));
    }
    const double tail = mt->tail_bound(plan.t_min);
    const double disc = worst_discretization(*mt, plan.t_min);
    const bool tail_ok = tail <= 0.5 * plan.budget;
    const bool disc_ok = disc <= 0.5 * plan.budget;
    if (tail_ok && disc_ok) return std::move(*mt);
    if (!tail_ok) X *= 1.35;
    if (!disc_ok) grid_override = static_cast<int>(1.3 * grid) + 8;
    if (!tail_ok && grid_override > 0) grid_override = std::max(grid_override, spectral_grid_for(problem, X / plan.t_min));
  }
  throw AccuracyError("trace plan: budget not reachable", 0.0, plan.budget);
}

TraceEstimate mode_heat_trace(const ModeProblem& problem, double t, double tol, const SolverOptions& opts) {
  require(t > 0.0, ErrorCode::Domain, "mode_heat_trace: t must be positive");
  TracePlan plan;
  plan.t_min = t;
  plan.budget = tol;
  plan.solver = opts;
  const TraceEstimate r = plan_mode_trace(problem, plan).trace(t);
  if (r.error() > tol) throw AccuracyError("mode_heat_trace: error bound above tolerance", r.value, r.error());
  return r;
}

TraceEstimate modified_mode_trace(const ModeProblem& problem, const std::function<double(double)>& varphi, double t,
                                  double tol, const SolverOptions& opts) {
  TracePlan plan;
  plan.t_min = t;
  plan.budget = tol;
  plan.solver = opts;
  plan.solver.vectors = true;
  const TraceEstimate r = plan_mode_trace(problem, plan).modified_trace(varphi, t);
  if (r.error() > tol) throw AccuracyError("modified_mode_trace: error bound above tolerance", r.value, r.error());
  return r;
}

double full_trace_bound(const ModeProblem& problem, double t) {
  return CountingBound(problem).tail(t, 0, problem.mu2() / (1.01 * problem.max_weight()));
}

}  // namespace zh::sl
