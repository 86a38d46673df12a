#include "collar_heights/collar_heights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "common/constants.hpp"
#include "common/errors.hpp"
#include "common/quadrature.hpp"
#include "spectral_zeta/flat_traces.hpp"

namespace zh::collar {

using constants::pi;
using geometry::CollarCylinder;

double default_t_min(double l) {
  require(l > 0.0, ErrorCode::Domain, "collar: l must be positive");
  return l * l / 1536.0;
}

namespace {

// sum_{m > M} exp(-a m^2) <= exp(-a (M+1)^2) / (1 - exp(-2 a (M+1)))
double gaussian_tail(int M, double a) {
  const double k = M + 1.0;
  return std::exp(-a * k * k) / (-std::expm1(-2.0 * a * k));
}

double max_collar_weight(double A, double B) {
  const double s = std::min(std::sin(A), std::sin(B));
  return 1.01 / (s * s);
}

}  // namespace

CollarModes CollarModes::plan(const CollarCylinder& c, const CollarOptions& o, bool include_zero_mode) {
  require(o.budget > 0.0 && o.grid_scale > 0.0, ErrorCode::InvalidArgument, "collar: budget and grid scale must be positive");
  CollarModes cm;
  cm.collar_ = c;
  cm.t_min_ = o.t_min > 0.0 ? o.t_min : default_t_min(c.l);
  cm.has_zero_ = include_zero_mode;
  cm.weight_max_ = max_collar_weight(c.A, c.B);
  cm.zero_problem_ = std::make_shared<const sl::ModeProblem>(sl::ModeProblem::delta_l_m(c.l, c.A, c.B, 0));
  // Rayleigh quotients of mode m exceed those of mode 0 by mu^2 / w_max, so
  // theta_m(t) <= theta_0(t) exp(-t mu_m^2 / w_max).
  int M = 0;
  while (2.0 * cm.excluded_bound_for(M, cm.t_min_) > 0.25 * o.budget) {
    ++M;
    require(M < 100000, ErrorCode::Accuracy, "collar: mode cutoff does not converge");
  }
  cm.max_mode_ = M;
  const double mode_budget = 0.75 * o.budget / (2.0 * M + 1.0);
  cm.modes_.resize(M + 1);
  for (int m = include_zero_mode ? 0 : 1; m <= M; ++m) {
    const sl::ModeProblem p = sl::ModeProblem::delta_l_m(c.l, c.A, c.B, m);
    sl::TracePlan plan;
    plan.t_min = cm.t_min_;
    plan.budget = mode_budget;
    plan.solver.method = o.method;
    if (o.grid_scale != 1.0) {
      int g = sl::spectral_grid_for(p, 30.0 / cm.t_min_);
      if (o.method == sl::Discretization::FiniteDifference2) g = 8 * g + 1;
      plan.initial_grid = static_cast<int>(std::ceil(o.grid_scale * g));
    }
    cm.modes_[m] = std::make_shared<const sl::ModeTrace>(sl::plan_mode_trace(p, plan));
  }
  return cm;
}

double CollarModes::excluded_bound_for(int M, double t) const {
  const double mu = 2.0 * pi / collar_.l;
  return sl::full_trace_bound(*zero_problem_, t) * gaussian_tail(M, t * mu * mu / weight_max_);
}

double CollarModes::excluded_bound(double t) const { return excluded_bound_for(max_mode_, t); }

std::shared_ptr<const sl::ModeTrace> CollarModes::mode(int m) const {
  require(m >= 0 && m <= max_mode_ && modes_[m], ErrorCode::InvalidArgument, "collar: mode not available");
  return modes_[m];
}

zeta::ModeSum CollarModes::full_sum() const {
  require(has_zero_, ErrorCode::InvalidArgument, "collar: zero mode was not computed");
  zeta::ModeSum s;
  for (int m = 0; m <= max_mode_; ++m) {
    s.modes.push_back(modes_[m]);
    s.factors.push_back(m == 0 ? 1.0 : 2.0);
  }
  const CollarModes self = *this;
  s.excluded = [self](double t) { return 2.0 * self.excluded_bound(t); };
  return s;
}

zeta::ModeSum CollarModes::half_sum() const {
  require(max_mode_ >= 1, ErrorCode::InvalidArgument, "collar: no nonzero modes");
  zeta::ModeSum s;
  for (int m = 1; m <= max_mode_; ++m) {
    s.modes.push_back(modes_[m]);
    s.factors.push_back(1.0);
  }
  const CollarModes self = *this;
  s.excluded = [self](double t) { return self.excluded_bound(t); };
  return s;
}

zeta::ModeSum CollarModes::zero_mode_sum() const {
  require(has_zero_, ErrorCode::InvalidArgument, "collar: zero mode was not computed");
  zeta::ModeSum s;
  s.modes.push_back(modes_[0]);
  s.factors.push_back(1.0);
  return s;
}

zeta::HeatTrace collar_heat_trace(const CollarModes& modes) {
  const double t = modes.t_min();
  return zeta::heat_trace_of_product("collar", modes.full_sum(), geometry::trace_asymptotics(modes.collar()), t,
                                     {t, 12.0 * t});
}

zeta::CornerHeatTrace half_collar_heat_trace(const CollarModes& modes) {
  return zeta::CornerHeatTrace::from_modes("half collar", geometry::HalfCollar::corner_count, modes.half_sum());
}

geometry::TraceCoefficients half_collar_coefficients(const CollarCylinder& c) {
  const geometry::TraceCoefficients cc = geometry::trace_asymptotics(c);
  const geometry::TraceCoefficients ci =
      geometry::trace_asymptotics(geometry::WeightedInterval(c.A, c.B, Profile::neg_log_sin()));
  geometry::TraceCoefficients h;
  h.c1 = 0.5 * (cc.c1 - ci.c1);
  h.c2 = 0.5 * (cc.c2 - ci.c2);
  h.c3 = 0.5 * (cc.c3 - ci.c3);
  return h;
}

double flat_cylinder_shift(const geometry::FlatCylinder& c, const Profile& psi) {
  const quad::Result e = quad::integrate([&](double v) { return psi.d1(v) * psi.d1(v); }, c.A, c.B, 1e-14);
  return c.l * (0.5 * e.value) / (6.0 * pi) + c.l * (psi.d1(c.B) - psi.d1(c.A)) / (4.0 * pi);
}

double collar_shift(const CollarCylinder& c) {
  const double d = 1.0 / std::tan(c.A) - 1.0 / std::tan(c.B);
  return c.l * (d - (c.B - c.A)) / (12.0 * pi) + c.l * d / (4.0 * pi);
}

Height collar_height_conformal(const CollarCylinder& c, const zeta::ZetaOptions& zo) {
  const geometry::FlatCylinder flat(c.l, c.A, c.B);
  Height h = zeta::zeta_prime_at_zero(zeta::flat_cylinder_heat_trace(flat), zo);
  h.value += collar_shift(c);
  h.zeta_at_zero = 0.0;
  return h;
}

Height collar_height_direct(const CollarCylinder& c, const CollarOptions& o) {
  const CollarModes modes = CollarModes::plan(c, o);
  zeta::ZetaOptions zo;
  zo.T = o.T;
  zo.tolerance = o.tolerance;
  return zeta::zeta_prime_at_zero(collar_heat_trace(modes), zo);
}

CollarHeightResult collar_height(const CollarCylinder& c, Route route, const CollarOptions& o) {
  CollarHeightResult r;
  r.l = c.l;
  r.A = c.A;
  r.B = c.B;
  if (route != Route::Conformal) r.h_direct = collar_height_direct(c, o);
  if (route != Route::Direct) {
    zeta::ZetaOptions zo;
    zo.T = o.T;
    r.h_conformal = collar_height_conformal(c, zo);
  }
  r.Z_prime_0 = zeta::one_d_polyakov(geometry::WeightedInterval(c.A, c.B, Profile::neg_log_sin()));
  r.h_half = 0.5 * (r.best().value - r.Z_prime_0);
  if (r.h_direct && r.h_conformal) {
    r.route_difference = std::abs(r.h_direct->value - r.h_conformal->value);
    const double allowed = r.h_direct->numerical_error + r.h_conformal->numerical_error + 1e-12;
    if (r.route_difference > allowed) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "collar: direct and conformal heights differ by %.3g, combined error %.3g",
                    r.route_difference, allowed);
      fail(ErrorCode::Consistency, buf);
    }
  }
  return r;
}

HalfCollarResult half_collar_height(const geometry::HalfCollar& hc, Route route, const CollarOptions& o) {
  const CollarCylinder& c = hc.base;
  HalfCollarResult r;
  r.Z_prime_0 = zeta::one_d_polyakov(geometry::WeightedInterval(c.A, c.B, Profile::neg_log_sin()));
  Height hC;
  if (route == Route::Conformal) {
    zeta::ZetaOptions zo;
    zo.T = o.T;
    hC = collar_height_conformal(c, zo);
  } else {
    hC = collar_height_direct(c, o);
  }
  r.h_collar = hC.value;
  r.identity = hC;
  r.identity.value = 0.5 * (hC.value - r.Z_prime_0);
  r.identity.numerical_error = 0.5 * hC.numerical_error;
  r.identity.zeta_at_zero = half_collar_coefficients(c).c3;
  if (route != Route::Conformal) {
    // independent solve on different grids, corners and all
    CollarOptions oi = o;
    oi.grid_scale = 1.17 * o.grid_scale;
    const CollarModes modes = CollarModes::plan(c, oi, false);
    const zeta::CornerHeatTrace tr = half_collar_heat_trace(modes);
    zeta::ZetaOptions zo;
    zo.T = o.T;
    zo.tolerance = o.tolerance;
    const double t = modes.t_min();
    r.direct = zeta::zeta_prime_at_zero(tr, half_collar_coefficients(c), modes.half_sum().lambda1_lower(), t,
                                        {t, 12.0 * t}, zo);
  }
  return r;
}

double leading_term(geometry::SubcollarKind kind, double l, Leading leading, bool drop_log) {
  const double f = leading == Leading::Stated ? 1.0 : 2.0;
  const double lg = drop_log ? 0.0 : std::log(l);
  switch (kind) {
    case geometry::SubcollarKind::I:
      return f * pi * pi / (6.0 * l) + lg;
    case geometry::SubcollarKind::II:
      return f * pi * pi / (12.0 * l) + lg;
    case geometry::SubcollarKind::III:
      return f * pi * pi / (12.0 * l);
  }
  return 0.0;
}

SweepResult asymptotic_sweep(geometry::SubcollarKind kind, const std::vector<double>& l_grid, Leading leading,
                             bool drop_log) {
  require(!l_grid.empty(), ErrorCode::InvalidArgument, "sweep: empty l grid");
  SweepResult s;
  s.kind = kind;
  s.leading = leading;
  s.drop_log = drop_log;
  double lo = 0.0, hi = 0.0;
  for (double l : l_grid) {
    require(l > 0.0 && l < pi / 8.0, ErrorCode::Domain, "sweep: l must lie in (0, pi/8)");
    const geometry::Subcollar sc = geometry::standard_subcollar(l, kind);
    SweepRow row;
    row.l = l;
    if (sc.half()) {
      const HalfCollarResult h = half_collar_height(geometry::HalfCollar(sc.cylinder), Route::Conformal);
      row.h = h.identity.value;
      row.error = h.identity.numerical_error;
    } else {
      const Height h = collar_height_conformal(sc.cylinder);
      row.h = h.value;
      row.error = h.numerical_error;
    }
    row.leading = leading_term(kind, l, leading, drop_log);
    row.residual = row.h - row.leading;
    if (s.rows.empty()) lo = hi = row.residual;
    lo = std::min(lo, row.residual);
    hi = std::max(hi, row.residual);
    s.rows.push_back(row);
  }
  s.spread = hi - lo;
  return s;
}

std::string sweep_to_csv(const SweepResult& s) {
  std::string out = "l,h,leading,residual,error\r\n";
  char buf[200];
  for (const auto& r : s.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\r\n", r.l, r.h, r.leading, r.residual, r.error);
    out += buf;
  }
  return out;
}

InsertionResult insertion_gap(double l, double A, double B, double A_in, double B_in) {
  require(A < A_in && A_in <= B_in && B_in < B, ErrorCode::Domain, "insertion: need A < A' <= B' < B");
  InsertionResult r;
  auto h = [&](double a, double b) {
    const Height x = collar_height_conformal(CollarCylinder(l, a, b));
    r.error += x.numerical_error;
    r.pieces.push_back(x.value);
    return x.value;
  };
  r.gap = h(A, B) - h(A, A_in);
  if (B_in > A_in) r.gap -= h(A_in, B_in);
  r.gap -= h(B_in, B);
  return r;
}

}  // namespace zh::collar
