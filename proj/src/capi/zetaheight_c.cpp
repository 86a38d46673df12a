#include "zetaheight/zetaheight.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "collar_heights/collar_heights.hpp"
#include "common/constants.hpp"
#include "common/errors.hpp"
#include "common/rng.hpp"
#include "geometry/meshgen.hpp"
#include "json.hpp"
#include "spectral_zeta/flat_traces.hpp"
#include "spectral_zeta/zeta.hpp"
#include "uniformization/maps.hpp"
#include "uniformization/polyakov.hpp"
#include "verify/verify.hpp"

struct zh_mesh {
  zh::geometry::MetricSurface surface;
};

struct zh_uniformization {
  zh::uniform::ConformalMetric metric;  // output metric on the input triangulation
  Eigen::VectorXd factor;               // relative to the input metric
  zh::uniform::UniformizationResult result;
  zh::uniform::UniformityReport measured;
  double target_K = 0.0;
  bool type_one = false;
};

namespace {

using namespace zh;

thread_local std::string last_error;

zh_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::Domain: return ZH_ERR_DOMAIN;
    case ErrorCode::Accuracy: return ZH_ERR_ACCURACY;
    case ErrorCode::Consistency: return ZH_ERR_CONSISTENCY;
    case ErrorCode::Precondition: return ZH_ERR_PRECONDITION;
    case ErrorCode::Convergence: return ZH_ERR_CONVERGENCE;
    case ErrorCode::Topology: return ZH_ERR_TOPOLOGY;
    case ErrorCode::Fit: return ZH_ERR_FIT;
    case ErrorCode::Io: return ZH_ERR_IO;
    case ErrorCode::InvalidArgument: return ZH_ERR_INVALID_ARGUMENT;
  }
  return ZH_ERR_INTERNAL;
}

template <class F>
zh_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return ZH_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return ZH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return ZH_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return ZH_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

zh_options options_or_default(const zh_options* o) {
  zh_options d;
  zh_options_default(&d);
  return o ? *o : d;
}

zh_height to_c(const zeta::Height& h) { return {h.value, h.numerical_error, h.zeta_at_zero, h.T}; }

zeta::SpectralOptions spectral_options(const zh_options& o) {
  zeta::SpectralOptions s;
  if (o.t_min > 0) s.t_min = o.t_min;
  if (o.budget > 0) s.budget = o.budget;
  if (o.tolerance > 0) s.tolerance = o.tolerance;
  s.T = o.T;
  s.method = o.method == ZH_METHOD_FD2 ? sl::Discretization::FiniteDifference2 : sl::Discretization::Spectral;
  return s;
}

collar::CollarOptions collar_options(const zh_options& o) {
  collar::CollarOptions c;
  c.t_min = o.t_min;
  if (o.budget > 0) c.budget = o.budget;
  if (o.tolerance > 0) c.tolerance = o.tolerance;
  c.T = o.T;
  c.grid_scale = o.grid_scale > 0 ? o.grid_scale : 1.0;
  c.method = o.method == ZH_METHOD_FD2 ? sl::Discretization::FiniteDifference2 : sl::Discretization::Spectral;
  return c;
}

Profile make_profile(zh_profile_kind kind, const double* coeffs, size_t n, double a, double b) {
  switch (kind) {
    case ZH_PROFILE_CONSTANT:
      return Profile::constant(n > 0 && coeffs ? coeffs[0] : 0.0);
    case ZH_PROFILE_NEG_LOG_SIN:
      return Profile::neg_log_sin();
    case ZH_PROFILE_LOG_SIN:
      return Profile::log_sin();
    case ZH_PROFILE_TRIG: {
      require(coeffs && n >= 1 && n % 2 == 1, ErrorCode::InvalidArgument,
              "trig profile needs c followed by (amplitude, phase) pairs");
      std::vector<double> amp, phase;
      for (size_t k = 1; k + 1 < n; k += 2) {
        amp.push_back(coeffs[k]);
        phase.push_back(coeffs[k + 1]);
      }
      return Profile::trig(coeffs[0], amp, phase, a, b);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown profile kind");
}

geometry::SubcollarKind to_kind(zh_subcollar k) {
  switch (k) {
    case ZH_SC_I: return geometry::SubcollarKind::I;
    case ZH_SC_II: return geometry::SubcollarKind::II;
    case ZH_SC_III: return geometry::SubcollarKind::III;
  }
  fail(ErrorCode::InvalidArgument, "unknown subcollar kind");
}

zh_uniformity to_c(const uniform::UniformityReport& r) {
  return {r.target_K,        r.mean_K,       r.max_K_deviation, r.max_K_deviation_inner,
          r.rms_K_deviation, r.max_k_spread, r.max_k_deviation, r.mesh_size};
}

Eigen::VectorXd random_start(int n, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-0.5, 0.5);
  return v;
}

zh_uniformization* uniformize(const uniform::ConformalMetric& input, zh_uniform_map map,
                              const zh_uniform_options& o) {
  uniform::NewtonOptions nopts;
  nopts.tolerance = o.tolerance > 0 ? o.tolerance : 1e-10;
  nopts.max_iterations = o.max_iterations > 0 ? o.max_iterations : 100;
  const int chi = input.euler_characteristic();
  std::optional<uniform::ConformalMetric> out;
  uniform::UniformizationResult res;
  double target_K = 0.0;
  bool type_one = false;
  switch (map) {
    case ZH_MAP_PSI: {
      if (o.init_seed) nopts.initial = random_start(input.vertex_count(), o.init_seed);
      auto m = uniform::map_Psi(input, o.area, nopts);
      res = m.minimization;
      out = m.metric;
      target_K = 2.0 * constants::pi * chi / out->area();
      type_one = true;
      break;
    }
    case ZH_MAP_F2: {
      if (o.init_seed)
        nopts.initial = random_start(static_cast<int>(input.base().boundary_vertices().size()), o.init_seed);
      res = uniform::minimize_F2(input, o.area > 0 ? o.area : input.area(), nopts);
      out = input.rescaled(res.factor);
      break;
    }
    case ZH_MAP_PHI: {
      if (o.init_seed)
        nopts.initial = random_start(static_cast<int>(input.base().boundary_vertices().size()), o.init_seed);
      auto m = uniform::map_Phi(input, o.area, o.precondition_tol > 0 ? o.precondition_tol : 1e-6, nopts);
      res = m.minimization;
      out = m.metric;
      break;
    }
    default:
      fail(ErrorCode::InvalidArgument, "unknown uniformization map");
  }
  auto* u = new zh_uniformization{*out, out->u() - input.u(), res, {}, target_K, type_one};
  u->measured = uniform::measure_uniformity(out->realized(), target_K);
  return u;
}

}  // namespace

extern "C" {

const char* zh_last_error(void) { return last_error.c_str(); }

const char* zh_status_name(zh_status s) {
  switch (s) {
    case ZH_OK: return "ok";
    case ZH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ZH_ERR_DOMAIN: return "domain error";
    case ZH_ERR_ACCURACY: return "accuracy error";
    case ZH_ERR_CONSISTENCY: return "consistency error";
    case ZH_ERR_PRECONDITION: return "precondition violated";
    case ZH_ERR_CONVERGENCE: return "no convergence";
    case ZH_ERR_TOPOLOGY: return "unsupported topology";
    case ZH_ERR_FIT: return "fit error";
    case ZH_ERR_IO: return "i/o error";
    case ZH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* zh_version(void) { return "1.0.0"; }

void zh_string_free(char* s) { std::free(s); }

void zh_options_default(zh_options* o) {
  if (!o) return;
  o->t_min = 0.0;
  o->budget = 0.0;
  o->T = 1.0;
  o->tolerance = 0.0;
  o->grid_scale = 1.0;
  o->method = ZH_METHOD_SPECTRAL;
}

zh_status zh_det_interval(double length, const zh_options* opts, zh_height* out) {
  return guarded([&] {
    need(out, "out");
    require(length > 0 && std::isfinite(length), ErrorCode::Domain, "interval length must be positive");
    const auto o = options_or_default(opts);
    *out = to_c(zeta::one_d_zeta_prime_spectral(geometry::WeightedInterval(0.0, length), spectral_options(o)));
  });
}

zh_status zh_det_weighted_interval(double a, double b, zh_profile_kind kind, const double* coeffs, size_t n,
                                   const zh_options* opts, zh_height* out, double* closed_form) {
  return guarded([&] {
    need(out, "out");
    require(a < b, ErrorCode::InvalidArgument, "interval needs a < b");
    const auto o = options_or_default(opts);
    const geometry::WeightedInterval iv(a, b, make_profile(kind, coeffs, n, a, b));
    *out = to_c(zeta::one_d_zeta_prime_spectral(iv, spectral_options(o)));
    if (closed_form) *closed_form = zeta::one_d_polyakov(iv);
  });
}

zh_status zh_det_flat_cylinder(double l, double b, const zh_options* opts, zh_height* out, double* closed_form) {
  return guarded([&] {
    need(out, "out");
    require(l > 0 && b > 0, ErrorCode::InvalidArgument, "flat cylinder needs l > 0 and b > 0");
    const auto o = options_or_default(opts);
    zeta::ZetaOptions zo;
    zo.T = o.T;
    if (o.tolerance > 0) zo.tolerance = o.tolerance;
    *out = to_c(zeta::zeta_prime_at_zero(zeta::flat_cylinder_heat_trace(geometry::FlatCylinder(l, 0.0, b)), zo));
    if (closed_form) *closed_form = zeta::flat_cylinder_zeta_prime(l, b);
  });
}

zh_status zh_collar_height(double l, double A, double B, zh_route route, const zh_options* opts,
                           zh_collar_result* out) {
  return guarded([&] {
    need(out, "out");
    const auto o = options_or_default(opts);
    collar::Route r = route == ZH_ROUTE_DIRECT      ? collar::Route::Direct
                      : route == ZH_ROUTE_CONFORMAL ? collar::Route::Conformal
                                                    : collar::Route::Both;
    const auto res = collar::collar_height(geometry::CollarCylinder(l, A, B), r, collar_options(o));
    *out = {};
    if (res.h_direct) {
      out->has_direct = 1;
      out->direct = to_c(*res.h_direct);
    }
    if (res.h_conformal) {
      out->has_conformal = 1;
      out->conformal = to_c(*res.h_conformal);
    }
    out->h_half = res.h_half;
    out->z_prime_0 = res.Z_prime_0;
    out->route_difference = res.route_difference;
  });
}

zh_status zh_sweep(zh_subcollar kind, const double* l, size_t n, zh_leading leading, int drop_log,
                   zh_sweep_row* rows, double* spread) {
  return guarded([&] {
    need(l, "l");
    need(rows, "rows");
    const auto s = collar::asymptotic_sweep(to_kind(kind), std::vector<double>(l, l + n),
                                            leading == ZH_LEADING_CORRECTED ? collar::Leading::Corrected
                                                                            : collar::Leading::Stated,
                                            drop_log != 0);
    for (size_t i = 0; i < n; ++i) rows[i] = {s.rows[i].l, s.rows[i].h, s.rows[i].error, s.rows[i].leading, s.rows[i].residual};
    if (spread) *spread = s.spread;
  });
}

double zh_leading_term(zh_subcollar kind, double l, zh_leading leading, int drop_log) {
  try {
    return collar::leading_term(to_kind(kind), l,
                                leading == ZH_LEADING_CORRECTED ? collar::Leading::Corrected : collar::Leading::Stated,
                                drop_log != 0);
  } catch (...) {
    return NAN;
  }
}

zh_status zh_insertion_gap(double l, double A, double B, double A_in, double B_in, double* gap, double* error,
                           double pieces[4], size_t* n_pieces) {
  return guarded([&] {
    need(gap, "gap");
    const auto r = collar::insertion_gap(l, A, B, A_in, B_in);
    *gap = r.gap;
    if (error) *error = r.error;
    if (pieces)
      for (size_t i = 0; i < r.pieces.size() && i < 4; ++i) pieces[i] = r.pieces[i];
    if (n_pieces) *n_pieces = r.pieces.size();
  });
}

zh_status zh_mesh_read(const char* path, zh_mesh** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new zh_mesh{geometry::read_mesh(path)};
  });
}

zh_status zh_mesh_parse(const char* text, zh_mesh** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new zh_mesh{geometry::parse_mesh(text)};
  });
}

zh_status zh_mesh_pants(double spacing, uint64_t seed, zh_mesh** out) {
  return guarded([&] {
    need(out, "out");
    require(spacing > 0.005 && spacing < 0.5, ErrorCode::InvalidArgument, "pants spacing must lie in (0.005, 0.5)");
    *out = new zh_mesh{geometry::pants_mesh(spacing, {}, seed)};
  });
}

zh_status zh_mesh_annulus(double r1, double r2, int n_theta, int n_r, zh_mesh** out) {
  return guarded([&] {
    need(out, "out");
    *out = new zh_mesh{geometry::annulus_mesh(r1, r2, n_theta, n_r)};
  });
}

zh_status zh_mesh_cylinder(double l, double A, double B, int nu, int nv, zh_profile_kind kind, const double* coeffs,
                           size_t n, zh_mesh** out) {
  return guarded([&] {
    need(out, "out");
    *out = new zh_mesh{geometry::cylinder_mesh(l, A, B, nu, nv, make_profile(kind, coeffs, n, A, B))};
  });
}

zh_status zh_mesh_perturb(const zh_mesh* mesh, double eta, uint64_t seed, zh_mesh** out) {
  return guarded([&] {
    need(mesh, "mesh");
    need(out, "out");
    *out = new zh_mesh{geometry::perturb_interior(mesh->surface, eta, seed)};
  });
}

zh_status zh_mesh_write(const zh_mesh* mesh, const char* path) {
  return guarded([&] {
    need(mesh, "mesh");
    need(path, "path");
    geometry::write_mesh(mesh->surface, path);
  });
}

void zh_mesh_free(zh_mesh* mesh) { delete mesh; }

zh_status zh_mesh_get_info(const zh_mesh* mesh, zh_mesh_info* out) {
  return guarded([&] {
    need(mesh, "mesh");
    need(out, "out");
    const auto& m = mesh->surface;
    *out = {m.vertex_count(),
            m.edge_count(),
            m.triangle_count(),
            static_cast<int>(m.boundary_loops().size()),
            m.euler_characteristic(),
            m.area(),
            m.boundary_length(),
            m.mesh_size(),
            m.gauss_bonnet_defect()};
  });
}

void zh_uniform_options_default(zh_uniform_options* o) {
  if (!o) return;
  o->area = 0.0;
  o->tolerance = 1e-10;
  o->max_iterations = 100;
  o->init_seed = 0;
  o->precondition_tol = 1e-6;
}

zh_status zh_uniformize(const zh_mesh* mesh, zh_uniform_map map, const zh_uniform_options* opts,
                        zh_uniformization** out) {
  return guarded([&] {
    need(mesh, "mesh");
    need(out, "out");
    zh_uniform_options o;
    zh_uniform_options_default(&o);
    if (opts) o = *opts;
    *out = uniformize(uniform::ConformalMetric(mesh->surface), map, o);
  });
}

zh_status zh_uniformize_result(const zh_uniformization* input, zh_uniform_map map, const zh_uniform_options* opts,
                               zh_uniformization** out) {
  return guarded([&] {
    need(input, "input");
    need(out, "out");
    zh_uniform_options o;
    zh_uniform_options_default(&o);
    if (opts) o = *opts;
    std::unique_ptr<zh_uniformization> u(uniformize(input->metric, map, o));
    u->factor = u->metric.u();  // relative to the original mesh
    *out = u.release();
  });
}

zh_status zh_uniformization_info(const zh_uniformization* u, zh_uniform_info* out) {
  return guarded([&] {
    need(u, "u");
    need(out, "out");
    const auto kappa = u->metric.curvature(), M = u->metric.mass();
    double dev = 0.0;
    for (int v : u->metric.base().interior_vertices()) dev = std::max(dev, std::abs(kappa[v] / M[v] - u->target_K));
    *out = {u->result.residual, u->result.iterations, u->result.functional_value, u->result.constraint_violation,
            u->metric.area(),   dev,                  to_c(u->measured)};
  });
}

size_t zh_uniformization_size(const zh_uniformization* u) { return u ? static_cast<size_t>(u->factor.size()) : 0; }

zh_status zh_uniformization_factor(const zh_uniformization* u, double* buffer, size_t n) {
  return guarded([&] {
    need(u, "u");
    need(buffer, "buffer");
    require(n == static_cast<size_t>(u->factor.size()), ErrorCode::InvalidArgument, "buffer size mismatch");
    std::memcpy(buffer, u->factor.data(), n * sizeof(double));
  });
}

zh_status zh_uniformization_mesh(const zh_uniformization* u, zh_mesh** out) {
  return guarded([&] {
    need(u, "u");
    need(out, "out");
    *out = new zh_mesh{u->metric.realized()};
  });
}

void zh_uniformization_free(zh_uniformization* u) { delete u; }

zh_status zh_round_trip(const zh_mesh* flat_mesh, double area, zh_round_trip_info* out) {
  return guarded([&] {
    need(flat_mesh, "flat_mesh");
    need(out, "out");
    const auto r = uniform::round_trip(flat_mesh->surface, area);
    const double K = 2.0 * constants::pi * r.tau.euler_characteristic() / r.tau.area();
    *out = {r.discrepancy, r.residual_F1, r.residual_F2, to_c(uniform::measure_uniformity(r.tau.realized(), K)),
            to_c(uniform::measure_uniformity(r.sigma.realized(), 0.0))};
  });
}

zh_status zh_continuity_probe(const zh_mesh* flat_mesh, const double* etas, size_t n, uint64_t seed,
                              double* changes) {
  return guarded([&] {
    need(flat_mesh, "flat_mesh");
    need(etas, "etas");
    need(changes, "changes");
    const auto rows = uniform::continuity_probe(flat_mesh->surface, std::vector<double>(etas, etas + n), seed);
    for (size_t i = 0; i < n; ++i) changes[i] = rows[i].factor_change;
  });
}

zh_status zh_polyakov_shift(const zh_mesh* mesh, const double* psi, size_t n, double h0, double* out) {
  return guarded([&] {
    need(mesh, "mesh");
    need(psi, "psi");
    need(out, "out");
    require(n == static_cast<size_t>(mesh->surface.vertex_count()), ErrorCode::InvalidArgument,
            "psi needs one value per vertex");
    const uniform::ConformalMetric g(mesh->surface);
    *out = uniform::polyakov_alvarez_shift(g, Eigen::Map<const Eigen::VectorXd>(psi, n), h0);
  });
}

namespace {

zh_inequality to_c(const uniform::HeightInequality& h) {
  return {h.lhs,      h.rhs,          h.slack,          h.holds ? 1 : 0, h.energy,     h.mean_term,
          h.log_term, h.jensen_holds ? 1 : 0, h.flux, h.flux_gradient,  h.flux_target};
}

}  // namespace

zh_status zh_height_inequality(const zh_mesh* flat_mesh, zh_inequality* out) {
  return guarded([&] {
    need(flat_mesh, "flat_mesh");
    need(out, "out");
    const auto tau = uniform::map_Psi(uniform::ConformalMetric(flat_mesh->surface)).metric;
    *out = to_c(uniform::height_inequality_check(tau, uniform::inequality_factor(tau)));
  });
}

zh_status zh_height_inequality_for(const zh_uniformization* type_one, const double* psi, size_t n,
                                   zh_inequality* out) {
  return guarded([&] {
    need(type_one, "type_one");
    need(psi, "psi");
    need(out, "out");
    require(n == static_cast<size_t>(type_one->metric.vertex_count()), ErrorCode::InvalidArgument,
            "psi needs one value per vertex");
    *out = to_c(uniform::height_inequality_check(type_one->metric, Eigen::Map<const Eigen::VectorXd>(psi, n)));
  });
}

zh_status zh_inequality_factor(const zh_uniformization* type_one, double* buffer, size_t n) {
  return guarded([&] {
    need(type_one, "type_one");
    need(buffer, "buffer");
    require(n == static_cast<size_t>(type_one->metric.vertex_count()), ErrorCode::InvalidArgument,
            "buffer size mismatch");
    const Eigen::VectorXd psi = uniform::inequality_factor(type_one->metric);
    std::memcpy(buffer, psi.data(), n * sizeof(double));
  });
}

zh_status zh_verify(const char* suite, uint64_t seed, char** json_out) {
  return guarded([&] {
    need(suite, "suite");
    need(json_out, "json_out");
    const auto reports = verify::run_suites(suite, seed);
    nlohmann::json j;
    bool all = true;
    j["suites"] = nlohmann::json::array();
    for (const auto& r : reports) {
      nlohmann::json s;
      s["suite"] = r.suite;
      s["passed"] = r.passed();
      s["checks"] = nlohmann::json::array();
      for (const auto& c : r.checks)
        s["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}});
      all = all && r.passed();
      j["suites"].push_back(s);
    }
    j["passed"] = all;
    j["seed"] = seed;
    const std::string text = j.dump(2);
    *json_out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!*json_out) throw std::bad_alloc();
    std::memcpy(*json_out, text.c_str(), text.size() + 1);
  });
}

zh_status zh_verify_suites(char** out) {
  return guarded([&] {
    need(out, "out");
    std::string text;
    for (const auto& s : verify::suite_names()) text += s + "\n";
    *out = static_cast<char*>(std::malloc(text.size() + 1));
    if (!*out) throw std::bad_alloc();
    std::memcpy(*out, text.c_str(), text.size() + 1);
  });
}

}  // extern "C"
