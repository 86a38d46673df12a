#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geometry/geometry.hpp"
#include "spectral_zeta/heat_trace.hpp"
#include "spectral_zeta/zeta.hpp"
#include "sturm_liouville/mode_trace.hpp"

namespace zh::collar {

using zeta::Height;

enum class Route { Both, Direct, Conformal };

struct CollarOptions {
  double t_min = 0.0;    // 0 picks l^2 / 1536, below the reach of periodic images
  double budget = 1e-9;  // absolute trace error for t >= t_min
  double T = 1.0;
  double tolerance = 1e-5;    // AccuracyError above this height error (direct route)
  double grid_scale = 1.0;    // scales every mode grid; used for independent re-solves
  sl::Discretization method = sl::Discretization::Spectral;
};

double default_t_min(double l);

// Fourier modes m = 0..M of a collar with a bound for m > M.
class CollarModes {
 public:
  static CollarModes plan(const geometry::CollarCylinder& c, const CollarOptions& opts, bool include_zero_mode = true);

  const geometry::CollarCylinder& collar() const { return collar_; }
  int max_mode() const { return max_mode_; }
  double t_min() const { return t_min_; }
  bool has_zero_mode() const { return has_zero_; }
  // Bound on sum_{m > M} theta_m(t).
  double excluded_bound(double t) const;
  // theta_0 + 2 sum_{m>=1} theta_m (zero mode required).
  zeta::ModeSum full_sum() const;
  // sum_{m>=1} theta_m, the trace of the half collar.
  zeta::ModeSum half_sum() const;
  zeta::ModeSum zero_mode_sum() const;
  std::shared_ptr<const sl::ModeTrace> mode(int m) const;

 private:
  double excluded_bound_for(int M, double t) const;
  geometry::CollarCylinder collar_;
  int max_mode_ = 0;
  double t_min_ = 0.0;
  bool has_zero_ = true;
  double weight_max_ = 1.0;
  std::vector<std::shared_ptr<const sl::ModeTrace>> modes_;  // index m (zero mode may be null)
  // crude but rigorous bound on theta_0 used when the zero mode is absent
  std::shared_ptr<const sl::ModeProblem> zero_problem_;
};

// theta_total of the collar as a regularizable heat trace.
zeta::HeatTrace collar_heat_trace(const CollarModes& modes);
// Half-collar trace; corners make it a CornerHeatTrace.
zeta::CornerHeatTrace half_collar_heat_trace(const CollarModes& modes);
// Heat coefficients of the half collar implied by the heights identity.
geometry::TraceCoefficients half_collar_coefficients(const geometry::CollarCylinder& c);

struct CollarHeightResult {
  double l = 0.0, A = 0.0, B = 0.0;
  std::optional<Height> h_direct;
  std::optional<Height> h_conformal;
  double h_half = 0.0;     // (h - Z'(0)) / 2 from the preferred route
  double Z_prime_0 = 0.0;  // closed form for the zero mode
  double route_difference = 0.0;
  const Height& best() const { return h_direct ? *h_direct : *h_conformal; }
};

// Flat cylinder height plus the Polyakov-Alvarez shift for psi = -log sin v.
Height collar_height_conformal(const geometry::CollarCylinder& c, const zeta::ZetaOptions& zo = {});
Height collar_height_direct(const geometry::CollarCylinder& c, const CollarOptions& opts = {});
// Raises a consistency error if both routes run and disagree beyond their
// combined error.
CollarHeightResult collar_height(const geometry::CollarCylinder& c, Route route = Route::Both,
                                 const CollarOptions& opts = {});

// Polyakov-Alvarez shift from du^2 + dv^2 to e^{2 psi}(du^2 + dv^2) on a
// flat cylinder; straight boundaries and K_0 = 0.
double flat_cylinder_shift(const geometry::FlatCylinder& c, const Profile& psi);
double collar_shift(const geometry::CollarCylinder& c);

struct HalfCollarResult {
  Height identity;  // (h(C) - Z'(0)) / 2
  std::optional<Height> direct;  // Mellin regularization of the half-collar trace
  double h_collar = 0.0;
  double Z_prime_0 = 0.0;
};

HalfCollarResult half_collar_height(const geometry::HalfCollar& c, Route route = Route::Conformal,
                                    const CollarOptions& opts = {});

enum class Leading { Stated, Corrected };

struct SweepRow {
  double l = 0.0;
  double h = 0.0;
  double error = 0.0;
  double leading = 0.0;
  double residual = 0.0;
};

struct SweepResult {
  geometry::SubcollarKind kind = geometry::SubcollarKind::I;
  Leading leading = Leading::Stated;
  bool drop_log = false;
  std::vector<SweepRow> rows;
  double spread = 0.0;  // max - min of the residual
};

double leading_term(geometry::SubcollarKind kind, double l, Leading leading, bool drop_log = false);
SweepResult asymptotic_sweep(geometry::SubcollarKind kind, const std::vector<double>& l_grid,
                             Leading leading = Leading::Stated, bool drop_log = false);
std::string sweep_to_csv(const SweepResult& s);

struct InsertionResult {
  double gap = 0.0;
  double error = 0.0;
  std::vector<double> pieces;  // h(M), then the pieces
};

// h(C[A,B]) - h(C[A,A']) - h(C[A',B']) - h(C[B',B]); the middle piece is
// omitted when A' = B'.
InsertionResult insertion_gap(double l, double A, double B, double A_in, double B_in);

}  // namespace zh::collar
