#pragma once

#include "geometry/geometry.hpp"
#include "spectral_zeta/heat_trace.hpp"
#include "spectral_zeta/zeta.hpp"
#include "sturm_liouville/solver.hpp"

namespace zh::zeta {

// sum over n in Z of exp(-t (2 pi n / c)^2): the trace on a circle of length c.
double circle_theta(double t, double c);
// sum_{k>=1} exp(-t (pi k / L)^2): Dirichlet interval of length L.
double interval_theta(double t, double L);
// Double spectrum (2 pi m / l)^2 + (pi k / b)^2, m in Z, k >= 1.
double flat_cylinder_theta(double t, double l, double b);

// Largest t for which periodic images stay below exp(-32) relative.
double image_free_time(double period);

HeatTrace interval_heat_trace(double L, double floor = 1e-4);
HeatTrace flat_cylinder_heat_trace(const geometry::FlatCylinder& c, double floor = 0.0);

// Closed forms of zeta'(0).
double interval_zeta_prime(double L);  // -log(2L)
double flat_cylinder_zeta_prime(double l, double b);

// Z_phi'(0) = -(phi(A) + phi(B))/2 + Z_0'(0).
double one_d_polyakov(const geometry::WeightedInterval& iv);

struct SpectralOptions {
  double t_min = 1e-4;
  double budget = 1e-10;
  double T = 1.0;
  sl::Discretization method = sl::Discretization::Spectral;
  double tolerance = 1e-6;
};

// Z_phi'(0) from the computed Q_phi spectrum.
Height one_d_zeta_prime_spectral(const geometry::WeightedInterval& iv, const SpectralOptions& opts = {});

// Dirichlet interval trace of the m = 0 collar operator Delta_l(0) on [A, B]
// (the same operator as Q_phi with phi = -log sin v).
Height collar_zero_mode_zeta_prime(double A, double B, const SpectralOptions& opts = {});

}  // namespace zh::zeta
