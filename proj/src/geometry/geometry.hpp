#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "common/profile.hpp"

namespace zh::geometry {

// [a, b] with metric e^{phi} dx.
struct WeightedInterval {
  double a = 0.0;
  double b = 1.0;
  Profile phi = Profile::constant(0.0);

  WeightedInterval() = default;
  WeightedInterval(double a_, double b_, Profile phi_ = Profile::constant(0.0));
  double length() const { return b - a; }
  // Length in the metric e^{phi} dx.
  double metric_length() const;
};

// [0, l] x [A, B], u periodic, metric (du^2 + dv^2) / sin^2 v.
struct CollarCylinder {
  double l = 1.0;
  double A = 1.0;
  double B = 2.0;

  CollarCylinder() = default;
  CollarCylinder(double l_, double A_, double B_);
  double area() const;
  double boundary_length() const;
  // Integral of the Gauss curvature (K = -1).
  double total_gauss_curvature() const { return -area(); }
  // Integral of the geodesic curvature over both boundary circles.
  double total_geodesic_curvature() const;
  // Geodesic curvature of the circles v = A and v = B (outward normal).
  std::pair<double, double> boundary_curvatures() const;
  // Length of the circle at height v.
  double circumference(double v) const;
  CollarCylinder reflected() const;
};

// The u in [0, l/2] half of a collar.
struct HalfCollar {
  CollarCylinder base;

  HalfCollar() = default;
  explicit HalfCollar(CollarCylinder c);
  static constexpr int corner_count = 4;
};

// [0, l] x [A, B], u periodic, metric e^{2 psi(v)} (du^2 + dv^2).
struct FlatCylinder {
  double l = 1.0;
  double A = 0.0;
  double B = 1.0;
  std::optional<Profile> psi;

  FlatCylinder() = default;
  FlatCylinder(double l_, double A_, double B_, std::optional<Profile> psi_ = std::nullopt);
  double height() const { return B - A; }
  double factor(double v) const { return psi ? (*psi)(v) : 0.0; }
  double area() const;
  double boundary_length() const;
  FlatCylinder scaled(double lambda) const;
};

struct FlatRectangle {
  double a = 1.0;
  double b = 1.0;
};

enum class SubcollarKind { I, II, III };

struct Subcollar {
  SubcollarKind kind;
  CollarCylinder cylinder;  // for kind III, the cylinder whose half is meant
  bool half() const { return kind == SubcollarKind::III; }
};

double standard_collar_width(double l);
Subcollar standard_subcollar(double l, SubcollarKind kind = SubcollarKind::I);

struct TraceCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  bool c3_known = true;
};

// Small-t coefficients of the Dirichlet heat trace,
// theta(t) ~ c1/t + c2/sqrt(t) + c3.
TraceCoefficients trace_asymptotics(const CollarCylinder& c);
TraceCoefficients trace_asymptotics(const FlatCylinder& c);
TraceCoefficients trace_asymptotics(const FlatRectangle& r);
// One-dimensional: theta(t) ~ L_phi / sqrt(4 pi t) - 1/2.
TraceCoefficients trace_asymptotics(const WeightedInterval& iv);
// From area, boundary length and curvature integrals.
TraceCoefficients trace_asymptotics(double area, double boundary_length, double total_K, double total_k);

// Curvatures of e^{2 psi(v)}(du^2 + dv^2) on a flat cylinder.
std::vector<double> conformal_gauss_curvature(const Profile& psi, const FlatCylinder& base,
                                              const std::vector<double>& v);
// Geodesic curvature at v = A and v = B, outward normals.
std::pair<double, double> conformal_geodesic_curvature(const Profile& psi, const FlatCylinder& base);

}  // namespace zh::geometry
