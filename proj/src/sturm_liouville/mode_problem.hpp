#pragma once

#include "common/profile.hpp"
#include "geometry/geometry.hpp"

namespace zh::sl {

enum class ProblemKind { QPhi, DeltaLM, ConformalFlat };

// Which measure eigenfunctions are normalized in: the operator measure
// w dx (dv/sin^2 v for Delta_l(m)) or the 1-D metric measure sqrt(w) dx
// (e^{phi} dx, dv/sin v for Delta_l(0)).
enum class Measure { Operator, Metric };

// Dirichlet problem -(1/w)(y'' - mu^2 y) = lambda y on [a, b].
class ModeProblem {
 public:
  // Q_phi = -e^{-2 phi} d^2/dx^2.
  static ModeProblem q_phi(const geometry::WeightedInterval& iv);
  // Delta_l(m) = -sin^2 v (d^2/dv^2 - (2 pi m / l)^2).
  static ModeProblem delta_l_m(double l, double A, double B, int m);
  // -e^{-2 psi(v)} (d^2/dv^2 - (2 pi m / l)^2) on a flat cylinder.
  static ModeProblem conformal_flat(const geometry::FlatCylinder& c, int m);

  ProblemKind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  int mode() const { return m_; }
  double circumference() const { return l_; }
  double mu2() const;
  double weight(double x) const;
  double density(double x, Measure m) const;
  double log_weight_half(double x) const;  // phi with w = e^{2 phi}
  double min_weight() const;
  double max_weight() const;
  // Same operator on a subinterval.
  ModeProblem restricted(double a, double b) const;

 private:
  ModeProblem(ProblemKind kind, double a, double b, int m, double l, Profile phi);
  ProblemKind kind_;
  double a_;
  double b_;
  int m_;
  double l_;
  Profile phi_;
};

}  // namespace zh::sl
