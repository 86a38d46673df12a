#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "common/profile.hpp"
#include "geometry/mesh.hpp"

namespace zh::geometry {

// Periodic cylinder [0,l) x [A,B] with metric e^{2 psi(v)}(du^2 + dv^2),
// embedded as a round cylinder of circumference l. Edge lengths are the
// metric lengths of the straight (u,v) segments.
MetricSurface cylinder_mesh(double l, double A, double B, int nu, int nv,
                            const std::optional<Profile>& psi = std::nullopt);

// Planar annulus r1 <= |x| <= r2, invariant under rotation by 2 pi / n_theta.
MetricSurface annulus_mesh(double r1, double r2, int n_theta, int n_r);

struct Disk {
  double cx;
  double cy;
  double r;
};

struct PantsShape {
  Disk outer{0.0, 0.0, 1.0};
  std::vector<Disk> holes{{-0.45, 0.0, 0.2}, {0.45, 0.0, 0.2}};
};

// Planar disk with circular holes, Delaunay-triangulated from boundary
// samples and a jittered triangular lattice of the given spacing.
MetricSurface pants_mesh(double spacing, const PantsShape& shape = {}, std::uint64_t seed = 7);

// Moves interior vertices of a planar mesh by at most eta * spacing.
MetricSurface perturb_interior(const MetricSurface& mesh, double eta, std::uint64_t seed);

}  // namespace zh::geometry
