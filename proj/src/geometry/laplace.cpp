#include "geometry/laplace.hpp"

#include <cmath>
#include <vector>

namespace zh::geometry {

DiscreteLaplace DiscreteLaplace::assemble(const MetricSurface& mesh) {
  const int nv = mesh.vertex_count();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mesh.triangle_count() * 12);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& f = mesh.triangles()[t];
    for (int c = 0; c < 3; ++c) {
      // Edge opposite corner c carries half the cotangent of the angle there.
      const double w = 0.5 / std::tan(mesh.corner_angle(t, c));
      const int i = f[(c + 1) % 3], j = f[(c + 2) % 3];
      trip.emplace_back(i, j, -w);
      trip.emplace_back(j, i, -w);
      trip.emplace_back(i, i, w);
      trip.emplace_back(j, j, w);
    }
  }
  DiscreteLaplace L;
  L.stiffness.resize(nv, nv);
  L.stiffness.setFromTriplets(trip.begin(), trip.end());
  L.stiffness.makeCompressed();
  L.mass = Eigen::Map<const Eigen::VectorXd>(mesh.vertex_area().data(), nv);
  L.boundary_mass = Eigen::Map<const Eigen::VectorXd>(mesh.boundary_vertex_length().data(), nv);
  return L;
}

}  // namespace zh::geometry
