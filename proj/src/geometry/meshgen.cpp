#include "geometry/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "common/errors.hpp"
#include "common/quadrature.hpp"
#include "common/rng.hpp"

namespace zh::geometry {

using std::numbers::pi;

MetricSurface cylinder_mesh(double l, double A, double B, int nu, int nv, const std::optional<Profile>& psi) {
  require(l > 0.0 && A < B, ErrorCode::Domain, "cylinder_mesh: bad geometry");
  require(nu >= 3 && nv >= 1, ErrorCode::InvalidArgument, "cylinder_mesh: need nu >= 3 and nv >= 1");
  const double R = l / (2.0 * pi);
  std::vector<Eigen::Vector3d> verts;
  auto idx = [nu](int i, int j) { return j * nu + (i % nu); };
  for (int j = 0; j <= nv; ++j) {
    const double v = A + (B - A) * j / nv;
    for (int i = 0; i < nu; ++i) {
      const double a = 2.0 * pi * i / nu;
      verts.emplace_back(R * std::cos(a), R * std::sin(a), v);
    }
  }
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  const quad::Rule rule = quad::gauss_legendre(8, 0.0, 1.0);
  auto seg = [&](double du, double v0, double v1) {
    const double len = std::hypot(du, v1 - v0);
    if (!psi) return len;
    double s = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      s += rule.weights[q] * std::exp((*psi)(v0 + (v1 - v0) * rule.nodes[q]));
    return len * s;
  };
  std::vector<EdgeLength> lengths;
  const double du = l / nu;
  for (int j = 0; j <= nv; ++j) {
    const double v0 = A + (B - A) * j / nv;
    const double v1 = A + (B - A) * (j + 1) / nv;
    for (int i = 0; i < nu; ++i) {
      lengths.push_back({idx(i, j), idx(i + 1, j), seg(du, v0, v0)});
      if (j < nv) {
        lengths.push_back({idx(i, j), idx(i, j + 1), seg(0.0, v0, v1)});
        lengths.push_back({idx(i, j), idx(i + 1, j + 1), seg(du, v0, v1)});
      }
    }
  }
  std::vector<int> bottom, top;
  for (int i = 0; i < nu; ++i) bottom.push_back(idx(i, 0));
  for (int i = nu - 1; i >= 0; --i) top.push_back(idx(i, nv));
  return MetricSurface(std::move(verts), std::move(tris), {bottom, top}, lengths);
}

MetricSurface annulus_mesh(double r1, double r2, int n_theta, int n_r) {
  require(0.0 < r1 && r1 < r2, ErrorCode::Domain, "annulus_mesh: need 0 < r1 < r2");
  require(n_theta >= 3 && n_r >= 1, ErrorCode::InvalidArgument, "annulus_mesh: need n_theta >= 3, n_r >= 1");
  std::vector<Eigen::Vector3d> verts;
  auto idx = [n_theta](int i, int j) { return j * n_theta + (i % n_theta); };
  for (int j = 0; j <= n_r; ++j) {
    const double r = r1 + (r2 - r1) * j / n_r;
    for (int i = 0; i < n_theta; ++i) {
      const double a = 2.0 * pi * i / n_theta;
      verts.emplace_back(r * std::cos(a), r * std::sin(a), 0.0);
    }
  }
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < n_r; ++j)
    for (int i = 0; i < n_theta; ++i) {
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  return MetricSurface(std::move(verts), std::move(tris), {});
}

namespace {

struct Tri {
  std::array<int, 3> v;
  double cx, cy, r2;
  bool alive;
};

Tri make_tri(const std::vector<Eigen::Vector2d>& p, int a, int b, int c) {
  const Eigen::Vector2d &A = p[a], &B = p[b], &C = p[c];
  const double d = 2.0 * (A.x() * (B.y() - C.y()) + B.x() * (C.y() - A.y()) + C.x() * (A.y() - B.y()));
  const double a2 = A.squaredNorm(), b2 = B.squaredNorm(), c2 = C.squaredNorm();
  const double ux = (a2 * (B.y() - C.y()) + b2 * (C.y() - A.y()) + c2 * (A.y() - B.y())) / d;
  const double uy = (a2 * (C.x() - B.x()) + b2 * (A.x() - C.x()) + c2 * (B.x() - A.x())) / d;
  Tri t{{a, b, c}, ux, uy, (A.x() - ux) * (A.x() - ux) + (A.y() - uy) * (A.y() - uy), true};
  // counter-clockwise
  if (d < 0) std::swap(t.v[1], t.v[2]);
  return t;
}

// Bowyer-Watson triangulation of the convex hull of p.
std::vector<std::array<int, 3>> delaunay(std::vector<Eigen::Vector2d> p) {
  const int n = static_cast<int>(p.size());
  double lo = 1e300, hi = -1e300;
  for (const auto& q : p) {
    lo = std::min({lo, q.x(), q.y()});
    hi = std::max({hi, q.x(), q.y()});
  }
  const double span = hi - lo, mid = 0.5 * (hi + lo);
  p.emplace_back(mid - 20 * span, mid - 20 * span);
  p.emplace_back(mid + 20 * span, mid - 20 * span);
  p.emplace_back(mid, mid + 20 * span);
  std::vector<Tri> tris{make_tri(p, n, n + 1, n + 2)};
  std::vector<int> bad;
  for (int i = 0; i < n; ++i) {
    const double x = p[i].x(), y = p[i].y();
    bad.clear();
    for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
      const Tri& T = tris[t];
      if (!T.alive) continue;
      const double dx = x - T.cx, dy = y - T.cy;
      if (dx * dx + dy * dy < T.r2 * (1.0 + 1e-12)) bad.push_back(t);
    }
    std::map<std::pair<int, int>, int> edges;
    for (int t : bad) {
      tris[t].alive = false;
      for (int c = 0; c < 3; ++c) {
        const int a = tris[t].v[(c + 1) % 3], b = tris[t].v[(c + 2) % 3];
        ++edges[{std::min(a, b), std::max(a, b)}];
      }
    }
    for (const auto& [e, count] : edges)
      if (count == 1) tris.push_back(make_tri(p, e.first, e.second, i));
    if (tris.size() > 8 * static_cast<std::size_t>(n) + 64) {
      std::erase_if(tris, [](const Tri& t) { return !t.alive; });
    }
  }
  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris)
    if (t.alive && t.v[0] < n && t.v[1] < n && t.v[2] < n) out.push_back(t.v);
  return out;
}

bool inside(const PantsShape& s, double x, double y, double margin) {
  if (std::hypot(x - s.outer.cx, y - s.outer.cy) > s.outer.r - margin) return false;
  for (const auto& h : s.holes)
    if (std::hypot(x - h.cx, y - h.cy) < h.r + margin) return false;
  return true;
}

}  // namespace

MetricSurface pants_mesh(double spacing, const PantsShape& shape, std::uint64_t seed) {
  require(spacing > 0.0 && spacing < shape.outer.r, ErrorCode::InvalidArgument, "pants_mesh: bad spacing");
  Rng rng(seed);
  std::vector<Eigen::Vector2d> pts;
  std::vector<std::vector<int>> circles;
  auto add_circle = [&](const Disk& d) {
    const int n = std::max(8, static_cast<int>(std::ceil(2.0 * pi * d.r / spacing)));
    std::vector<int> ids;
    const double phase = rng.uniform(0.0, 2.0 * pi / n);
    for (int i = 0; i < n; ++i) {
      const double a = phase + 2.0 * pi * i / n;
      ids.push_back(static_cast<int>(pts.size()));
      pts.emplace_back(d.cx + d.r * std::cos(a), d.cy + d.r * std::sin(a));
    }
    circles.push_back(ids);
  };
  add_circle(shape.outer);
  for (const auto& h : shape.holes) add_circle(h);
  const double dy = spacing * std::sqrt(3.0) / 2.0;
  const double R = shape.outer.r;
  const int rows = static_cast<int>(std::ceil(R / dy)) + 1;
  const int cols = static_cast<int>(std::ceil(R / spacing)) + 1;
  for (int j = -rows; j <= rows; ++j)
    for (int i = -cols; i <= cols; ++i) {
      const double x = shape.outer.cx + (i + 0.5 * (j & 1)) * spacing + 1e-3 * spacing * rng.uniform(-1, 1);
      const double y = shape.outer.cy + j * dy + 1e-3 * spacing * rng.uniform(-1, 1);
      if (inside(shape, x, y, 0.55 * spacing)) pts.emplace_back(x, y);
    }
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : delaunay(pts)) {
    const double cx = (pts[t[0]].x() + pts[t[1]].x() + pts[t[2]].x()) / 3.0;
    const double cy = (pts[t[0]].y() + pts[t[1]].y() + pts[t[2]].y()) / 3.0;
    if (inside(shape, cx, cy, 0.0)) tris.push_back(t);
  }
  std::vector<Eigen::Vector3d> verts;
  for (const auto& q : pts) verts.emplace_back(q.x(), q.y(), 0.0);
  MetricSurface mesh(std::move(verts), std::move(tris), {});
  require(static_cast<int>(mesh.boundary_loops().size()) == 1 + static_cast<int>(shape.holes.size()),
          ErrorCode::Topology, "pants_mesh: boundary sampling too coarse for the spacing");
  return mesh;
}

MetricSurface perturb_interior(const MetricSurface& mesh, double eta, std::uint64_t seed) {
  Rng rng(seed);
  const double h = mesh.mesh_size();
  std::vector<Eigen::Vector3d> verts = mesh.vertices();
  for (int v : mesh.interior_vertices()) {
    verts[v].x() += eta * h * rng.uniform(-1, 1);
    verts[v].y() += eta * h * rng.uniform(-1, 1);
  }
  return mesh.with_vertices(std::move(verts));
}

}  // namespace zh::geometry
