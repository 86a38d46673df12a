#include "geometry/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "common/errors.hpp"

namespace zh::geometry {

namespace {

std::uint64_t edge_key(int i, int j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
}

// Kahan's stable Heron formula.
double heron(double a, double b, double c) {
  std::array<double, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double x = s[0], y = s[1], z = s[2];
  const double p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  return 0.25 * std::sqrt(std::max(p, 0.0));
}

// Angle opposite side a.
double opposite_angle(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double num = (s - b) * (s - c);
  const double den = s * (s - a);
  return 2.0 * std::atan(std::sqrt(std::max(num, 0.0) / den));
}

}  // namespace

MetricSurface::MetricSurface(std::vector<Eigen::Vector3d> vertices, std::vector<std::array<int, 3>> triangles,
                             std::vector<std::vector<int>> boundary_loops,
                             std::optional<std::vector<EdgeLength>> edge_lengths)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)), loops_(std::move(boundary_loops)) {
  build_topology();
  lengths_.assign(edges_.size(), 0.0);
  if (edge_lengths) {
    induced_ = false;
    std::vector<char> seen(edges_.size(), 0);
    for (const auto& e : *edge_lengths) {
      const int k = edge_index(e.i, e.j);
      require(std::isfinite(e.length) && e.length > 0.0, ErrorCode::InvalidArgument,
              "mesh: edge lengths must be positive");
      require(!seen[k], ErrorCode::InvalidArgument, "mesh: duplicate edge length");
      seen[k] = 1;
      lengths_[k] = e.length;
    }
    require(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }), ErrorCode::InvalidArgument,
            "mesh: edge length section does not cover every edge");
  } else {
    for (std::size_t k = 0; k < edges_.size(); ++k)
      lengths_[k] = (vertices_[edges_[k][0]] - vertices_[edges_[k][1]]).norm();
  }
  build_geometry();
}

int MetricSurface::edge_index(int i, int j) const {
  auto it = edge_lookup_.find(edge_key(i, j));
  require(it != edge_lookup_.end(), ErrorCode::InvalidArgument,
          "mesh: no edge between vertices " + std::to_string(i) + " and " + std::to_string(j));
  return it->second;
}

void MetricSurface::build_topology() {
  const int nv = vertex_count();
  require(nv > 0 && !triangles_.empty(), ErrorCode::InvalidArgument, "mesh: empty mesh");
  // directed half-edge -> triangle
  std::map<std::pair<int, int>, int> half;
  tri_edges_.resize(triangles_.size());
  std::vector<int> incidence;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& f = triangles_[t];
    for (int c = 0; c < 3; ++c) {
      require(f[c] >= 0 && f[c] < nv, ErrorCode::InvalidArgument, "mesh: triangle index out of range");
    }
    require(f[0] != f[1] && f[1] != f[2] && f[0] != f[2], ErrorCode::InvalidArgument, "mesh: degenerate triangle");
    for (int c = 0; c < 3; ++c) {
      const int i = f[(c + 1) % 3], j = f[(c + 2) % 3];
      require(half.emplace(std::make_pair(i, j), static_cast<int>(t)).second, ErrorCode::InvalidArgument,
              "mesh: inconsistent orientation or non-manifold edge");
      const auto key = edge_key(i, j);
      auto it = edge_lookup_.find(key);
      int k;
      if (it == edge_lookup_.end()) {
        k = static_cast<int>(edges_.size());
        edge_lookup_.emplace(key, k);
        edges_.push_back({std::min(i, j), std::max(i, j)});
        incidence.push_back(0);
      } else {
        k = it->second;
      }
      ++incidence[k];
      tri_edges_[t][c] = k;
    }
  }
  // Boundary half-edges oriented with the surface on the left.
  std::map<int, int> next;
  for (const auto& [he, t] : half) {
    if (half.count({he.second, he.first}) == 0) {
      require(next.emplace(he.first, he.second).second, ErrorCode::InvalidArgument,
              "mesh: boundary vertex is not manifold");
    }
  }
  boundary_flag_.assign(nv, 0);
  for (const auto& [i, j] : next) boundary_flag_[i] = 1;

  if (loops_.empty()) {
    std::set<int> left;
    for (const auto& [i, j] : next) left.insert(i);
    while (!left.empty()) {
      std::vector<int> loop;
      int v = *left.begin();
      while (left.count(v)) {
        left.erase(v);
        loop.push_back(v);
        v = next.at(v);
      }
      loops_.push_back(loop);
    }
  } else {
    std::size_t covered = 0;
    std::vector<char> used(nv, 0);
    for (auto& loop : loops_) {
      require(loop.size() >= 3, ErrorCode::InvalidArgument, "mesh: boundary loop too short");
      const int n = static_cast<int>(loop.size());
      for (int v : loop) {
        require(v >= 0 && v < nv && boundary_flag_[v] && !used[v], ErrorCode::InvalidArgument,
                "mesh: boundary loop does not match the boundary edges");
        used[v] = 1;
      }
      bool forward = true, backward = true;
      for (int a = 0; a < n; ++a) {
        const int i = loop[a], j = loop[(a + 1) % n];
        forward = forward && next.at(i) == j;
        backward = backward && next.at(j) == i;
      }
      require(forward || backward, ErrorCode::InvalidArgument, "mesh: boundary loop does not follow boundary edges");
      if (!forward) std::reverse(loop.begin(), loop.end());
      covered += loop.size();
    }
    require(covered == next.size(), ErrorCode::InvalidArgument, "mesh: boundary loops do not cover the boundary");
  }
  boundary_vertices_.clear();
  interior_vertices_.clear();
  for (const auto& loop : loops_)
    for (int v : loop) boundary_vertices_.push_back(v);
  for (int v = 0; v < nv; ++v)
    if (!boundary_flag_[v]) interior_vertices_.push_back(v);
  std::vector<char> touched(nv, 0);
  for (const auto& f : triangles_)
    for (int v : f) touched[v] = 1;
  require(std::all_of(touched.begin(), touched.end(), [](char c) { return c != 0; }), ErrorCode::InvalidArgument,
          "mesh: isolated vertex");
}

void MetricSurface::build_geometry() {
  const int nv = vertex_count();
  angles_.resize(triangles_.size());
  areas_.resize(triangles_.size());
  curvature_.assign(nv, 0.0);
  vertex_area_.assign(nv, 0.0);
  boundary_vertex_length_.assign(nv, 0.0);
  area_ = 0.0;
  std::vector<double> angle_sum(nv, 0.0);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const double a = lengths_[tri_edges_[t][0]];
    const double b = lengths_[tri_edges_[t][1]];
    const double c = lengths_[tri_edges_[t][2]];
    require(a < b + c && b < a + c && c < a + b, ErrorCode::InvalidArgument,
            "mesh: edge lengths violate the triangle inequality");
    angles_[t] = {opposite_angle(a, b, c), opposite_angle(b, c, a), opposite_angle(c, a, b)};
    areas_[t] = heron(a, b, c);
    area_ += areas_[t];
    for (int k = 0; k < 3; ++k) {
      angle_sum[triangles_[t][k]] += angles_[t][k];
      vertex_area_[triangles_[t][k]] += areas_[t] / 3.0;
    }
  }
  boundary_length_ = 0.0;
  for (const auto& loop : loops_) {
    const int n = static_cast<int>(loop.size());
    for (int a = 0; a < n; ++a) {
      const double len = lengths_[edge_index(loop[a], loop[(a + 1) % n])];
      boundary_length_ += len;
      boundary_vertex_length_[loop[a]] += 0.5 * len;
      boundary_vertex_length_[loop[(a + 1) % n]] += 0.5 * len;
    }
  }
  for (int v = 0; v < nv; ++v)
    curvature_[v] = (boundary_flag_[v] ? std::numbers::pi : 2.0 * std::numbers::pi) - angle_sum[v];
}

double MetricSurface::gauss_bonnet_defect() const {
  double s = 0.0;
  for (double k : curvature_) s += k;
  return s - 2.0 * std::numbers::pi * euler_characteristic();
}

double MetricSurface::mesh_size() const { return *std::max_element(lengths_.begin(), lengths_.end()); }

MetricSurface MetricSurface::with_edge_lengths(const std::vector<double>& lengths) const {
  require(lengths.size() == edges_.size(), ErrorCode::InvalidArgument, "mesh: wrong number of edge lengths");
  std::vector<EdgeLength> el;
  el.reserve(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) el.push_back({edges_[k][0], edges_[k][1], lengths[k]});
  return MetricSurface(vertices_, triangles_, loops_, el);
}

MetricSurface MetricSurface::conformally_rescaled(const Eigen::VectorXd& u) const {
  require(u.size() == vertex_count(), ErrorCode::InvalidArgument, "conformal factor has wrong size");
  std::vector<double> out(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const double a = u[edges_[k][0]], b = u[edges_[k][1]];
    const double d = b - a;
    // mean of e^u along the edge
    const double m = std::abs(d) < 1e-6 ? std::exp(0.5 * (a + b)) * (1.0 + d * d / 24.0) : (std::exp(b) - std::exp(a)) / d;
    out[k] = lengths_[k] * m;
  }
  return with_edge_lengths(out);
}

MetricSurface MetricSurface::with_vertices(std::vector<Eigen::Vector3d> vertices) const {
  require(vertices.size() == vertices_.size(), ErrorCode::InvalidArgument, "mesh: wrong vertex count");
  return MetricSurface(std::move(vertices), triangles_, loops_);
}

}  // namespace zh::geometry
