#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace zh::geometry {

struct EdgeLength {
  int i;
  int j;
  double length;
};

// Triangulated surface with boundary. The metric is given by edge lengths,
// either supplied or induced from vertex coordinates.
class MetricSurface {
 public:
  MetricSurface(std::vector<Eigen::Vector3d> vertices, std::vector<std::array<int, 3>> triangles,
                std::vector<std::vector<int>> boundary_loops,
                std::optional<std::vector<EdgeLength>> edge_lengths = std::nullopt);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + triangle_count(); }

  const std::vector<Eigen::Vector3d>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<std::vector<int>>& boundary_loops() const { return loops_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }
  const std::vector<double>& edge_lengths() const { return lengths_; }
  // Edge index opposite corner c of triangle t.
  int triangle_edge(int t, int c) const { return tri_edges_[t][c]; }
  int edge_index(int i, int j) const;

  bool is_boundary_vertex(int v) const { return boundary_flag_[v]; }
  const std::vector<int>& boundary_vertices() const { return boundary_vertices_; }
  const std::vector<int>& interior_vertices() const { return interior_vertices_; }

  // Interior angle at corner c of triangle t.
  double corner_angle(int t, int c) const { return angles_[t][c]; }
  double triangle_area(int t) const { return areas_[t]; }
  double area() const { return area_; }
  double boundary_length() const { return boundary_length_; }
  // Angle defect: 2 pi - angle sum inside, pi - angle sum on the boundary.
  const std::vector<double>& curvature() const { return curvature_; }
  // Half the adjacent boundary edge lengths, zero at interior vertices.
  const std::vector<double>& boundary_vertex_length() const { return boundary_vertex_length_; }
  // Barycentric vertex areas.
  const std::vector<double>& vertex_area() const { return vertex_area_; }
  // Sum of curvature minus 2 pi chi.
  double gauss_bonnet_defect() const;
  // Largest edge length.
  double mesh_size() const;

  // Same connectivity with new edge lengths.
  MetricSurface with_edge_lengths(const std::vector<double>& lengths) const;
  // Edge lengths of e^{2u} g, integrating e^u along each edge with u linear.
  MetricSurface conformally_rescaled(const Eigen::VectorXd& u) const;
  // Vertex positions moved, lengths induced from the new positions.
  MetricSurface with_vertices(std::vector<Eigen::Vector3d> vertices) const;

  bool lengths_from_coordinates() const { return induced_; }

 private:
  void build_topology();
  void build_geometry();

  std::vector<Eigen::Vector3d> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::vector<int>> loops_;
  std::vector<std::array<int, 2>> edges_;
  std::unordered_map<std::uint64_t, int> edge_lookup_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<double> lengths_;
  bool induced_ = true;

  std::vector<char> boundary_flag_;
  std::vector<int> boundary_vertices_;
  std::vector<int> interior_vertices_;
  std::vector<std::array<double, 3>> angles_;
  std::vector<double> areas_;
  std::vector<double> curvature_;
  std::vector<double> vertex_area_;
  std::vector<double> boundary_vertex_length_;
  double area_ = 0.0;
  double boundary_length_ = 0.0;
};

MetricSurface read_mesh(const std::string& path);
MetricSurface parse_mesh(const std::string& text);
void write_mesh(const MetricSurface& mesh, const std::string& path, bool include_lengths = true);
std::string format_mesh(const MetricSurface& mesh, bool include_lengths = true);

}  // namespace zh::geometry
