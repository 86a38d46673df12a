#include <fstream>
#include <sstream>

#include "common/errors.hpp"
#include "geometry/mesh.hpp"

namespace zh::geometry {

namespace {

// Splits into whitespace tokens, dropping '#' comments.
std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

class Reader {
 public:
  explicit Reader(std::vector<std::string> tokens) : t_(std::move(tokens)) {}
  bool done() const { return pos_ >= t_.size(); }
  const std::string& peek() const { return t_.at(pos_); }
  std::string word() {
    require(!done(), ErrorCode::Io, "mesh: unexpected end of input");
    return t_[pos_++];
  }
  long integer() {
    const std::string w = word();
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == w.size(), ErrorCode::Io, "mesh: expected integer, got '" + w + "'");
    return v;
  }
  double real() {
    const std::string w = word();
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == w.size(), ErrorCode::Io, "mesh: expected number, got '" + w + "'");
    return v;
  }

 private:
  std::vector<std::string> t_;
  std::size_t pos_ = 0;
};

}  // namespace

MetricSurface parse_mesh(const std::string& text) {
  Reader r(tokenize(text));
  const long nv = r.integer(), ne = r.integer(), nf = r.integer();
  require(nv > 0 && ne > 0 && nf > 0, ErrorCode::Io, "mesh: header counts must be positive");
  std::vector<Eigen::Vector3d> verts(nv);
  for (auto& v : verts) {
    const double x = r.real(), y = r.real(), z = r.real();
    v = {x, y, z};
  }
  std::vector<std::array<int, 3>> tris(nf);
  for (auto& t : tris) {
    for (int c = 0; c < 3; ++c) t[c] = static_cast<int>(r.integer());
  }
  std::vector<std::vector<int>> loops;
  std::optional<std::vector<EdgeLength>> lengths;
  while (!r.done()) {
    const std::string kw = r.word();
    if (kw == "loop") {
      const long n = r.integer();
      require(n >= 3, ErrorCode::Io, "mesh: loop needs at least 3 vertices");
      std::vector<int> loop(n);
      for (auto& v : loop) v = static_cast<int>(r.integer());
      loops.push_back(std::move(loop));
    } else if (kw == "edgelen") {
      std::vector<EdgeLength> el(ne);
      for (auto& e : el) {
        e.i = static_cast<int>(r.integer());
        e.j = static_cast<int>(r.integer());
        e.length = r.real();
      }
      lengths = std::move(el);
    } else {
      fail(ErrorCode::Io, "mesh: unknown section '" + kw + "'");
    }
  }
  MetricSurface mesh(std::move(verts), std::move(tris), std::move(loops), std::move(lengths));
  require(mesh.edge_count() == ne, ErrorCode::Io,
          "mesh: header edge count " + std::to_string(ne) + " does not match " + std::to_string(mesh.edge_count()));
  return mesh;
}

MetricSurface read_mesh(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open mesh file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh(ss.str());
}

std::string format_mesh(const MetricSurface& mesh, bool include_lengths) {
  std::ostringstream out;
  out.precision(17);
  out << mesh.vertex_count() << ' ' << mesh.edge_count() << ' ' << mesh.triangle_count() << '\n';
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  for (const auto& t : mesh.triangles()) out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  for (const auto& loop : mesh.boundary_loops()) {
    out << "loop " << loop.size();
    for (int v : loop) out << ' ' << v;
    out << '\n';
  }
  if (include_lengths) {
    out << "edgelen\n";
    for (int k = 0; k < mesh.edge_count(); ++k)
      out << mesh.edges()[k][0] << ' ' << mesh.edges()[k][1] << ' ' << mesh.edge_lengths()[k] << '\n';
  }
  return out.str();
}

void write_mesh(const MetricSurface& mesh, const std::string& path, bool include_lengths) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write mesh file '" + path + "'");
  out << format_mesh(mesh, include_lengths);
  require(static_cast<bool>(out), ErrorCode::Io, "error writing mesh file '" + path + "'");
}

}  // namespace zh::geometry
