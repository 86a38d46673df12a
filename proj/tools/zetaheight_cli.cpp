// zetaheight: experiment runner over the C API.
//
// Every command writes <out>/<command>.json and <out>/manifest.json; sweeps
// also write CSV. A flat "key = value" config file may set any flag of the
// chosen command (and "command" itself); config values win over flags.
// Exit status: 0 success, 2 configuration error, 3 accuracy or invariant failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "zetaheight/zetaheight.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kAccuracyError = 3;

// Raised for anything the user can fix in the configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a numerical check or invariant fails.
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

// start:stop:count, log-spaced; a single number; or a comma list.
std::vector<double> parse_range(const std::string& text, const std::string& key) {
  auto number = [&](const std::string& s) {
    try {
      size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': not a number: " + s);
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(trim(p));
    if (parts.size() != 3) throw ConfigError("key '" + key + "': range must be start:stop:count");
    const double a = number(parts[0]), b = number(parts[1]);
    const double c = number(parts[2]);
    if (a <= 0 || b <= 0) throw ConfigError("key '" + key + "': log-spaced range needs positive ends");
    if (c < 1 || c != std::floor(c)) throw ConfigError("key '" + key + "': count must be a positive integer");
    const int n = static_cast<int>(c);
    for (int i = 0; i < n; ++i)
      out.push_back(n == 1 ? a : std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1)));
    return out;
  }
  std::stringstream ss(text);
  std::string p;
  while (std::getline(ss, p, ',')) out.push_back(number(trim(p)));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  auto line = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i]);
    out << "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Turns a status into the matching exception.
void check(zh_status s, const std::string& what) {
  if (s == ZH_OK) return;
  const std::string msg = what + ": " + zh_status_name(s) + ": " + zh_last_error();
  if (s == ZH_ERR_INVALID_ARGUMENT || s == ZH_ERR_IO || s == ZH_ERR_DOMAIN || s == ZH_ERR_TOPOLOGY)
    throw ConfigError(msg);
  throw InvariantFailure(msg);
}

json height_json(const zh_height& h) {
  return {{"T", h.T}, {"error", h.error}, {"value", h.value}, {"zeta0", h.zeta0}};
}

json uniformity_json(const zh_uniformity& u) {
  return {{"max_K_deviation", u.max_K_deviation},
          {"max_K_deviation_inner", u.max_K_deviation_inner},
          {"max_k_deviation", u.max_k_deviation},
          {"max_k_spread", u.max_k_spread},
          {"mean_K", u.mean_K},
          {"mesh_size", u.mesh_size},
          {"rms_K_deviation", u.rms_K_deviation},
          {"target_K", u.target_K}};
}

struct Numeric {
  double t_min = 0.0;
  double budget = 0.0;
  double T = 1.0;
  double tolerance = 0.0;
  double grid_scale = 1.0;
  std::string method = "spectral";

  zh_options options() const {
    zh_options o;
    zh_options_default(&o);
    o.t_min = t_min;
    o.budget = budget;
    o.T = T;
    o.tolerance = tolerance;
    o.grid_scale = grid_scale;
    o.method = method == "fd2" ? ZH_METHOD_FD2 : ZH_METHOD_SPECTRAL;
    return o;
  }
};

void add_numeric(CLI::App* cmd, Numeric& n) {
  cmd->add_option("--t-min", n.t_min, "Smallest sampled time (0: default)");
  cmd->add_option("--budget", n.budget, "Absolute heat trace error budget (0: default)");
  cmd->add_option("--T", n.T, "Mellin split time")->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", n.tolerance, "Largest accepted height error (0: default)");
  cmd->add_option("--grid-scale", n.grid_scale, "Scale of the mode grids")->check(CLI::PositiveNumber);
  cmd->add_option("--method", n.method, "Eigenvalue discretization")->check(CLI::IsMember({"spectral", "fd2"}));
}

struct MeshSource {
  std::string file;
  double pants = 0.0;
  std::uint64_t mesh_seed = 7;

  zh_mesh* load() const {
    zh_mesh* m = nullptr;
    if (!file.empty()) {
      check(zh_mesh_read(file.c_str(), &m), "reading mesh");
    } else {
      check(zh_mesh_pants(pants > 0 ? pants : 0.041, mesh_seed, &m), "generating pants mesh");
    }
    return m;
  }
};

void add_mesh(CLI::App* cmd, MeshSource& m) {
  cmd->add_option("--mesh", m.file, "Mesh file");
  cmd->add_option("--pants", m.pants, "Generate a pair of pants with this spacing (default 0.041)");
  cmd->add_option("--mesh-seed", m.mesh_seed, "Seed of the generated mesh");
}

struct MeshHandle {
  zh_mesh* p = nullptr;
  ~MeshHandle() { zh_mesh_free(p); }
};

struct UniformHandle {
  zh_uniformization* p = nullptr;
  ~UniformHandle() { zh_uniformization_free(p); }
};

json mesh_json(const zh_mesh* m) {
  zh_mesh_info i;
  check(zh_mesh_get_info(m, &i), "mesh info");
  return {{"area", i.area},           {"boundary_length", i.boundary_length}, {"boundary_loops", i.boundary_loops},
          {"edges", i.edges},         {"euler_characteristic", i.euler_characteristic},
          {"gauss_bonnet_defect", i.gauss_bonnet_defect}, {"mesh_size", i.mesh_size},
          {"triangles", i.triangles}, {"vertices", i.vertices}};
}

// Rewrites argv so that config values replace flags of the same name.
std::vector<std::string> merge_config(CLI::App& app, std::vector<std::string> args,
                                      const std::map<std::string, std::string>& config) {
  std::string command;
  for (const auto& a : args)
    if (a.rfind("-", 0) != 0 && app.get_subcommand_no_throw(a)) {
      command = a;
      break;
    }
  if (auto it = config.find("command"); it != config.end()) {
    if (!command.empty() && command != it->second)
      std::cerr << "warning: config command '" << it->second << "' overrides '" << command << "'\n";
    if (!command.empty()) std::erase(args, command);
    command = it->second;
    if (!app.get_subcommand_no_throw(command)) throw ConfigError("key 'command': unknown command '" + command + "'");
    args.insert(args.begin(), command);
  }
  if (command.empty()) return args;
  CLI::App* sub = app.get_subcommand(command);
  for (const auto& [key, value] : config) {
    if (key == "command" || key == "config" || key == "out") continue;
    const std::string flag = "--" + key;
    CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) throw ConfigError("key '" + key + "': not an option of '" + command + "'");
    const bool is_flag = opt->get_expected_min() == 0;
    // drop the command-line occurrence, if any
    for (size_t i = 0; i < args.size(); ++i) {
      const bool eq_form = args[i].rfind(flag + "=", 0) == 0;
      if (args[i] == flag || eq_form) {
        std::cerr << "warning: config key '" << key << "' overrides the command-line flag\n";
        const size_t n = (is_flag || eq_form || i + 1 >= args.size()) ? 1 : 2;
        args.erase(args.begin() + i, args.begin() + i + n);
        --i;
      }
    }
    if (is_flag) {
      if (value == "true" || value == "1" || value == "yes") {
        args.push_back(flag);
      } else if (!(value == "false" || value == "0" || value == "no")) {
        throw ConfigError("key '" + key + "': expected true or false");
      }
    } else {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeta-regularized heights of bordered surfaces and their uniformization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  std::string config_path, out_dir = ".";
  app.add_option("--config", config_path, "Flat key = value config file (wins over flags)");
  app.add_option("--out", out_dir, "Output directory");

  // det
  auto* det = app.add_subcommand("det", "Zeta-regularized determinant of a 1-D or flat geometry");
  bool det_interval = false, det_cylinder = false;
  double det_length = 1.0, det_lower = 0.0, det_upper = 1.0, det_circ = 1.0, det_height = 1.0;
  std::string det_profile;
  std::vector<double> det_coeffs;
  Numeric det_num;
  det->add_flag("--interval", det_interval, "Flat interval [0, length]");
  det->add_flag("--cylinder", det_cylinder, "Flat cylinder of circumference l and given height");
  det->add_option("--length", det_length, "Interval length")->check(CLI::PositiveNumber);
  det->add_option("--profile", det_profile, "Weighted interval e^{phi} dx")
      ->check(CLI::IsMember({"constant", "neg_log_sin", "log_sin", "trig"}));
  det->add_option("--lower", det_lower, "Left end of a weighted interval");
  det->add_option("--upper", det_upper, "Right end of a weighted interval");
  det->add_option("--coeffs", det_coeffs, "Profile coefficients: c [amp phase]...")->delimiter(',');
  det->add_option("--l", det_circ, "Cylinder circumference")->check(CLI::PositiveNumber);
  det->add_option("--height", det_height, "Cylinder height")->check(CLI::PositiveNumber);
  add_numeric(det, det_num);

  // collar
  auto* col = app.add_subcommand("collar", "Height of a hyperbolic collar [0,l] x [lower, upper]");
  double col_l = 0.5, col_lower = 1.0, col_upper = M_PI - 1.0;
  std::string col_route = "both";
  Numeric col_num;
  col->add_option("--l", col_l, "Circumference parameter")->check(CLI::PositiveNumber);
  col->add_option("--lower", col_lower, "Lower end A of the v-interval");
  col->add_option("--upper", col_upper, "Upper end B of the v-interval");
  col->add_option("--route", col_route, "direct, conformal or both")
      ->check(CLI::IsMember({"both", "direct", "conformal"}));
  add_numeric(col, col_num);

  // sweep
  auto* swp = app.add_subcommand("sweep", "Collar asymptotics over a range of l");
  std::string swp_kind = "SC_I", swp_l = "0.02:0.1:5", swp_leading = "stated";
  bool swp_drop_log = false;
  swp->add_option("--kind", swp_kind, "Subcollar kind")->check(CLI::IsMember({"SC_I", "SC_II", "SC_III"}));
  swp->add_option("--l", swp_l, "start:stop:count (log-spaced) or a comma list");
  swp->add_option("--leading", swp_leading, "Leading terms subtracted")->check(CLI::IsMember({"stated", "corrected"}));
  swp->add_flag("--drop-log", swp_drop_log, "Omit log l from the leading term");

  // insertion
  auto* ins = app.add_subcommand("insertion", "Insertion gap h(M) - sum of pieces for nested collars");
  double ins_l = 0.3, ins_lower = 0.6, ins_upper = M_PI - 0.6, ins_in_lower = 1.2, ins_in_upper = M_PI - 1.2;
  ins->add_option("--l", ins_l, "Circumference parameter")->check(CLI::PositiveNumber);
  ins->add_option("--lower", ins_lower, "Lower end A of the outer collar");
  ins->add_option("--upper", ins_upper, "Upper end B of the outer collar");
  ins->add_option("--inner-lower", ins_in_lower, "Lower end A' of the middle piece");
  ins->add_option("--inner-upper", ins_in_upper, "Upper end B' of the middle piece (equal to A' drops it)");

  // uniformize
  auto* uni = app.add_subcommand("uniformize", "Type I / type II uniformization of a triangulated surface");
  MeshSource uni_mesh;
  std::string uni_map = "psi", uni_factor_csv;
  double uni_area = 0.0, uni_tol = 1e-10;
  int uni_max_iter = 100;
  std::uint64_t uni_init_seed = 0;
  add_mesh(uni, uni_mesh);
  uni->add_option("--map", uni_map, "psi (type I), f2 (type II), phi (psi then phi) or roundtrip")
      ->check(CLI::IsMember({"psi", "f2", "phi", "roundtrip"}));
  uni->add_option("--area", uni_area, "Target area (0: default)");
  uni->add_option("--tolerance", uni_tol, "Newton residual")->check(CLI::PositiveNumber);
  uni->add_option("--max-iterations", uni_max_iter, "Newton iteration limit")->check(CLI::PositiveNumber);
  uni->add_option("--init-seed", uni_init_seed, "Random initial guess (0: zero)");
  uni->add_option("--factor-csv", uni_factor_csv, "Write the conformal factor per vertex");

  // polyakov
  auto* pol = app.add_subcommand("polyakov", "Polyakov-Alvarez scaling law and height inequality on a mesh");
  MeshSource pol_mesh;
  std::string pol_check = "both";
  double pol_lambda = 2.0, pol_h0 = 0.0;
  add_mesh(pol, pol_mesh);
  pol->add_option("--check", pol_check, "scaling, inequality or both")
      ->check(CLI::IsMember({"scaling", "inequality", "both"}));
  pol->add_option("--lambda", pol_lambda, "Scale factor for the scaling law")->check(CLI::PositiveNumber);
  pol->add_option("--h0", pol_h0, "Height of the mesh metric");

  // verify
  auto* ver = app.add_subcommand("verify", "Randomized property suites");
  std::string ver_suite = "all";
  std::uint64_t ver_seed = 1;
  ver->add_option("--suite", ver_suite, "Suite name or all");
  ver->add_option("--seed", ver_seed, "Seed of the randomized inputs");

  json result, config_record;
  std::string command = "unknown";
  int status = 0;
  std::string error;
  bool parsed = false;

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
      if (args[i] == "--out" && i + 1 < args.size()) out_dir = args[i + 1];
      if (args[i].rfind("--out=", 0) == 0) out_dir = args[i].substr(6);
      if (command == "unknown" && args[i].rfind("-", 0) != 0 && app.get_subcommand_no_throw(args[i]))
        command = args[i];
    }
    std::map<std::string, std::string> config;
    if (!config_path.empty()) config = read_config(config_path);
    if (auto it = config.find("out"); it != config.end()) {
      for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out" || args[i].rfind("--out=", 0) == 0) {
          std::cerr << "warning: config key 'out' overrides the command-line flag\n";
          args.erase(args.begin() + i, args.begin() + i + (args[i] == "--out" && i + 1 < args.size() ? 2 : 1));
          break;
        }
      }
      out_dir = it->second;
      args.push_back("--out");
      args.push_back(out_dir);
    }
    args = merge_config(app, args, config);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      throw ConfigError(e.what());
    }
    parsed = true;
    CLI::App* sub = app.get_subcommands().front();
    command = sub->get_name();
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_name() == "--help") continue;
      const auto& res = opt->results();
      std::string name = opt->get_name();
      if (name.rfind("--", 0) == 0) name = name.substr(2);
      std::string v;
      if (!res.empty()) {
        for (size_t i = 0; i < res.size(); ++i) v += (i ? "," : "") + res[i];
      } else {
        v = opt->get_default_str();
      }
      config_record[name] = v;
    }
    fs::create_directories(out_dir);
    const fs::path out(out_dir);

    if (command == "det") {
      const zh_options o = det_num.options();
      zh_height h;
      double closed = NAN;
      if (det_cylinder) {
        check(zh_det_flat_cylinder(det_circ, det_height, &o, &h, &closed), "flat cylinder determinant");
        result["geometry"] = "flat_cylinder";
      } else if (!det_profile.empty()) {
        const zh_profile_kind k = det_profile == "constant"      ? ZH_PROFILE_CONSTANT
                                  : det_profile == "neg_log_sin" ? ZH_PROFILE_NEG_LOG_SIN
                                  : det_profile == "log_sin"     ? ZH_PROFILE_LOG_SIN
                                                                 : ZH_PROFILE_TRIG;
        check(zh_det_weighted_interval(det_lower, det_upper, k, det_coeffs.data(), det_coeffs.size(), &o, &h,
                                       &closed),
              "weighted interval determinant");
        result["geometry"] = "weighted_interval";
      } else {
        check(zh_det_interval(det_length, &o, &h), "interval determinant");
        closed = -std::log(2.0 * det_length) + 0.0;
        result["geometry"] = "interval";
      }
      result["height"] = height_json(h);
      result["closed_form"] = closed;
      result["difference"] = h.value - closed;
      std::printf("Z'(0) = %.12g +- %.3g (closed form %.12g, difference %.3g)\n", h.value, h.error, closed,
                  h.value - closed);
    } else if (command == "collar") {
      const zh_options o = col_num.options();
      zh_collar_result r;
      const zh_route route = col_route == "direct"      ? ZH_ROUTE_DIRECT
                             : col_route == "conformal" ? ZH_ROUTE_CONFORMAL
                                                        : ZH_ROUTE_BOTH;
      check(zh_collar_height(col_l, col_lower, col_upper, route, &o, &r), "collar height");
      if (r.has_direct) result["direct"] = height_json(r.direct);
      if (r.has_conformal) result["conformal"] = height_json(r.conformal);
      result["half_collar_height"] = r.h_half;
      result["z_prime_0"] = r.z_prime_0;
      result["route_difference"] = r.route_difference;
      const zh_height& best = r.has_direct ? r.direct : r.conformal;
      std::printf("h(C) = %.12g +- %.3g, h(C_III) = %.12g, Z'(0) = %.12g\n", best.value, best.error, r.h_half,
                  r.z_prime_0);
      if (r.has_direct && r.has_conformal)
        std::printf("route difference %.3g\n", r.route_difference);
    } else if (command == "sweep") {
      const auto ls = parse_range(swp_l, "l");
      std::vector<zh_sweep_row> rows(ls.size());
      double spread = 0.0;
      const zh_subcollar kind = swp_kind == "SC_I" ? ZH_SC_I : swp_kind == "SC_II" ? ZH_SC_II : ZH_SC_III;
      check(zh_sweep(kind, ls.data(), ls.size(), swp_leading == "corrected" ? ZH_LEADING_CORRECTED : ZH_LEADING_STATED,
                     swp_drop_log, rows.data(), &spread),
            "sweep");
      std::vector<std::vector<std::string>> table;
      json jr = json::array();
      for (const auto& r : rows) {
        table.push_back({csv_number(r.l), csv_number(r.h), csv_number(r.leading), csv_number(r.residual),
                         csv_number(r.error)});
        jr.push_back({{"error", r.error}, {"h", r.h}, {"l", r.l}, {"leading", r.leading}, {"residual", r.residual}});
        std::printf("l=%-8.4g h=%-16.10g residual=%-12.6g\n", r.l, r.h, r.residual);
      }
      write_csv(out / "sweep.csv", {"l", "h", "leading", "residual", "error"}, table);
      result["rows"] = jr;
      result["spread"] = spread;
      result["csv"] = "sweep.csv";
      std::printf("residual spread %.6g\n", spread);
    } else if (command == "insertion") {
      double gap = 0.0, err = 0.0, pieces[4] = {0, 0, 0, 0};
      size_t n = 0;
      check(zh_insertion_gap(ins_l, ins_lower, ins_upper, ins_in_lower, ins_in_upper, &gap, &err, pieces, &n),
            "insertion gap");
      result["gap"] = gap;
      result["error"] = err;
      result["pieces"] = std::vector<double>(pieces, pieces + n);
      std::printf("gap = %.12g +- %.3g\n", gap, err);
    } else if (command == "uniformize") {
      MeshHandle mesh{uni_mesh.load()};
      result["mesh"] = mesh_json(mesh.p);
      zh_uniform_options o;
      zh_uniform_options_default(&o);
      o.area = uni_area;
      o.tolerance = uni_tol;
      o.max_iterations = uni_max_iter;
      o.init_seed = uni_init_seed;
      if (uni_map == "roundtrip") {
        if (!uni_factor_csv.empty()) throw ConfigError("--factor-csv needs a single map, not roundtrip");
        zh_round_trip_info r;
        check(zh_round_trip(mesh.p, uni_area, &r), "round trip");
        result["discrepancy"] = r.discrepancy;
        result["residual_F1"] = r.residual_F1;
        result["residual_F2"] = r.residual_F2;
        result["type_one"] = uniformity_json(r.type_one);
        result["type_two"] = uniformity_json(r.type_two);
        std::printf("round trip discrepancy %.3g\n", r.discrepancy);
      } else {
        UniformHandle u;
        const zh_uniform_map map = uni_map == "f2" ? ZH_MAP_F2 : ZH_MAP_PSI;
        check(zh_uniformize(mesh.p, map, &o, &u.p), "uniformization");
        if (uni_map == "phi") {
          UniformHandle v;
          check(zh_uniformize_result(u.p, ZH_MAP_PHI, &o, &v.p), "uniformization (phi)");
          std::swap(u.p, v.p);
        }
        zh_uniform_info info;
        check(zh_uniformization_info(u.p, &info), "uniformization info");
        std::vector<double> factor(zh_uniformization_size(u.p));
        check(zh_uniformization_factor(u.p, factor.data(), factor.size()), "conformal factor");
        result["residual"] = info.residual;
        result["iterations"] = info.iterations;
        result["functional_value"] = info.functional_value;
        result["constraint_violation"] = info.constraint_violation;
        result["area"] = info.area;
        result["discrete_K_deviation"] = info.discrete_K_deviation;
        result["measured"] = uniformity_json(info.measured);
        result["factor"] = factor;
        if (!uni_factor_csv.empty()) {
          std::vector<std::vector<std::string>> table;
          for (size_t i = 0; i < factor.size(); ++i) table.push_back({std::to_string(i), csv_number(factor[i])});
          write_csv(out / uni_factor_csv, {"vertex", "factor"}, table);
        }
        std::printf("residual %.3g after %d iterations, area %.12g\n", info.residual, info.iterations, info.area);
        if (info.residual > uni_tol) throw InvariantFailure("uniformization residual above tolerance");
      }
    } else if (command == "polyakov") {
      MeshHandle mesh{pol_mesh.load()};
      result["mesh"] = mesh_json(mesh.p);
      if (pol_check != "inequality") {
        zh_mesh_info info;
        check(zh_mesh_get_info(mesh.p, &info), "mesh info");
        std::vector<double> psi(info.vertices, std::log(pol_lambda));
        double h = 0.0;
        check(zh_polyakov_shift(mesh.p, psi.data(), psi.size(), pol_h0, &h), "Polyakov shift");
        const double expected = pol_h0 + info.euler_characteristic / 3.0 * std::log(pol_lambda);
        result["scaling"] = {{"expected", expected}, {"height", h}, {"difference", h - expected}};
        std::printf("h(lambda^2 g) = %.15g, h + (chi/3) log lambda = %.15g\n", h, expected);
        if (std::abs(h - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
          throw InvariantFailure("scaling law violated");
      }
      if (pol_check != "scaling") {
        zh_inequality q;
        check(zh_height_inequality(mesh.p, &q), "height inequality");
        result["inequality"] = {{"energy", q.energy},       {"flux", q.flux},       {"flux_gradient", q.flux_gradient},
                                {"flux_target", q.flux_target}, {"holds", q.holds != 0}, {"jensen_holds", q.jensen_holds != 0},
                                {"lhs", q.lhs},             {"log_term", q.log_term}, {"mean_term", q.mean_term},
                                {"rhs", q.rhs},             {"slack", q.slack}};
        std::printf("slack %.6g (holds: %s), Jensen %s\n", q.slack, q.holds ? "yes" : "no",
                    q.jensen_holds ? "yes" : "no");
        if (q.slack < -1e-8 || !q.jensen_holds) throw InvariantFailure("height inequality violated");
      }
    } else if (command == "verify") {
      char* text = nullptr;
      check(zh_verify(ver_suite.c_str(), ver_seed, &text), "verification");
      result = json::parse(text);
      zh_string_free(text);
      for (const auto& s : result["suites"]) {
        int failed = 0;
        for (const auto& c : s["checks"]) failed += c["passed"].get<bool>() ? 0 : 1;
        std::printf("%-20s %s (%zu checks, %d failed)\n", s["suite"].get<std::string>().c_str(),
                    s["passed"].get<bool>() ? "PASS" : "FAIL", s["checks"].size(), failed);
        for (const auto& c : s["checks"])
          if (!c["passed"].get<bool>())
            std::printf("    %s: %g > %g\n", c["name"].get<std::string>().c_str(), c["value"].get<double>(),
                        c["tolerance"].get<double>());
      }
      if (!result["passed"].get<bool>()) throw InvariantFailure("property suite failed");
    }
  } catch (const ConfigError& e) {
    status = kConfigError;
    error = e.what();
  } catch (const InvariantFailure& e) {
    status = kAccuracyError;
    error = e.what();
  } catch (const std::exception& e) {
    status = kAccuracyError;
    error = e.what();
  }
  if (!error.empty()) std::cerr << "error: " << error << "\n";

  // manifest, also on failure
  std::string canonical = command + "\n";
  for (const auto& [k, v] : config_record.items()) canonical += k + "=" + v.get<std::string>() + "\n";
  json manifest;
  manifest["command"] = command;
  manifest["config"] = config_record;
  manifest["config_hash"] = hex(fnv1a(canonical));
  manifest["version"] = zh_version();
  manifest["status"] = status == 0 ? "ok" : "failed";
  manifest["partial"] = status != 0;
  if (!error.empty()) manifest["error"] = error;
  manifest["results"] = result;
  try {
    fs::create_directories(out_dir);
    if (parsed && status == 0) write_json(fs::path(out_dir) / (command + ".json"), result);
    write_json(fs::path(out_dir) / "manifest.json", manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot write outputs: " << e.what() << "\n";
    if (status == 0) status = kConfigError;
  }
  return status;
}
