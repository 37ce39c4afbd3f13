#include "stagfv/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace stagfv {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
      const std::string key = trim(line.substr(0, eq));
      if (key.empty())
        throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      values_[key] = trim(line.substr(eq + 1));
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string take_string(const std::string& key, const std::string& fallback) {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string v = it->second;
    values_.erase(it);
    return v;
  }

  double take_double(const std::string& key, double fallback) {
    return has(key) ? to_double(key, take_string(key, "")) : fallback;
  }

  long take_long(const std::string& key, long fallback) {
    if (!has(key)) return fallback;
    const std::string v = take_string(key, "");
    try {
      std::size_t pos = 0;
      const long out = std::stol(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
  }

  bool take_bool(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = take_string(key, "");
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
  }

  std::vector<double> take_doubles(const std::string& key) {
    std::vector<double> out;
    if (!has(key)) return out;
    std::istringstream in(take_string(key, ""));
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
  }

  void finish() const {
    if (!values_.empty())
      throw ConfigError("config: unknown key '" + values_.begin()->first + "'");
  }

 private:
  double to_double(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      const double out = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
  }

  std::map<std::string, std::string> values_;
};

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  KeyValues kv(text);
  RunConfig c;
  c.dim = static_cast<int>(kv.take_long("dim", 1));
  c.xmin = kv.take_double("xmin", c.xmin);
  c.xmax = kv.take_double("xmax", c.xmax);
  c.ymin = kv.take_double("ymin", c.ymin);
  c.ymax = kv.take_double("ymax", c.ymax);
  c.nx = static_cast<int>(kv.take_long("nx", c.nx));
  c.ny = static_cast<int>(kv.take_long("ny", c.ny));
  c.gamma = kv.take_double("gamma", c.gamma);
  c.preset = kv.take_string("preset", c.preset);
  c.interp.rho = parse_interp(kv.take_string("interp_rho", "upwind"));
  c.interp.e = parse_interp(kv.take_string("interp_e", "upwind"));
  c.interp.velocity = parse_interp(kv.take_string("interp_u", "upwind"));
  c.cfl = kv.take_double("cfl", c.cfl);
  c.t_end = kv.take_double("t_end", c.t_end);
  c.max_steps = kv.take_long("max_steps", c.max_steps);
  const std::string dt_mode = kv.take_string("dt_mode", "uniform");
  if (dt_mode == "uniform")
    c.uniform_dt = true;
  else if (dt_mode == "adaptive")
    c.uniform_dt = false;
  else
    throw ConfigError("config key 'dt_mode': expected uniform|adaptive, got '" + dt_mode + "'");
  c.output_times = kv.take_doubles("output_times");
  c.output_dir = kv.take_string("output_dir", c.output_dir);
  c.audit = kv.take_bool("audit", c.audit);
  c.levels = static_cast<int>(kv.take_long("levels", c.levels));
  c.rho0 = kv.take_double("rho0", c.rho0);
  c.e0 = kv.take_double("e0", c.e0);
  c.u0.x = kv.take_double("u0x", c.u0.x);
  c.u0.y = kv.take_double("u0y", c.u0.y);
  c.interface_pos = kv.take_double("interface", c.interface_pos);
  c.left.rho = kv.take_double("rho_left", c.left.rho);
  c.left.u = kv.take_double("u_left", c.left.u);
  c.left.p = kv.take_double("p_left", c.left.p);
  c.right.rho = kv.take_double("rho_right", c.right.rho);
  c.right.u = kv.take_double("u_right", c.right.u);
  c.right.p = kv.take_double("p_right", c.right.p);
  c.dt_over_h = kv.take_double("dt_over_h", c.dt_over_h);
  c.riemann_time = kv.take_double("riemann_time", c.riemann_time);
  c.riemann_samples = static_cast<int>(kv.take_long("riemann_samples", c.riemann_samples));
  kv.finish();
  validate_config(c);
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

void validate_config(const RunConfig& c) {
  if (c.dim != 1 && c.dim != 2) throw ConfigError("config key 'dim': must be 1 or 2");
  if (!(c.xmax > c.xmin)) throw ConfigError("config key 'xmax': extent is degenerate");
  if (c.dim == 2 && !(c.ymax > c.ymin))
    throw ConfigError("config key 'ymax': extent is degenerate");
  if (c.nx < 1) throw ConfigError("config key 'nx': must be >= 1");
  if (c.dim == 2 && c.ny < 1) throw ConfigError("config key 'ny': must be >= 1");
  if (!(c.gamma > 1.0)) throw ConfigError("config key 'gamma': must be > 1");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("config key 'cfl': must be in (0,1]");
  if (c.t_end < 0.0) throw ConfigError("config key 't_end': must be >= 0");
  if (c.max_steps < 0) throw ConfigError("config key 'max_steps': must be >= 0");
  if (c.levels < 1) throw ConfigError("config key 'levels': must be >= 1");

  const bool riemann_type = c.preset == "sod" || c.preset == "piecewise";
  if (c.preset != "uniform" && c.preset != "smooth2d" && c.preset != "manufactured" &&
      !riemann_type)
    throw ConfigError("config key 'preset': unknown preset '" + c.preset + "'");
  if (c.preset == "smooth2d" && c.dim != 2)
    throw ConfigError("config key 'preset': smooth2d needs dim=2");
  if ((riemann_type || c.preset == "manufactured") && c.dim != 1)
    throw ConfigError("config key 'preset': '" + c.preset + "' needs dim=1");
  if (riemann_type) {
    const double x0 = c.preset == "sod" ? 0.5 : c.interface_pos;
    if (!(x0 > c.xmin && x0 < c.xmax))
      throw ConfigError("config key 'interface': must lie inside the domain");
    // the discontinuity must sit on a face so cell averages are exact
    const double h = (c.xmax - c.xmin) / c.nx;
    const double index = (x0 - c.xmin) / h;
    if (std::abs(index - std::round(index)) > 1e-9)
      throw ConfigError("config key 'interface': must align with a mesh face");
    if (!(c.left.rho > 0.0 && c.right.rho > 0.0))
      throw ConfigError("config key 'rho_left/rho_right': must be positive");
    if (!(c.left.p > 0.0 && c.right.p > 0.0))
      throw ConfigError("config key 'p_left/p_right': must be positive");
  }
  if (c.preset == "uniform" && !(c.rho0 > 0.0 && c.e0 > 0.0))
    throw ConfigError("config key 'rho0/e0': must be positive");
  if (c.preset == "manufactured" && !(c.dt_over_h > 0.0))
    throw ConfigError("config key 'dt_over_h': must be positive");
}

StaggeredMesh mesh_from_config(const RunConfig& c) { return mesh_from_config(c, 0); }

StaggeredMesh mesh_from_config(const RunConfig& c, int level) {
  const int scale = 1 << level;
  if (c.dim == 1) return build_mesh(1, {{c.xmin, c.xmax}}, {c.nx * scale});
  return build_mesh(2, {{c.xmin, c.xmax}, {c.ymin, c.ymax}}, {c.nx * scale, c.ny * scale});
}

InitialData initial_data_from_config(const RunConfig& c) {
  if (c.preset == "uniform") return uniform_initial(c.rho0, c.e0, c.u0);
  if (c.preset == "sod") return sod_initial(c.gamma);
  if (c.preset == "piecewise")
    return piecewise_initial(c.left, c.right, c.gamma, c.interface_pos);
  if (c.preset == "smooth2d") return smooth2d_initial(c.gamma);
  throw ConfigError("preset '" + c.preset + "' does not define pointwise initial data");
}

}  // namespace stagfv
