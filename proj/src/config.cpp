#include "hobs/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hobs/report.hpp"

namespace hobs {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("config: key '" + key + "' expects a real number, got '" + v + "'");
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_commas(text)) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("config: key '" + key + "' expects a nonempty list");
  return out;
}

template <typename T, std::size_t N>
std::array<T, N> parse_fixed(const std::string& key, const std::string& text) {
  const auto items = split_commas(text);
  if (items.size() != N) {
    throw ConfigError("config: key '" + key + "' expects " + std::to_string(N) + " values");
  }
  std::array<T, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if constexpr (std::is_same_v<T, double>) {
      out[i] = parse_double(key, items[i]);
    } else {
      out[i] = static_cast<T>(parse_integer(key, items[i]));
    }
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

void check_decreasing(const std::string& key, const std::vector<double>& values) {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] > values[i + 1])) {
      throw ConfigError("config: key '" + key + "' must be strictly decreasing");
    }
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "psi_preset") cfg.psi_preset = value;
    else if (key == "psi_params") cfg.psi_params = parse_double_list(key, value);
    else if (key == "ustar_preset") cfg.ustar_preset = value;
    else if (key == "ustar_params") cfg.ustar_params = parse_double_list(key, value);
    else if (key == "box_lo") cfg.box_lo = parse_fixed<double, 3>(key, value);
    else if (key == "box_hi") cfg.box_hi = parse_fixed<double, 3>(key, value);
    else if (key == "resolution") cfg.resolution = parse_fixed<int, 3>(key, value);
    else if (key == "p") cfg.p = parse_double(key, value);
    else if (key == "eps") cfg.eps = parse_double(key, value);
    else if (key == "eps_list") cfg.eps_list = parse_double_list(key, value);
    else if (key == "eta") cfg.eta = parse_double(key, value);
    else if (key == "eta_list") cfg.eta_list = parse_double_list(key, value);
    else if (key == "ball_radius") cfg.ball_radius = parse_double(key, value);
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_integer(key, value));
    else if (key == "tol_solve") cfg.tol_solve = parse_double(key, value);
    else if (key == "tol_verify") cfg.tol_verify = parse_double(key, value);
    else if (key == "trials") cfg.trials = static_cast<long>(parse_integer(key, value));
    else if (key == "max_iters") cfg.max_iters = static_cast<int>(parse_integer(key, value));
    else if (key == "out_dir") cfg.out_dir = value;
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void validate_config(const RunConfig& cfg) {
  config_psi(cfg);     // throws on unknown preset / bad parameter count
  config_u_star(cfg);  // ditto
  try {
    config_grid(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: box/resolution invalid: ") + e.what());
  }
  if (!(cfg.p > 1.0)) throw ConfigError("config: key 'p' must lie in (1, inf)");
  if (!(cfg.eps >= 0.0)) throw ConfigError("config: key 'eps' must be >= 0");
  for (double e : cfg.eps_list) {
    if (!(e > 0.0)) throw ConfigError("config: key 'eps_list' entries must be positive");
  }
  check_decreasing("eps_list", cfg.eps_list);
  if (!(cfg.eta > 0.0 && cfg.eta < 1.0)) {
    throw ConfigError("config: key 'eta' must lie in (0, 1)");
  }
  for (double e : cfg.eta_list) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("config: key 'eta_list' entries must lie in (0, 1)");
  }
  check_decreasing("eta_list", cfg.eta_list);
  if (!(cfg.ball_radius > 0.0)) throw ConfigError("config: key 'ball_radius' must be positive");
  if (!(cfg.tol_solve > 0.0)) throw ConfigError("config: key 'tol_solve' must be positive");
  if (cfg.tol_verify < 0.0) throw ConfigError("config: key 'tol_verify' must be >= 0");
  if (cfg.trials < 1) throw ConfigError("config: key 'trials' must be >= 1");
  if (cfg.max_iters < 1) throw ConfigError("config: key 'max_iters' must be >= 1");
  if (cfg.out_dir.empty()) throw ConfigError("config: key 'out_dir' must be nonempty");
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "ball_radius = " << format_double(cfg.ball_radius) << '\n';
  out << "box_hi = " << join({cfg.box_hi[0], cfg.box_hi[1], cfg.box_hi[2]}) << '\n';
  out << "box_lo = " << join({cfg.box_lo[0], cfg.box_lo[1], cfg.box_lo[2]}) << '\n';
  out << "eps = " << format_double(cfg.eps) << '\n';
  out << "eps_list = " << join(cfg.eps_list) << '\n';
  out << "eta = " << format_double(cfg.eta) << '\n';
  out << "eta_list = " << join(cfg.eta_list) << '\n';
  out << "max_iters = " << cfg.max_iters << '\n';
  out << "out_dir = " << cfg.out_dir << '\n';
  out << "p = " << format_double(cfg.p) << '\n';
  out << "psi_params = " << join(cfg.psi_params) << '\n';
  out << "psi_preset = " << cfg.psi_preset << '\n';
  out << "resolution = " << cfg.resolution[0] << ',' << cfg.resolution[1] << ','
      << cfg.resolution[2] << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "tol_solve = " << format_double(cfg.tol_solve) << '\n';
  out << "tol_verify = " << format_double(cfg.tol_verify) << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "ustar_params = " << join(cfg.ustar_params) << '\n';
  out << "ustar_preset = " << cfg.ustar_preset << '\n';
  return out.str();
}

Grid config_grid(const RunConfig& cfg) {
  return Grid::build({cfg.box_lo[0], cfg.box_lo[1], cfg.box_lo[2]},
                     {cfg.box_hi[0], cfg.box_hi[1], cfg.box_hi[2]}, cfg.resolution[0],
                     cfg.resolution[1], cfg.resolution[2]);
}

AnalyticFunction config_psi(const RunConfig& cfg) {
  try {
    return AnalyticFunction::from_name(cfg.psi_preset, cfg.psi_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: key 'psi_preset'/'psi_params': ") + e.what());
  }
}

AnalyticFunction config_u_star(const RunConfig& cfg) {
  try {
    return AnalyticFunction::from_name(cfg.ustar_preset, cfg.ustar_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: key 'ustar_preset'/'ustar_params': ") + e.what());
  }
}

SolveOptions config_solve_options(const RunConfig& cfg) {
  SolveOptions opt;
  opt.tol = cfg.tol_solve;
  opt.max_iters = cfg.max_iters;
  return opt;
}

}  // namespace hobs
