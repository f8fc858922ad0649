#include "degmlmc/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <istream>
#include <sstream>

namespace degmlmc {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text) {
  // Also accepts a plain fraction such as 1/64.
  const auto slash = text.find('/');
  if (slash != std::string::npos)
    return parse_double(text.substr(0, slash)) / parse_double(text.substr(slash + 1));
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw std::invalid_argument("expected a number, got '" + text + "'");
  return v;
}

template <class Int>
Int parse_int(const std::string& text) {
  Int v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw std::invalid_argument("expected true|false, got '" + text + "'");
}

ReferenceKind parse_reference(const std::string& text) {
  if (text == "quadrature") return ReferenceKind::quadrature;
  if (text == "mlmc") return ReferenceKind::mlmc;
  throw std::invalid_argument("expected quadrature|mlmc, got '" + text + "'");
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"model", [](auto& c, const auto& v) { c.model.kind = parse_model_kind(v); }},
      {"initial_data", [](auto& c, const auto& v) { c.model.initial = parse_initial_data_kind(v); }},
      {"nu", [](auto& c, const auto& v) { c.model.params.nu = parse_double(v); }},
      {"q", [](auto& c, const auto& v) { c.model.params.q = parse_double(v); }},
      {"k_bar", [](auto& c, const auto& v) { c.model.params.k_bar = parse_double(v); }},
      {"eps_reg", [](auto& c, const auto& v) { c.model.params.eps_reg = parse_double(v); }},
      {"scheme", [](auto& c, const auto& v) { c.scheme.kind = parse_scheme_kind(v); }},
      {"cfl", [](auto& c, const auto& v) { c.scheme.cfl = parse_double(v); }},
      {"theta", [](auto& c, const auto& v) { c.scheme.theta = parse_double(v); }},
      {"newton_tol_factor",
       [](auto& c, const auto& v) { c.scheme.newton_tol_factor = parse_double(v); }},
      {"newton_max_iter", [](auto& c, const auto& v) { c.scheme.newton_max_iter = parse_int<int>(v); }},
      {"strict_rate_cfl", [](auto& c, const auto& v) { c.scheme.strict_rate_cfl = parse_bool(v); }},
      {"flux_eval", [](auto& c, const auto& v) { c.scheme.flux_eval = parse_flux_evaluation(v); }},
      {"dx0", [](auto& c, const auto& v) { c.dx0 = parse_double(v); }},
      {"K", [](auto& c, const auto& v) { c.K = parse_int<int>(v); }},
      {"L", [](auto& c, const auto& v) { c.L_max = parse_int<int>(v); }},
      {"m_base", [](auto& c, const auto& v) { c.m_base = parse_int<std::size_t>(v); }},
      {"T", [](auto& c, const auto& v) { c.T = parse_double(v); }},
      {"N", [](auto& c, const auto& v) { c.N = parse_int<std::size_t>(v); }},
      {"seed", [](auto& c, const auto& v) { c.seed = parse_int<std::uint64_t>(v); }},
      {"reference", [](auto& c, const auto& v) { c.reference = parse_reference(v); }},
      {"reference_nodes", [](auto& c, const auto& v) { c.reference_nodes = parse_int<std::size_t>(v); }},
      {"reference_extra_levels",
       [](auto& c, const auto& v) { c.reference_extra_levels = parse_int<int>(v); }},
      {"L_ref", [](auto& c, const auto& v) { c.L_ref = parse_int<int>(v); }},
      {"reference_seed", [](auto& c, const auto& v) { c.reference_seed = parse_int<std::uint64_t>(v); }},
      {"workers", [](auto& c, const auto& v) { c.workers = parse_int<std::size_t>(v); }},
      {"output", [](auto& c, const auto& v) { c.output_dir = v; }},
      {"dx", [](auto& c, const auto& v) { c.dx = parse_double(v); }},
      {"M", [](auto& c, const auto& v) { c.M = parse_int<std::size_t>(v); }},
      {"timing", [](auto& c, const auto& v) { c.timing = parse_bool(v); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& config_sections() {
  static const std::vector<std::string> s = {"model", "scheme", "hierarchy", "run"};
  return s;
}

const std::vector<std::string>& config_keys(const std::string& section) {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"model", {"model", "initial_data", "nu", "q", "k_bar", "eps_reg"}},
      {"scheme",
       {"scheme", "cfl", "theta", "newton_tol_factor", "newton_max_iter", "strict_rate_cfl",
        "flux_eval"}},
      {"hierarchy", {"dx0", "K", "L", "m_base"}},
      {"run",
       {"T", "N", "seed", "reference", "reference_nodes", "reference_extra_levels", "L_ref",
        "reference_seed", "workers", "output", "dx", "M", "timing"}},
  };
  const auto it = keys.find(section);
  if (it == keys.end()) throw std::invalid_argument("unknown config section '" + section + "'");
  return it->second;
}

ConfigMap parse_config(std::istream& is, const std::string& name) {
  ConfigMap out;
  std::string section;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string where = name + ":" + std::to_string(line_no);
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      const auto& all = config_sections();
      if (std::find(all.begin(), all.end(), section) == all.end())
        throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError(where + ": key '" + key + "' outside any section");
    const auto& keys = config_keys(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
    if (out.count(key))
      throw ConfigError(where + ": duplicate key '" + key + "' (first set at " +
                        out[key].origin + ")");
    out[key] = ConfigEntry{value, where};
  }
  return out;
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

void apply_config(const ConfigMap& entries, ExperimentConfig& cfg) {
  const auto& table = setters();
  for (const auto& [key, entry] : entries) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(entry.origin + ": unknown key '" + key + "'");
    try {
      it->second(cfg, entry.value);
    } catch (const std::exception& e) {
      throw ConfigError(entry.origin + ": bad value for '" + key + "': " + e.what());
    }
  }
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << std::setprecision(17) << std::boolalpha;
  os << "[model]\nmodel = " << to_string(c.model.kind)
     << "\ninitial_data = " << to_string(c.model.initial) << "\nnu = " << c.model.params.nu
     << "\nq = " << c.model.params.q << "\nk_bar = " << c.model.params.k_bar
     << "\neps_reg = " << c.model.params.eps_reg << "\n";
  os << "[scheme]\nscheme = " << to_string(c.scheme.kind) << "\ncfl = " << c.scheme.cfl
     << "\ntheta = " << c.scheme.theta << "\nnewton_tol_factor = " << c.scheme.newton_tol_factor
     << "\nnewton_max_iter = " << c.scheme.newton_max_iter
     << "\nstrict_rate_cfl = " << c.scheme.strict_rate_cfl
     << "\nflux_eval = " << to_string(c.scheme.flux_eval) << "\n";
  os << "[hierarchy]\ndx0 = " << c.dx0 << "\nK = " << c.K << "\nL = " << c.L_max
     << "\nm_base = " << c.m_base << "\n";
  os << "[run]\nT = " << c.T << "\nN = " << c.N << "\nseed = " << c.seed << "\nreference = "
     << (c.reference == ReferenceKind::quadrature ? "quadrature" : "mlmc")
     << "\nreference_nodes = " << c.reference_nodes
     << "\nreference_extra_levels = " << c.reference_extra_levels << "\nL_ref = " << c.L_ref
     << "\nreference_seed = " << c.reference_seed << "\nworkers = " << c.workers
     << "\noutput = " << c.output_dir << "\ndx = " << c.dx << "\nM = " << c.M
     << "\ntiming = " << c.timing << "\n";
  return os.str();
}

}  // namespace degmlmc
