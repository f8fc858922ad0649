#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "degmlmc/error.hpp"
#include "degmlmc/harness.hpp"

namespace degmlmc {

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A raw setting and where it came from ("run.ini:12" or "--nu").
struct ConfigEntry {
  std::string value;
  std::string origin;
};

/// Keys are unique across sections, so the map is flat.
using ConfigMap = std::map<std::string, ConfigEntry>;

/// Known keys of a section ("model", "scheme", "hierarchy", "run").
const std::vector<std::string>& config_keys(const std::string& section);
const std::vector<std::string>& config_sections();

/// Parses the INI-like config text. Blank lines and lines starting with
/// '#' or ';' are skipped. Errors carry "<name>:<line>:".
ConfigMap parse_config(std::istream& is, const std::string& name);
ConfigMap read_config_file(const std::string& path);

/// Applies every entry to cfg. Bad values are reported with their origin.
void apply_config(const ConfigMap& entries, ExperimentConfig& cfg);

/// key=value lines describing cfg, in section order (round-trips through
/// parse_config).
std::string format_config(const ExperimentConfig& cfg);

}  // namespace degmlmc
