#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vasnet/driver.hpp"
#include "vasnet/percolation.hpp"

namespace vasnet {

struct ConfigKey {
  std::string section;
  std::string name;
  std::string default_value;
  std::string help;
};

// Every recognised key, in file order. Names are unique across sections so
// each one doubles as a command-line flag.
const std::vector<ConfigKey>& config_keys();

// Run configuration: INI-style sections of key = value pairs. Values are
// kept as text and parsed on access, so error messages name the key.
class SimConfig {
 public:
  SimConfig();

  static SimConfig load(const std::filesystem::path& path);
  static SimConfig parse(std::istream& in);
  void save(std::ostream& out) const;

  // Throws ConfigError for unknown keys.
  void set(const std::string& name, const std::string& value);
  const std::string& get(const std::string& name) const;

  int dims() const;
  std::array<int, 3> cells() const;
  std::array<double, 3> lengths() const;
  Grid grid() const;
  // Grid of side L with the spacing of grid() (cells = round(L / h)).
  Grid grid_for_length(double L) const;

  ModelParams model() const;  // unresolved: c0 may still be calibrated later
  StepOptions step_options() const;
  RunOptions run_options() const;

  std::uint64_t seed() const;
  double density() const;
  int workers() const;
  std::string out() const;

  double n_thresh() const;
  SpanRule span() const;
  std::vector<double> densities() const;
  std::vector<double> box_lengths() const;
  int realizations() const;
  int parallel_runs() const;

  double real(const std::string& name) const;
  long integer(const std::string& name) const;
  bool flag(const std::string& name) const;
  std::vector<double> reals(const std::string& name) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace vasnet
