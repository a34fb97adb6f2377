#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "vasnet/grid.hpp"

namespace vasnet {

// A set of named scalar fields on one grid at one instant.
//
// On disk ("VNF1"), all integers and floats little-endian:
//   char[4]  magic "VNF1"
//   u32      dims
//   u32      N per active axis
//   f64      L per active axis
//   f64      time
//   u32      field count
//   per field: u32 name length, name bytes (no terminator)
//   per field, in table order: N_x*N_y*N_z f64 interior values, x fastest
struct Snapshot {
  Grid grid;
  double time = 0.0;
  std::vector<std::pair<std::string, ScalarField>> fields;

  const ScalarField& field(const std::string& name) const;
};

void write_snapshot(std::ostream& out, const Snapshot& snap);
Snapshot read_snapshot(std::istream& in);

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace vasnet
