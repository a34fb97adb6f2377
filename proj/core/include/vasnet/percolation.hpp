#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vasnet/grid.hpp"

namespace vasnet {

// Site lattice, x fastest. Inactive axes have extent 1.
struct Occupancy {
  int dims = 3;
  std::array<int, 3> shape{1, 1, 1};
  std::vector<std::uint8_t> sites;

  Occupancy() = default;
  Occupancy(int d, std::array<int, 3> s)
      : dims(d), shape(s), sites(static_cast<std::size_t>(s[0]) * s[1] * s[2], 0) {}
  std::size_t size() const { return sites.size(); }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(shape[0]) * (j + static_cast<std::size_t>(shape[1]) * k);
  }
};

// Site occupied iff value * scale >= n_thresh.
Occupancy threshold_field(const ScalarField& n, double n_thresh, double scale = 1.0);

enum class SpanRule { any_axis, all_axes, x, y, z };
SpanRule parse_span_rule(const std::string& name);
std::string to_string(SpanRule r);

// Face-connected clusters (no periodic wrap). Labels 1..K in order of the
// first site met in storage order; 0 marks empty sites.
struct ClusterLabeling {
  int dims = 3;
  std::array<int, 3> shape{1, 1, 1};
  std::vector<std::int32_t> labels;
  std::vector<std::int64_t> sizes;                 // sizes[l - 1]
  std::vector<std::array<bool, 3>> spanning;       // touches layer 0 and N-1

  int count() const { return static_cast<int>(sizes.size()); }
  std::int64_t occupied() const;
  // Largest cluster label (lowest label on ties); 0 if none.
  int largest() const;
  bool percolates(SpanRule rule = SpanRule::any_axis) const;
};

// Union-find labeler keeping its buffers between calls.
class ClusterLabeler {
 public:
  const ClusterLabeling& label(const Occupancy& occ);

 private:
  int find(int x);
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> remap_;
  ClusterLabeling result_;
};

ClusterLabeling label_clusters(const Occupancy& occ);

// Largest cluster over all sites / over occupied sites.
double order_parameter(const ClusterLabeling& lab);
double largest_occupied_fraction(const ClusterLabeling& lab);

struct EnsembleRecord {
  double L = 0.0;
  double n_bar = 0.0;
  int realizations = 0;
  int percolating_count = 0;
};

struct PiPoint {
  double L = 0.0;
  double n_bar = 0.0;
  int realizations = 0;
  int percolating = 0;
  double pi = 0.0;
  double stderr_ = 0.0;  // sqrt(pi (1 - pi) / m)
};

// Merges records by (L, n_bar), sorted by L then n_bar. Throws
// EmptyEnsemble when there are no records or a point has no realizations.
std::vector<PiPoint> percolation_probability(const std::vector<EnsembleRecord>& records);

// One analysed field.
struct RealizationRow {
  double L = 0.0;
  double n_bar = 0.0;
  std::uint64_t seed = 0;
  bool percolates = false;
  double largest_fraction = 0.0;   // of all sites
  double largest_occupied = 0.0;   // of occupied sites
  int clusters = 0;
};

std::vector<EnsembleRecord> tally(const std::vector<RealizationRow>& rows);

void write_realizations_csv(std::ostream& out, const std::vector<RealizationRow>& rows);
void write_pi_csv(std::ostream& out, const std::vector<PiPoint>& table);
std::vector<PiPoint> read_pi_csv(std::istream& in);

}  // namespace vasnet
