#include "vasnet/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "vasnet/errors.hpp"

namespace vasnet {

Occupancy threshold_field(const ScalarField& n, double n_thresh, double scale) {
  const Grid& g = n.grid();
  Occupancy occ(g.dims(), {g.cells(0), g.cells(1), g.cells(2)});
  std::size_t m = 0;
  for_each_cell(g, [&](int i, int j, int k) { occ.sites[m++] = n(i, j, k) * scale >= n_thresh; });
  return occ;
}

SpanRule parse_span_rule(const std::string& name) {
  if (name == "any") return SpanRule::any_axis;
  if (name == "all") return SpanRule::all_axes;
  if (name == "x") return SpanRule::x;
  if (name == "y") return SpanRule::y;
  if (name == "z") return SpanRule::z;
  throw ConfigError("unknown span rule '" + name + "' (any, all, x, y, z)");
}

std::string to_string(SpanRule r) {
  switch (r) {
    case SpanRule::any_axis: return "any";
    case SpanRule::all_axes: return "all";
    case SpanRule::x: return "x";
    case SpanRule::y: return "y";
    case SpanRule::z: return "z";
  }
  return "any";
}

std::int64_t ClusterLabeling::occupied() const {
  std::int64_t s = 0;
  for (auto v : sizes) s += v;
  return s;
}

int ClusterLabeling::largest() const {
  int best = 0;
  for (int l = 1; l <= count(); ++l)
    if (best == 0 || sizes[l - 1] > sizes[best - 1]) best = l;
  return best;
}

bool ClusterLabeling::percolates(SpanRule rule) const {
  for (const auto& s : spanning) {
    bool any = false, all = true;
    for (int a = 0; a < dims; ++a) {
      any |= s[a];
      all &= s[a];
    }
    switch (rule) {
      case SpanRule::any_axis: if (any) return true; break;
      case SpanRule::all_axes: if (all) return true; break;
      case SpanRule::x: if (s[0]) return true; break;
      case SpanRule::y: if (dims > 1 && s[1]) return true; break;
      case SpanRule::z: if (dims > 2 && s[2]) return true; break;
    }
  }
  return false;
}

int ClusterLabeler::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

const ClusterLabeling& ClusterLabeler::label(const Occupancy& occ) {
  const auto [nx, ny, nz] = occ.shape;
  const std::size_t total = occ.size();
  ClusterLabeling& r = result_;
  r.dims = occ.dims;
  r.shape = occ.shape;
  r.labels.assign(total, 0);
  r.sizes.clear();
  r.spanning.clear();
  parent_.resize(total);

  // Pass 1: provisional roots, one union per occupied backward neighbour.
  std::size_t m = 0;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i, ++m) {
        if (!occ.sites[m]) continue;
        int root = static_cast<int>(m);
        parent_[m] = root;
        auto join = [&](std::size_t q) {
          const int a = find(static_cast<int>(q));
          const int b = find(root);
          if (a == b) return;
          // keep the smaller index as root so roots follow scan order
          if (a < b) parent_[b] = a; else parent_[a] = b;
        };
        if (i > 0 && occ.sites[m - 1]) join(m - 1);
        if (j > 0 && occ.sites[m - nx]) join(m - nx);
        if (k > 0 && occ.sites[m - static_cast<std::size_t>(nx) * ny]) join(m - static_cast<std::size_t>(nx) * ny);
      }

  // Pass 2: final labels by first appearance, sizes and face contact.
  remap_.assign(total, 0);
  std::vector<std::array<bool, 3>> lo, hi;
  m = 0;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i, ++m) {
        if (!occ.sites[m]) continue;
        const int root = find(static_cast<int>(m));
        std::int32_t& l = remap_[root];
        if (l == 0) {
          r.sizes.push_back(0);
          r.spanning.push_back({false, false, false});
          lo.push_back({false, false, false});
          hi.push_back({false, false, false});
          l = static_cast<std::int32_t>(r.sizes.size());
        }
        r.labels[m] = l;
        ++r.sizes[l - 1];
        const int idx[3] = {i, j, k};
        for (int a = 0; a < occ.dims; ++a) {
          if (idx[a] == 0) lo[l - 1][a] = true;
          if (idx[a] == occ.shape[a] - 1) hi[l - 1][a] = true;
        }
      }
  for (std::size_t l = 0; l < r.sizes.size(); ++l)
    for (int a = 0; a < occ.dims; ++a) r.spanning[l][a] = lo[l][a] && hi[l][a];
  return r;
}

ClusterLabeling label_clusters(const Occupancy& occ) {
  ClusterLabeler labeler;
  return labeler.label(occ);
}

double order_parameter(const ClusterLabeling& lab) {
  const int l = lab.largest();
  if (l == 0 || lab.labels.empty()) return 0.0;
  return static_cast<double>(lab.sizes[l - 1]) / static_cast<double>(lab.labels.size());
}

double largest_occupied_fraction(const ClusterLabeling& lab) {
  const int l = lab.largest();
  if (l == 0) return 0.0;
  return static_cast<double>(lab.sizes[l - 1]) / static_cast<double>(lab.occupied());
}

std::vector<PiPoint> percolation_probability(const std::vector<EnsembleRecord>& records) {
  if (records.empty()) throw EmptyEnsemble("no realizations");
  std::map<std::pair<double, double>, EnsembleRecord> merged;
  for (const auto& r : records) {
    if (r.realizations < 0 || r.percolating_count < 0 || r.percolating_count > r.realizations)
      throw ConfigError("inconsistent ensemble record");
    auto& m = merged[{r.L, r.n_bar}];
    m.L = r.L;
    m.n_bar = r.n_bar;
    m.realizations += r.realizations;
    m.percolating_count += r.percolating_count;
  }
  std::vector<PiPoint> out;
  for (const auto& [key, r] : merged) {
    if (r.realizations == 0) {
      std::ostringstream msg;
      msg << "no realizations at L = " << r.L << ", n_bar = " << r.n_bar;
      throw EmptyEnsemble(msg.str());
    }
    PiPoint p;
    p.L = r.L;
    p.n_bar = r.n_bar;
    p.realizations = r.realizations;
    p.percolating = r.percolating_count;
    p.pi = static_cast<double>(r.percolating_count) / r.realizations;
    p.stderr_ = std::sqrt(p.pi * (1.0 - p.pi) / r.realizations);
    out.push_back(p);
  }
  return out;
}

std::vector<EnsembleRecord> tally(const std::vector<RealizationRow>& rows) {
  std::vector<EnsembleRecord> out;
  for (const auto& r : rows) out.push_back({r.L, r.n_bar, 1, r.percolates ? 1 : 0});
  return out;
}

void write_realizations_csv(std::ostream& out, const std::vector<RealizationRow>& rows) {
  out << "L,n_bar,seed,percolates,largest_fraction,largest_occupied_fraction,clusters\n";
  const auto old = out.precision(17);
  for (const auto& r : rows)
    out << r.L << ',' << r.n_bar << ',' << r.seed << ',' << (r.percolates ? 1 : 0) << ','
        << r.largest_fraction << ',' << r.largest_occupied << ',' << r.clusters << '\n';
  out.precision(old);
}

void write_pi_csv(std::ostream& out, const std::vector<PiPoint>& table) {
  out << "L,n_bar,realizations,percolating,pi,stderr\n";
  const auto old = out.precision(17);
  for (const auto& p : table)
    out << p.L << ',' << p.n_bar << ',' << p.realizations << ',' << p.percolating << ',' << p.pi
        << ',' << p.stderr_ << '\n';
  out.precision(old);
}

std::vector<PiPoint> read_pi_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty percolation table");
  std::vector<PiPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 5) throw FormatError("short percolation row: " + line);
    PiPoint p;
    try {
      p.L = std::stod(cells[0]);
      p.n_bar = std::stod(cells[1]);
      p.realizations = std::stoi(cells[2]);
      p.percolating = std::stoi(cells[3]);
      p.pi = std::stod(cells[4]);
      p.stderr_ = cells.size() > 5 ? std::stod(cells[5]) : 0.0;
    } catch (const std::logic_error&) {
      throw FormatError("bad percolation row: " + line);
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace vasnet
