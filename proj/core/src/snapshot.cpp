#include "vasnet/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "vasnet/errors.hpp"

namespace vasnet {
namespace {

constexpr std::array<char, 4> kMagic{'V', 'N', 'F', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& out, double x) {
  const auto v = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

void read_exact(std::istream& in, unsigned char* dst, std::size_t n) {
  in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw FormatError("truncated snapshot");
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  read_exact(in, b, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  read_exact(in, b, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(v);
}

}  // namespace

const ScalarField& Snapshot::field(const std::string& name) const {
  for (const auto& [n, f] : fields)
    if (n == name) return f;
  throw FormatError("snapshot has no field '" + name + "'");
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  const Grid& g = snap.grid;
  out.write(kMagic.data(), 4);
  put_u32(out, static_cast<std::uint32_t>(g.dims()));
  for (int a = 0; a < g.dims(); ++a) put_u32(out, static_cast<std::uint32_t>(g.cells(a)));
  for (int a = 0; a < g.dims(); ++a) put_f64(out, g.length(a));
  put_f64(out, snap.time);
  put_u32(out, static_cast<std::uint32_t>(snap.fields.size()));
  for (const auto& [name, f] : snap.fields) {
    put_u32(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
  }
  for (const auto& [name, f] : snap.fields) {
    if (!(f.grid() == g)) throw FormatError("field '" + name + "' is on a different grid");
    for_each_cell(g, [&](int i, int j, int k) { put_f64(out, f(i, j, k)); });
  }
  if (!out) throw FormatError("write failed");
}

Snapshot read_snapshot(std::istream& in) {
  std::array<unsigned char, 4> magic{};
  read_exact(in, magic.data(), 4);
  if (std::memcmp(magic.data(), kMagic.data(), 4) != 0) throw FormatError("bad magic");
  const auto dims = static_cast<int>(get_u32(in));
  if (dims < 1 || dims > 3) throw FormatError("bad dimension");
  std::array<int, 3> cells{1, 1, 1};
  std::array<double, 3> length{1.0, 1.0, 1.0};
  for (int a = 0; a < dims; ++a) cells[a] = static_cast<int>(get_u32(in));
  for (int a = 0; a < dims; ++a) length[a] = get_f64(in);
  Snapshot snap;
  snap.grid = Grid(dims, cells, length);
  snap.time = get_f64(in);
  const auto count = get_u32(in);
  if (count > 1024) throw FormatError("implausible field count");
  std::vector<std::string> names;
  for (std::uint32_t f = 0; f < count; ++f) {
    const auto len = get_u32(in);
    if (len > 4096) throw FormatError("implausible field name length");
    std::string name(len, '\0');
    read_exact(in, reinterpret_cast<unsigned char*>(name.data()), len);
    names.push_back(std::move(name));
  }
  for (auto& name : names) {
    ScalarField f(snap.grid);
    for_each_cell(snap.grid, [&](int i, int j, int k) { f(i, j, k) = get_f64(in); });
    snap.fields.emplace_back(std::move(name), std::move(f));
  }
  return snap;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_snapshot(out, snap);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_snapshot(in);
}

}  // namespace vasnet
