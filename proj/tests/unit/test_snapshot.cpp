#include <gtest/gtest.h>

#include <cstring>
#include <sstream>

#include "vasnet/errors.hpp"
#include "vasnet/snapshot.hpp"

using namespace vasnet;

namespace {

Snapshot sample() {
  Grid g(2, {3, 2, 1}, {0.3, 0.25, 1.0});
  ScalarField a(g), b(g);
  double v = 0.5;
  for_each_cell(g, [&](int i, int j, int k) {
    a(i, j, k) = v;
    b(i, j, k) = -v * 1e-300;
    v *= 3.0;
  });
  return Snapshot{g, 12.5, {{"n", a}, {"c", b}}};
}

std::uint32_t u32_at(const std::string& s, std::size_t off) {
  std::uint32_t x = 0;
  for (int b = 3; b >= 0; --b) x = (x << 8) | static_cast<unsigned char>(s[off + b]);
  return x;
}

}  // namespace

TEST(Snapshot, RoundTripIsBitExact) {
  const Snapshot s = sample();
  std::stringstream buf;
  write_snapshot(buf, s);
  const Snapshot r = read_snapshot(buf);
  EXPECT_EQ(r.grid, s.grid);
  EXPECT_EQ(r.time, s.time);
  ASSERT_EQ(r.fields.size(), 2u);
  EXPECT_EQ(r.fields[1].first, "c");
  const auto x = s.field("c").interior(), y = r.field("c").interior();
  EXPECT_EQ(std::memcmp(x.data(), y.data(), x.size() * 8), 0);
}

TEST(Snapshot, HeaderLayoutIsLittleEndian) {
  std::stringstream buf;
  write_snapshot(buf, sample());
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 4), "VNF1");
  EXPECT_EQ(u32_at(bytes, 4), 2u);   // dims
  EXPECT_EQ(u32_at(bytes, 8), 3u);   // N_x
  EXPECT_EQ(u32_at(bytes, 12), 2u);  // N_y
  // L_x = 0.3 as little-endian IEEE double
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(bytes[16 + b]);
  double lx;
  std::memcpy(&lx, &bits, 8);
  EXPECT_EQ(lx, 0.3);
  // header + names + 2 fields * 6 values
  const std::size_t header = 4 + 4 + 2 * 4 + 2 * 8 + 8 + 4 + (4 + 1) * 2;
  EXPECT_EQ(bytes.size(), header + 2 * 6 * 8);
  // first value of field n is 0.5, x fastest
  double first;
  std::uint64_t fb = 0;
  for (int b = 7; b >= 0; --b) fb = (fb << 8) | static_cast<unsigned char>(bytes[header + b]);
  std::memcpy(&first, &fb, 8);
  EXPECT_EQ(first, 0.5);
}

TEST(Snapshot, RejectsBadMagic) {
  std::stringstream buf;
  write_snapshot(buf, sample());
  std::string bytes = buf.str();
  bytes[3] = '2';
  std::stringstream bad(bytes);
  EXPECT_THROW(read_snapshot(bad), FormatError);
}

TEST(Snapshot, RejectsTruncatedFile) {
  std::stringstream buf;
  write_snapshot(buf, sample());
  std::string bytes = buf.str();
  std::stringstream bad(bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(read_snapshot(bad), FormatError);
}

TEST(Snapshot, MissingFieldThrows) {
  EXPECT_THROW(sample().field("p"), FormatError);
}
