#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "doctest.h"
#include "insar/errors.hpp"
#include "insar/raster.hpp"
#include "insar/tensor_file.hpp"
#include "support.hpp"

using namespace insar;

namespace {

std::vector<std::uint8_t> header(std::uint8_t dtype, std::uint8_t rank, std::vector<std::uint32_t> dims) {
  std::vector<std::uint8_t> b{0x43, 0x54, 0x45, 0x4E, 0x01, dtype, rank};
  for (auto d : dims)
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(d >> (8 * i)));
  return b;
}

void append_f64(std::vector<std::uint8_t>& b, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

}  // namespace

TEST_CASE("CTEN byte layout of a small real tensor") {
  RealTensor t(1, 2, 1, {1.0, -2.0});
  auto want = header(1, 2, {1, 2});
  append_f64(want, 1.0);
  append_f64(want, -2.0);
  CHECK(encode_tensor(t) == want);

  RealTensor t3(1, 1, 2, {0.5, 0.25});
  auto want3 = header(1, 3, {1, 1, 2});
  append_f64(want3, 0.5);
  append_f64(want3, 0.25);
  CHECK(encode_tensor(t3) == want3);

  ComplexImage x(1, 1, {{3.0, -4.0}});
  auto wantc = header(2, 2, {1, 1});
  append_f64(wantc, 3.0);
  append_f64(wantc, -4.0);
  CHECK(encode_tensor(x) == wantc);
}

TEST_CASE("save and load round trips are bit-identical") {
  const auto dir = testsupport::scratch_dir("cten");
  const auto x = testsupport::random_complex(128, 128, 5);
  save_tensor(x, dir / "x.cten");
  CHECK(load_complex(dir / "x.cten") == x);

  const auto t = testsupport::random_real(7, 9, 3, 6);
  save_tensor(t, dir / "t.cten");
  CHECK(load_real(dir / "t.cten") == t);
  CHECK(std::holds_alternative<RealTensor>(load_tensor(dir / "t.cten")));

  RealTensor special(1, 3, 1, {-0.0, std::numeric_limits<double>::denorm_min(), 1e308});
  CHECK(std::get<RealTensor>(decode_tensor(encode_tensor(special))) == special);
  std::filesystem::remove_all(dir);
}

TEST_CASE("malformed files raise distinct errors") {
  const auto good = encode_tensor(RealTensor(2, 2, 1, {1, 2, 3, 4}));
  auto bad = good;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_tensor(bad), BadMagicError);
  CHECK_THROWS_AS(decode_tensor(std::span(good).first(good.size() - 3)), TruncatedError);
  CHECK_THROWS_AS(decode_tensor(std::span(good).first(3)), TruncatedError);
  CHECK_THROWS_AS(decode_tensor(std::span(good).first(9)), TruncatedError);

  auto dtype = good;
  dtype[5] = 7;
  CHECK_THROWS_AS(decode_tensor(dtype), UnsupportedDtypeError);
  auto rank = good;
  rank[6] = 4;
  CHECK_THROWS_AS(decode_tensor(rank), FormatError);
  auto trailing = good;
  trailing.push_back(0);
  CHECK_THROWS_AS(decode_tensor(trailing), FormatError);
  auto zero = header(1, 2, {0, 2});
  CHECK_THROWS_AS(decode_tensor(zero), FormatError);
  auto nan = header(1, 2, {1, 1});
  append_f64(nan, std::numeric_limits<double>::quiet_NaN());
  CHECK_THROWS_AS(decode_tensor(nan), FormatError);
  auto huge = header(1, 2, {0xFFFFFFFFu, 0xFFFFFFFFu});
  CHECK_THROWS_AS(decode_tensor(huge), TruncatedError);
  auto complex3 = header(2, 3, {1, 1, 1});
  append_f64(complex3, 0);
  append_f64(complex3, 0);
  CHECK_THROWS_AS(decode_tensor(complex3), FormatError);

  CHECK_THROWS_AS(load_tensor("/nonexistent/dir/x.cten"), IoError);
  const auto dir = testsupport::scratch_dir("kind");
  save_tensor(RealTensor(1, 1), dir / "r.cten");
  CHECK_THROWS_AS(load_complex(dir / "r.cten"), FormatError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("quantization rules") {
  RealTensor flat(2, 3, 1, std::vector<double>(6, 0.5));
  for (auto p : quantize(flat, Normalization::minmax())) CHECK(p == 128);

  RealTensor ramp(1, 11, 1);
  for (std::size_t k = 0; k < 11; ++k) ramp(0, k) = double(k) / 10.0;
  const auto px = quantize(ramp, Normalization::fixed(0, 1));
  for (std::size_t k = 0; k < 11; ++k) CHECK(int(px[k]) == int(std::floor(255.0 * ramp(0, k) + 0.5)));

  RealTensor clip(1, 2, 1, {-5.0, 5.0});
  const auto pc = quantize(clip, Normalization::fixed(0, 1));
  CHECK(pc[0] == 0);
  CHECK(pc[1] == 255);

  CHECK_THROWS_AS(quantize(RealTensor(1, 1, 2), Normalization::minmax()), InvalidInputError);
}

TEST_CASE("PGM and PPM files") {
  const auto dir = testsupport::scratch_dir("raster");
  RealTensor rgb(1, 2, 3, {1, 0, 0, 0, 0, 1});
  export_image(rgb, dir / "c.ppm", Normalization::fixed(0, 1));
  const auto bytes = testsupport::read_bytes(dir / "c.ppm");
  const std::string head = "P6\n2 1\n255\n";
  REQUIRE(bytes.size() == head.size() + 6);
  CHECK(std::string(bytes.begin(), bytes.begin() + head.size()) == head);
  const std::vector<unsigned char> px(bytes.begin() + head.size(), bytes.end());
  CHECK(px == std::vector<unsigned char>{255, 0, 0, 0, 0, 255});

  export_image(RealTensor(3, 2), dir / "g.pgm");
  const auto g = testsupport::read_bytes(dir / "g.pgm");
  CHECK(std::string(g.begin(), g.begin() + 11) == "P5\n2 3\n255\n");
  CHECK(g.size() == 11 + 6);
  CHECK_THROWS_AS(export_image(rgb, "/nonexistent/dir/c.ppm"), IoError);
  std::filesystem::remove_all(dir);
}
