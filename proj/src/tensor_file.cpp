#include "insar/tensor_file.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "insar/errors.hpp"

namespace insar {

namespace {

constexpr std::array<std::uint8_t, 5> kMagic{0x43, 0x54, 0x45, 0x4E, 0x01};

void put_u32(std::vector<std::uint8_t>& out, std::size_t value) {
  if (value > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidInputError("dimension does not fit the 32-bit CTEN header");
  }
  const auto v = static_cast<std::uint32_t>(value);
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(std::vector<std::uint8_t>& out, double value) {
  const auto bits = std::bit_cast<std::uint64_t>(value);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t pos) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(in[pos + b]) << (8 * b);
  return v;
}

double get_f64(std::span<const std::uint8_t> in, std::size_t pos) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(in[pos + b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

std::vector<std::uint8_t> header(std::uint8_t dtype, std::span<const std::size_t> dims) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.push_back(dtype);
  out.push_back(static_cast<std::uint8_t>(dims.size()));
  for (auto d : dims) put_u32(out, d);
  return out;
}

void write_file(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const RealTensor& t) {
  std::vector<std::size_t> dims{t.rows(), t.cols()};
  if (t.channels() != 1) dims.push_back(t.channels());
  auto out = header(kDtypeReal, dims);
  out.reserve(out.size() + 8 * t.size());
  for (double v : t.data()) put_f64(out, v);
  return out;
}

std::vector<std::uint8_t> encode_tensor(const ComplexImage& x) {
  const std::array<std::size_t, 2> dims{x.rows(), x.cols()};
  auto out = header(kDtypeComplex, dims);
  out.reserve(out.size() + 16 * x.size());
  for (const auto& v : x.data()) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  return out;
}

AnyTensor decode_tensor(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size()) throw TruncatedError("file shorter than the CTEN magic");
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw BadMagicError("not a CTEN v1 file (bad magic)");
  }
  if (bytes.size() < 7) throw TruncatedError("CTEN header truncated");
  const std::uint8_t dtype = bytes[5];
  const std::uint8_t rank = bytes[6];
  if (dtype != kDtypeReal && dtype != kDtypeComplex) {
    throw UnsupportedDtypeError("unsupported CTEN dtype code " + std::to_string(dtype));
  }
  if (rank != 2 && rank != 3) throw FormatError("unsupported CTEN rank " + std::to_string(rank));
  if (dtype == kDtypeComplex && rank != 2) throw FormatError("complex CTEN tensors must be rank 2");

  const std::size_t header_len = 7 + 4 * std::size_t{rank};
  if (bytes.size() < header_len) throw TruncatedError("CTEN dimension header truncated");
  std::array<std::size_t, 3> dims{1, 1, 1};
  std::size_t count = 1;
  for (std::size_t i = 0; i < rank; ++i) {
    dims[i] = get_u32(bytes, 7 + 4 * i);
    if (dims[i] == 0) throw FormatError("CTEN dimension is zero");
    count *= dims[i];
    // Every sample needs at least 8 payload bytes; also bounds the product.
    if (count > bytes.size()) throw TruncatedError("CTEN payload truncated");
  }
  const std::size_t sample_bytes = dtype == kDtypeComplex ? 16 : 8;
  const std::size_t payload = bytes.size() - header_len;
  if (payload < count * sample_bytes) throw TruncatedError("CTEN payload truncated");
  if (payload > count * sample_bytes) throw FormatError("trailing bytes after CTEN payload");

  try {
    if (dtype == kDtypeComplex) {
      std::vector<cdouble> data(count);
      for (std::size_t i = 0; i < count; ++i) {
        data[i] = {get_f64(bytes, header_len + 16 * i), get_f64(bytes, header_len + 16 * i + 8)};
      }
      return ComplexImage(dims[0], dims[1], std::move(data));
    }
    std::vector<double> data(count);
    for (std::size_t i = 0; i < count; ++i) data[i] = get_f64(bytes, header_len + 8 * i);
    return RealTensor(dims[0], dims[1], dims[2], std::move(data));
  } catch (const InvalidInputError& e) {
    throw FormatError(std::string("invalid CTEN payload: ") + e.what());
  }
}

void save_tensor(const RealTensor& t, const std::filesystem::path& path) {
  write_file(encode_tensor(t), path);
}

void save_tensor(const ComplexImage& x, const std::filesystem::path& path) {
  write_file(encode_tensor(x), path);
}

AnyTensor load_tensor(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                        std::istreambuf_iterator<char>());
  if (f.bad()) throw IoError("read from '" + path.string() + "' failed");
  return decode_tensor(bytes);
}

RealTensor load_real(const std::filesystem::path& path) {
  auto t = load_tensor(path);
  if (auto* r = std::get_if<RealTensor>(&t)) return std::move(*r);
  throw FormatError("'" + path.string() + "' holds a complex tensor, expected real");
}

ComplexImage load_complex(const std::filesystem::path& path) {
  auto t = load_tensor(path);
  if (auto* c = std::get_if<ComplexImage>(&t)) return std::move(*c);
  throw FormatError("'" + path.string() + "' holds a real tensor, expected complex");
}

}  // namespace insar
