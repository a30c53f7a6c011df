#pragma once

// CTEN v1 on-disk format:
//
//   offset  size  content
//   0       5     magic 43 54 45 4E 01 ("CTEN", version 1)
//   5       1     dtype: 0x01 real f64, 0x02 complex f64 interleaved (re, im)
//   6       1     rank: 2 or 3
//   7       4*r   dims, unsigned 32-bit little-endian (rows, cols[, channels])
//   ...           payload, little-endian IEEE-754 doubles, row-major,
//                 channel-last for rank 3
//
// Complex tensors are always rank 2. Real tensors with one channel are
// written as rank 2.

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "insar/tensor.hpp"

namespace insar {

using AnyTensor = std::variant<RealTensor, ComplexImage>;

inline constexpr std::uint8_t kDtypeReal = 0x01;
inline constexpr std::uint8_t kDtypeComplex = 0x02;

std::vector<std::uint8_t> encode_tensor(const RealTensor& t);
std::vector<std::uint8_t> encode_tensor(const ComplexImage& x);
/// Throws BadMagicError, TruncatedError, UnsupportedDtypeError or FormatError.
AnyTensor decode_tensor(std::span<const std::uint8_t> bytes);

void save_tensor(const RealTensor& t, const std::filesystem::path& path);
void save_tensor(const ComplexImage& x, const std::filesystem::path& path);
/// Throws IoError when the file cannot be read, otherwise as decode_tensor.
AnyTensor load_tensor(const std::filesystem::path& path);

/// load_tensor narrowed to one kind; FormatError when the file holds the other.
RealTensor load_real(const std::filesystem::path& path);
ComplexImage load_complex(const std::filesystem::path& path);

}  // namespace insar
