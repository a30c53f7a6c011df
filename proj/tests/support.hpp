#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "insar/tensor.hpp"

namespace testsupport {

using insar::cdouble;

// Independent of insar::Rng so oracles do not share code with the library.
inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(eng);
  return v;
}

inline insar::ComplexImage random_complex(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  const auto g = gaussian(2 * rows * cols, seed);
  std::vector<cdouble> d(rows * cols);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = {g[2 * i], g[2 * i + 1]};
  return {rows, cols, std::move(d)};
}

inline insar::RealTensor random_real(std::size_t rows, std::size_t cols, std::size_t ch,
                                     std::uint64_t seed) {
  return {rows, cols, ch, gaussian(rows * cols * ch, seed)};
}

// Direct O(N^2) 2-D DFT with exactly reduced twiddle angles.
inline std::vector<cdouble> naive_dft2(const std::vector<cdouble>& x, std::size_t rows,
                                       std::size_t cols, bool inverse = false) {
  std::vector<cdouble> out(rows * cols);
  const double sgn = inverse ? 1.0 : -1.0;
  for (std::size_t k = 0; k < rows; ++k)
    for (std::size_t l = 0; l < cols; ++l) {
      std::complex<long double> acc = 0;
      for (std::size_t m = 0; m < rows; ++m)
        for (std::size_t n = 0; n < cols; ++n) {
          const long double a = 2.0L * std::numbers::pi_v<long double> *
                                (static_cast<long double>((k * m) % rows) / rows +
                                 static_cast<long double>((l * n) % cols) / cols);
          const std::complex<long double> w(std::cos(a), sgn * std::sin(a));
          acc += std::complex<long double>(x[m * cols + n].real(), x[m * cols + n].imag()) * w;
        }
      if (inverse) acc /= static_cast<long double>(rows * cols);
      out[k * cols + l] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
  return out;
}

inline std::vector<cdouble> naive_dft1(const std::vector<double>& x) {
  std::vector<cdouble> v(x.begin(), x.end());
  return naive_dft2(v, 1, v.size());
}

inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto p = std::filesystem::temp_directory_path() /
           ("insar_test_" + std::to_string(::getpid()) + "_" + tag + "_" + std::to_string(counter++));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::vector<char> read_bytes(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace testsupport
