#include "insar/fft.hpp"

#include <cmath>
#include <numbers>

#include "insar/errors.hpp"
#include "insar/kernels.hpp"

namespace insar {

namespace {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(is_power_of_two(n)) {
  if (n == 0) throw InvalidInputError("FFT length must be non-zero");
  grid_ = pow2_ ? n : next_power_of_two(2 * n - 1);

  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < grid_) ++bits;
  bitrev_.resize(grid_);
  for (std::size_t i = 0; i < grid_; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
  // Each twiddle evaluated directly from its angle; recurrences drift.
  twiddle_.resize(grid_ / 2);
  for (std::size_t k = 0; k < grid_ / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid_);
    twiddle_[k] = {std::cos(angle), std::sin(angle)};
  }

  if (!pow2_) {
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      // k^2 mod 2n keeps the angle small and exact in integer arithmetic.
      const std::size_t k2 = (k * k) % (2 * n_);
      const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n_);
      chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    chirp_fft_.assign(grid_, {});
    chirp_fft_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      chirp_fft_[k] = std::conj(chirp_[k]);
      chirp_fft_[grid_ - k] = std::conj(chirp_[k]);
    }
    radix2(chirp_fft_, FftDirection::Forward);
  }
}

void FftPlan::execute(std::span<std::complex<double>> data, FftDirection dir) const {
  if (data.size() != n_) throw InvalidInputError("FFT buffer length does not match plan");
  if (pow2_) {
    radix2(data, dir);
  } else {
    bluestein(data, dir);
  }
}

void FftPlan::radix2(std::span<std::complex<double>> data, FftDirection dir) const {
  const std::size_t n = data.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  const bool inverse = dir == FftDirection::Inverse;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddle_[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> u = data[start + j];
        const std::complex<double> v = data[start + j + half];
        const std::complex<double> t{v.real() * w.real() - v.imag() * w.imag(),
                                     v.real() * w.imag() + v.imag() * w.real()};
        data[start + j] = u + t;
        data[start + j + half] = u - t;
      }
    }
  }
}

void FftPlan::bluestein(std::span<std::complex<double>> data, FftDirection dir) const {
  const bool inverse = dir == FftDirection::Inverse;
  // inverse(x) = conj(forward(conj(x)))
  std::vector<std::complex<double>> work(grid_);
  for (std::size_t k = 0; k < n_; ++k) work[k] = inverse ? std::conj(data[k]) : data[k];
  kernels::cmul(std::span<const std::complex<double>>(work.data(), n_), chirp_,
                std::span<std::complex<double>>(work.data(), n_));
  radix2(work, FftDirection::Forward);
  kernels::cmul(work, chirp_fft_, work);
  radix2(work, FftDirection::Inverse);
  const double scale = 1.0 / static_cast<double>(grid_);
  for (std::size_t k = 0; k < n_; ++k) {
    const std::complex<double> v = work[k] * scale * chirp_[k];
    data[k] = inverse ? std::conj(v) : v;
  }
}

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, FftDirection dir) {
  std::vector<std::complex<double>> out(x.begin(), x.end());
  FftPlan(x.size()).execute(out, dir);
  return out;
}

}  // namespace insar
