#include <cstdlib>
#include <string>

#include "insar/errors.hpp"
#include "insar/kernels.hpp"
#include "kernels_impl.hpp"

namespace insar::kernels {

namespace {

const KernelTable kScalar{
    Isa::Scalar,          detail::axpy_scalar,     detail::add_scalar,
    detail::cmul_scalar,  detail::conj_mul_scalar, detail::norm_sq_scalar,
};

#if defined(INSAR_HAVE_AVX2)
const KernelTable kAvx2{
    Isa::Avx2,          detail::axpy_avx2,     detail::add_avx2,
    detail::cmul_avx2,  detail::conj_mul_avx2, detail::norm_sq_avx2,
};
#endif

const KernelTable& select() {
  const char* env = std::getenv("INSAR_KERNELS");
  const std::string want = env ? env : "";
  if (want == "scalar") return kScalar;
  const KernelTable* avx2 = avx2_table();
  if (want == "avx2") {
    if (avx2 && cpu_supports(Isa::Avx2)) return *avx2;
    return kScalar;
  }
  if (avx2 && cpu_supports(Isa::Avx2)) return *avx2;
  return kScalar;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidInputError("kernel operands differ in length");
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(INSAR_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(INSAR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

void add(std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size());
  active().add(x.data(), y.data(), x.size());
}

void cmul(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
          std::span<std::complex<double>> out) {
  check_sizes(a.size(), b.size());
  check_sizes(a.size(), out.size());
  active().cmul(a.data(), b.data(), out.data(), a.size());
}

void conj_mul(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b,
              std::span<std::complex<double>> out) {
  check_sizes(a.size(), b.size());
  check_sizes(a.size(), out.size());
  active().conj_mul(a.data(), b.data(), out.data(), a.size());
}

void norm_sq(std::span<const std::complex<double>> a, std::span<double> out) {
  check_sizes(a.size(), out.size());
  active().norm_sq(a.data(), out.data(), a.size());
}

}  // namespace insar::kernels
