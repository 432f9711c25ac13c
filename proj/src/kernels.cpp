#include "romkit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace romkit::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("ROMKIT_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2::compiled_in() && __builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

std::atomic<Isa> g_isa{detect()};

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return avx2::compiled_in() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) return false;
  g_isa.store(isa, std::memory_order_relaxed);
  return true;
}

void price_columns(const double* v, const std::uint16_t* rows,
                   const std::uint64_t* sign_words, std::uint32_t col_nnz,
                   std::size_t begin, std::size_t end, double* out) {
  if (active_isa() == Isa::avx2)
    avx2::price_columns(v, rows, sign_words, col_nnz, begin, end, out);
  else
    scalar::price_columns(v, rows, sign_words, col_nnz, begin, end, out);
}

double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz) {
  if (active_isa() == Isa::avx2) return avx2::signed_gather_sum(v, rows, signs, nnz);
  return scalar::signed_gather_sum(v, rows, signs, nnz);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  if (active_isa() == Isa::avx2)
    avx2::axpy(a, x, y, n);
  else
    scalar::axpy(a, x, y, n);
}

double dot(const double* x, const double* y, std::size_t n) {
  if (active_isa() == Isa::avx2) return avx2::dot(x, y, n);
  return scalar::dot(x, y, n);
}

void scale(double* x, double a, std::size_t n) {
  if (active_isa() == Isa::avx2)
    avx2::scale(x, a, n);
  else
    scalar::scale(x, a, n);
}

double abs_sum(const double* x, std::size_t n) {
  if (active_isa() == Isa::avx2) return avx2::abs_sum(x, n);
  return scalar::abs_sum(x, n);
}

}  // namespace romkit::kernels
