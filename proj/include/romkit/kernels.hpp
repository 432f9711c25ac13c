#pragma once

#include <cstddef>
#include <cstdint>

// Low-level numeric kernels used by the L1-minimization solver.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2, a vectorized variant. The top-level functions dispatch once at
// startup based on CPUID (overridable with ROMKIT_KERNELS=scalar or
// force_isa(), which the equivalence tests use). Both variants are kept
// behaviorally identical up to floating-point summation order.

namespace romkit::kernels {

enum class Isa { scalar, avx2 };

// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

// The instruction set the dispatched entry points currently use.
Isa active_isa();

// Test hook: pin the dispatched entry points to one implementation.
// Requesting avx2 on a machine without it keeps scalar and returns false.
bool force_isa(Isa isa);

// out[j - begin] = sum_k s(j,k) * v[rows[j*col_nnz + k]], s = +1/-1.
// Sign bit t of column j is bit (j*col_nnz + t) % 64 of sign_words[(j*col_nnz + t)/64];
// a set bit means negative. col_nnz must be a power of two <= 64, so one
// column's sign bits never straddle a word boundary.
void price_columns(const double* v, const std::uint16_t* rows,
                   const std::uint64_t* sign_words, std::uint32_t col_nnz,
                   std::size_t begin, std::size_t end, double* out);

// Signed gather reduction for a single sparse +-1 column against a dense
// vector: sum_k s(k) * v[rows[k]], with sign bits in the low nnz bits of
// `signs` (set = negative).
double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

// x *= a
void scale(double* x, double a, std::size_t n);

// sum_i |x[i]|
double abs_sum(const double* x, std::size_t n);

// Reference implementations, directly callable (used by the equivalence tests
// and as the fallback on non-x86 targets).
namespace scalar {
void price_columns(const double* v, const std::uint16_t* rows,
                   const std::uint64_t* sign_words, std::uint32_t col_nnz,
                   std::size_t begin, std::size_t end, double* out);
double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz);
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, double a, std::size_t n);
double abs_sum(const double* x, std::size_t n);
}  // namespace scalar

// AVX2 implementations. Present on every build; on non-x86 targets or
// CPUs without AVX2 they must not be called (avx2_available() guards).
namespace avx2 {
bool compiled_in();
void price_columns(const double* v, const std::uint16_t* rows,
                   const std::uint64_t* sign_words, std::uint32_t col_nnz,
                   std::size_t begin, std::size_t end, double* out);
double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz);
void axpy(double a, const double* x, double* y, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
void scale(double* x, double a, std::size_t n);
double abs_sum(const double* x, std::size_t n);
}  // namespace avx2

}  // namespace romkit::kernels
