#include "romkit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define ROMKIT_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define ROMKIT_HAVE_AVX2_TU 0
#endif

namespace romkit::kernels::avx2 {

bool compiled_in() { return ROMKIT_HAVE_AVX2_TU != 0; }

#if ROMKIT_HAVE_AVX2_TU

namespace {

// kSignBits[m] flips the signs of the lanes whose bit is set in m.
alignas(32) const std::uint64_t kSignBits[16][4] = {
#define B(b) ((b) ? 0x8000000000000000ull : 0ull)
#define ROW(m) {B((m)&1), B((m)&2), B((m)&4), B((m)&8)}
    ROW(0),  ROW(1),  ROW(2),  ROW(3),  ROW(4),  ROW(5),  ROW(6),  ROW(7),
    ROW(8),  ROW(9),  ROW(10), ROW(11), ROW(12), ROW(13), ROW(14), ROW(15),
#undef ROW
#undef B
};

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

}  // namespace

double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz) {
  __m256d acc = _mm256_setzero_pd();
  std::uint32_t k = 0;
  for (; k + 4 <= nnz; k += 4) {
    __m128i idx16 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(rows + k));
    __m128i idx32 = _mm_cvtepu16_epi32(idx16);
    __m256d vals = _mm256_i32gather_pd(v, idx32, 8);
    __m256d mask = _mm256_load_pd(
        reinterpret_cast<const double*>(kSignBits[(signs >> k) & 15u]));
    acc = _mm256_add_pd(acc, _mm256_xor_pd(vals, mask));
  }
  double out = hsum(acc);
  for (; k < nnz; ++k) {
    double val = v[rows[k]];
    out += ((signs >> k) & 1u) ? -val : val;
  }
  return out;
}

void price_columns(const double* v, const std::uint16_t* rows,
                   const std::uint64_t* sign_words, std::uint32_t col_nnz,
                   std::size_t begin, std::size_t end, double* out) {
  for (std::size_t j = begin; j < end; ++j) {
    std::size_t bit = j * col_nnz;
    std::uint64_t signs = sign_words[bit >> 6] >> (bit & 63u);
    out[j - begin] = signed_gather_sum(v, rows + bit, signs, col_nnz);
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yi = _mm256_loadu_pd(y + i);
    yi = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yi);
    _mm256_storeu_pd(y + i, yi);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i] * y[i];
  return out;
}

void scale(double* x, double a, std::size_t n) {
  __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

double abs_sum(const double* x, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffll));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_and_pd(abs_mask, _mm256_loadu_pd(x + i)));
  double out = hsum(acc);
  for (; i < n; ++i) out += x[i] < 0.0 ? -x[i] : x[i];
  return out;
}

#else  // !ROMKIT_HAVE_AVX2_TU: forward to the reference path so calls stay safe.

double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz) {
  return scalar::signed_gather_sum(v, rows, signs, nnz);
}
void price_columns(const double* v, const std::uint16_t* rows,
                   const std::uint64_t* sign_words, std::uint32_t col_nnz,
                   std::size_t begin, std::size_t end, double* out) {
  scalar::price_columns(v, rows, sign_words, col_nnz, begin, end, out);
}
void axpy(double a, const double* x, double* y, std::size_t n) {
  scalar::axpy(a, x, y, n);
}
double dot(const double* x, const double* y, std::size_t n) {
  return scalar::dot(x, y, n);
}
void scale(double* x, double a, std::size_t n) { scalar::scale(x, a, n); }
double abs_sum(const double* x, std::size_t n) { return scalar::abs_sum(x, n); }

#endif

}  // namespace romkit::kernels::avx2
