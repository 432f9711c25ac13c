#include "romkit/kernels.hpp"

namespace romkit::kernels::scalar {

double signed_gather_sum(const double* v, const std::uint16_t* rows,
                         std::uint64_t signs, std::uint32_t nnz) {
  double acc = 0.0;
  for (std::uint32_t k = 0; k < nnz; ++k) {
    double val = v[rows[k]];
    acc += ((signs >> k) & 1u) ? -val : val;
  }
  return acc;
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
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void scale(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double abs_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] < 0.0 ? -x[i] : x[i];
  return acc;
}

}  // namespace romkit::kernels::scalar
