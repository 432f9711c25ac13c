#include <doctest.h>

#include <random>
#include <vector>

#include "romkit/kernels.hpp"

namespace rk = romkit::kernels;

namespace {

struct ColumnSet {
  std::vector<std::uint16_t> rows;
  std::vector<std::uint64_t> sign_words;
  std::uint32_t col_nnz;
  std::size_t cols;
};

ColumnSet random_columns(std::mt19937_64& rng, std::uint32_t col_nnz,
                         std::size_t cols, std::uint16_t row_count) {
  ColumnSet cs;
  cs.col_nnz = col_nnz;
  cs.cols = cols;
  cs.rows.resize(cols * col_nnz);
  cs.sign_words.assign((cols * col_nnz + 63) / 64, 0);
  std::uniform_int_distribution<int> row(0, row_count - 1);
  std::uniform_int_distribution<int> bit(0, 1);
  for (std::size_t t = 0; t < cs.rows.size(); ++t) {
    cs.rows[t] = static_cast<std::uint16_t>(row(rng));
    if (bit(rng)) cs.sign_words[t / 64] |= std::uint64_t{1} << (t % 64);
  }
  return cs;
}

// Naive re-computation, independent of both production variants.
double naive_column_sum(const ColumnSet& cs, const std::vector<double>& v, std::size_t j) {
  double acc = 0;
  for (std::uint32_t k = 0; k < cs.col_nnz; ++k) {
    std::size_t t = j * cs.col_nnz + k;
    bool neg = (cs.sign_words[t / 64] >> (t % 64)) & 1u;
    acc += neg ? -v[cs.rows[t]] : v[cs.rows[t]];
  }
  return acc;
}

}  // namespace

TEST_CASE("scalar price_columns matches a naive reference") {
  std::mt19937_64 rng(7);
  std::vector<double> v(512);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  for (auto& e : v) e = val(rng);
  for (std::uint32_t nnz : {2u, 4u, 8u, 16u, 32u}) {
    auto cs = random_columns(rng, nnz, 257, 512);
    std::vector<double> out(cs.cols);
    rk::scalar::price_columns(v.data(), cs.rows.data(), cs.sign_words.data(),
                              cs.col_nnz, 0, cs.cols, out.data());
    for (std::size_t j = 0; j < cs.cols; ++j)
      CHECK(out[j] == doctest::Approx(naive_column_sum(cs, v, j)).epsilon(1e-13));
  }
}

TEST_CASE("avx2 variants agree with scalar reference") {
  if (!rk::avx2_available()) {
    MESSAGE("AVX2 not available on this machine; skipping equivalence checks");
    return;
  }
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-3.0, 3.0);

  std::vector<double> v(1024);
  for (auto& e : v) e = val(rng);

  for (std::uint32_t nnz : {2u, 4u, 8u, 16u, 32u}) {
    auto cs = random_columns(rng, nnz, 513, 1024);
    std::vector<double> a(cs.cols), b(cs.cols);
    rk::scalar::price_columns(v.data(), cs.rows.data(), cs.sign_words.data(),
                              cs.col_nnz, 0, cs.cols, a.data());
    rk::avx2::price_columns(v.data(), cs.rows.data(), cs.sign_words.data(),
                            cs.col_nnz, 0, cs.cols, b.data());
    for (std::size_t j = 0; j < cs.cols; ++j)
      CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
  }

  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    std::vector<double> x(n), y(n), y2;
    for (auto& e : x) e = val(rng);
    for (auto& e : y) e = val(rng);
    y2 = y;
    CHECK(rk::scalar::dot(x.data(), y.data(), n) ==
          doctest::Approx(rk::avx2::dot(x.data(), y.data(), n)).epsilon(1e-12));
    CHECK(rk::scalar::abs_sum(x.data(), n) ==
          doctest::Approx(rk::avx2::abs_sum(x.data(), n)).epsilon(1e-12));
    rk::scalar::axpy(0.77, x.data(), y.data(), n);
    rk::avx2::axpy(0.77, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y[i] == doctest::Approx(y2[i]).epsilon(1e-12));
    auto x2 = x;
    rk::scalar::scale(x.data(), -1.5, n);
    rk::avx2::scale(x2.data(), -1.5, n);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == x2[i]);
  }
}

TEST_CASE("isa dispatch can be pinned and restored") {
  rk::Isa original = rk::active_isa();
  CHECK(rk::force_isa(rk::Isa::scalar));
  CHECK(rk::active_isa() == rk::Isa::scalar);
  if (rk::avx2_available()) {
    CHECK(rk::force_isa(rk::Isa::avx2));
    CHECK(rk::active_isa() == rk::Isa::avx2);
  } else {
    CHECK_FALSE(rk::force_isa(rk::Isa::avx2));
    CHECK(rk::active_isa() == rk::Isa::scalar);
  }
  rk::force_isa(original);
}
