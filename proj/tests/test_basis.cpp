#include <doctest.h>

#include <random>

#include "romkit/basis.hpp"
#include "romkit/density.hpp"
#include "support/clifford_oracle.hpp"

using romkit::BasisMatrix;

namespace {

// Full dense column via the independent density-operator route.
romkit::PauliVector dense_column(const romkit::StabilizerStateEnumeration& e, std::uint64_t id) {
  auto amps = romkit::state_vector_of(e.tableau_for(id));
  return romkit::pauli_vector_of(
      romkit::DensityOperator::pure(e.num_qubits(), oracle::to_vec(amps)));
}

void check_column(const BasisMatrix& b, const romkit::PauliVector& dense, std::uint64_t col) {
  int seen = 0;
  const std::uint16_t* rows = b.column(col);
  for (std::uint32_t r = 0; r < b.rows; ++r) {
    bool stored = false;
    double val = 0;
    for (int t = 0; t < b.col_nnz; ++t) {
      if (rows[t] == r) {
        stored = true;
        val = b.value_at(col, t);
        ++seen;
        break;
      }
    }
    if (stored) {
      CHECK(dense[r] == doctest::Approx(val).epsilon(1e-9));
    } else {
      CHECK(std::abs(dense[r]) < 1e-9);
    }
  }
  CHECK(seen == b.col_nnz);
}

}  // namespace

TEST_CASE("single-qubit basis matrix matches the six Bloch axis states") {
  BasisMatrix b = romkit::assemble_basis(1);
  REQUIRE(b.rows == 4);
  REQUIRE(b.cols == 6);
  REQUIRE(b.col_nnz == 2);
  // Columns in id order |0>,|1>,|+>,|->,|i+>,|i->: identity row plus one
  // signed axis row each.
  const std::uint16_t expect_row[6] = {3, 3, 1, 1, 2, 2};
  const double expect_sign[6] = {+1, -1, +1, -1, +1, -1};
  for (std::uint64_t c = 0; c < 6; ++c) {
    CHECK(b.column(c)[0] == 0);
    CHECK(b.value_at(c, 0) == +1.0);
    CHECK(b.column(c)[1] == expect_row[c]);
    CHECK(b.value_at(c, 1) == expect_sign[c]);
  }
}

TEST_CASE("two-qubit basis matches the dense expectation oracle on all columns") {
  BasisMatrix b = romkit::assemble_basis(2);
  REQUIRE(b.rows == 16);
  REQUIRE(b.cols == 60);
  REQUIRE(b.col_nnz == 4);
  romkit::StabilizerStateEnumeration e(2);
  double identity_row_sum = 0;
  for (std::uint64_t c = 0; c < b.cols; ++c) {
    check_column(b, dense_column(e, c), c);
    identity_row_sum += b.value_at(c, 0);
  }
  CHECK(identity_row_sum == doctest::Approx(60.0));
}

TEST_CASE("columns are sorted by row and start with the identity row") {
  BasisMatrix b = romkit::assemble_basis(3);
  REQUIRE(b.cols == 1080);
  for (std::uint64_t c = 0; c < b.cols; ++c) {
    const std::uint16_t* rows = b.column(c);
    CHECK(rows[0] == 0);
    CHECK(!b.sign_bit(c * 8));
    for (int t = 1; t < b.col_nnz; ++t) CHECK(rows[t] > rows[t - 1]);
  }
}

TEST_CASE("sampled three-qubit columns agree with tableau expectations") {
  BasisMatrix b = romkit::assemble_basis(3);
  romkit::StabilizerStateEnumeration e(3);
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::uint64_t> pick(0, b.cols - 1);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t c = pick(rng);
    romkit::StabilizerTableau t = e.tableau_for(c);
    for (std::uint32_t r = 0; r < b.rows; ++r) {
      int expect = t.pauli_expectation(romkit::pauli_from_index(3, r));
      double got = 0;
      const std::uint16_t* rows = b.column(c);
      for (int k = 0; k < b.col_nnz; ++k)
        if (rows[k] == r) got = b.value_at(c, k);
      CHECK(got == doctest::Approx(double(expect)));
    }
  }
}

TEST_CASE("worker partitioning does not change the assembled matrix") {
  BasisMatrix one = romkit::assemble_basis(2, false, 1);
  BasisMatrix four = romkit::assemble_basis(2, false, 4);
  CHECK(one.row_idx == four.row_idx);
  CHECK(one.sign_words == four.sign_words);
}

TEST_CASE("five-qubit assembly is gated behind an explicit confirmation") {
  CHECK_THROWS_AS(romkit::assemble_basis(5), std::runtime_error);
  CHECK_THROWS_AS(romkit::assemble_basis(0), std::invalid_argument);
  CHECK_THROWS_AS(romkit::assemble_basis(6), std::invalid_argument);
  // ~78M entries at two bytes plus sign bits.
  CHECK(romkit::basis_memory_estimate(5) > std::uint64_t{150} << 20);
  CHECK(romkit::basis_memory_estimate(5) < std::uint64_t{200} << 20);
}
