#include <doctest.h>

#include <algorithm>
#include <random>

#include "romkit/pauli.hpp"
#include "support/oracle.hpp"

using romkit::PauliString;

namespace {

bool mat_close(const oracle::Mat& a, const oracle::Mat& b, double tol = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

TEST_CASE("single-qubit canonical order is I, X, Y, Z") {
  CHECK(romkit::pauli_index_to_string(1, 0) == "I");
  CHECK(romkit::pauli_index_to_string(1, 1) == "X");
  CHECK(romkit::pauli_index_to_string(1, 2) == "Y");
  CHECK(romkit::pauli_index_to_string(1, 3) == "Z");
  CHECK(romkit::pauli_from_index(3, 0).is_identity());
}

TEST_CASE("canonical index order is lexicographic with qubit 1 most significant") {
  for (int n = 1; n <= 3; ++n) {
    std::string prev;
    for (std::uint64_t j = 0; j < (1u << (2 * n)); ++j) {
      std::string s = romkit::pauli_index_to_string(n, j);
      if (j > 0) CHECK(prev < s);  // 'I' < 'X' < 'Y' < 'Z' holds in ASCII
      prev = s;
    }
  }
}

TEST_CASE("index and string round-trips, exhaustive for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    for (std::uint64_t j = 0; j < (1u << (2 * n)); ++j) {
      PauliString p = romkit::pauli_from_index(n, j);
      CHECK(p.is_hermitian());
      auto ip = romkit::pauli_index_signed(p);
      CHECK(ip.index == j);
      CHECK(ip.sign == 1);
      std::string s = romkit::pauli_index_to_string(n, j);
      CHECK(romkit::pauli_from_string(s) == p);
      CHECK(romkit::to_string(p) == "+" + s);
      // canonical letters match the dense definition
      CHECK(mat_close(oracle::pauli_matrix(p), oracle::pauli_matrix_from_letters(n, j)));
    }
  }
}

TEST_CASE("hand-checked products") {
  auto X = romkit::pauli_from_string("X");
  auto Y = romkit::pauli_from_string("Y");
  auto Z = romkit::pauli_from_string("Z");
  CHECK(romkit::to_string(romkit::pauli_multiply(X, Y)) == "+iZ");
  CHECK(romkit::to_string(romkit::pauli_multiply(Y, X)) == "-iZ");
  CHECK(romkit::to_string(romkit::pauli_multiply(X, Z)) == "-iY");
  CHECK(romkit::pauli_multiply(X, X).is_identity());
  CHECK_FALSE(romkit::pauli_commutes(X, Z));
  CHECK(romkit::pauli_commutes(romkit::pauli_from_string("XX"), romkit::pauli_from_string("ZZ")));
}

TEST_CASE("multiplication, commutation and tensor agree with dense matrices") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    PauliString a = oracle::random_pauli(n, rng);
    PauliString b = oracle::random_pauli(n, rng);
    oracle::Mat ma = oracle::pauli_matrix(a), mb = oracle::pauli_matrix(b);

    CHECK(mat_close(oracle::pauli_matrix(romkit::pauli_multiply(a, b)), ma * mb));
    bool dense_commutes = mat_close(ma * mb, mb * ma);
    CHECK(romkit::pauli_commutes(a, b) == dense_commutes);

    PauliString c = oracle::random_pauli(1 + static_cast<int>(rng() % 2), rng);
    CHECK(mat_close(oracle::pauli_matrix(romkit::pauli_tensor(a, c)),
                    oracle::kron(ma, oracle::pauli_matrix(c))));
  }
}

TEST_CASE("hermiticity matches the dense adjoint") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    PauliString p = oracle::random_pauli(2, rng);
    oracle::Mat m = oracle::pauli_matrix(p);
    CHECK(p.is_hermitian() == mat_close(m, m.adjoint()));
  }
}

TEST_CASE("string parsing accepts phase prefixes and rejects junk") {
  CHECK(romkit::pauli_from_string("-iY").phase == 0);  // -i * iXZ = XZ
  CHECK(romkit::pauli_from_string("+XI").n == 2);
  CHECK_THROWS_AS((void)romkit::pauli_from_string("XQ"), std::invalid_argument);
  CHECK_THROWS_AS((void)romkit::pauli_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS((void)romkit::pauli_from_index(1, 4), std::invalid_argument);
}

TEST_CASE("size mismatches are rejected") {
  auto a = romkit::pauli_from_string("XX");
  auto b = romkit::pauli_from_string("X");
  CHECK_THROWS_AS((void)romkit::pauli_multiply(a, b), std::invalid_argument);
}
