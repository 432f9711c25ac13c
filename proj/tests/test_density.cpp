#include <doctest.h>

#include <random>

#include "romkit/density.hpp"
#include "support/oracle.hpp"

using romkit::DensityOperator;

namespace {

// Random full-rank density matrix via a Gaussian square root.
romkit::CMat random_density(int n, std::mt19937_64& rng) {
  Eigen::Index dim = Eigen::Index{1} << n;
  std::normal_distribution<double> g;
  romkit::CMat a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = std::complex<double>{g(rng), g(rng)};
  romkit::CMat rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("pauli_trace equals the dense matrix trace") {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 3; ++n) {
    romkit::CMat rho = random_density(n, rng);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << (2 * n)); ++j) {
      romkit::PauliString p = romkit::pauli_from_index(n, j);
      std::complex<double> direct = (oracle::pauli_matrix(p) * rho).trace();
      std::complex<double> fast = romkit::pauli_trace(p, rho);
      CHECK(std::abs(direct - fast) < 1e-12);
    }
  }
}

TEST_CASE("pauli vector of the T-magic state is (1, s, s, 0)") {
  romkit::CVec psi(2);
  psi << 1.0, std::polar(1.0, M_PI / 4);
  DensityOperator rho = DensityOperator::pure(1, psi);
  auto b = romkit::pauli_vector_of(rho);
  REQUIRE(b.size() == 4);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b[1] == doctest::Approx(s).epsilon(1e-12));
  CHECK(b[2] == doctest::Approx(s).epsilon(1e-12));
  CHECK(std::abs(b[3]) < 1e-12);
}

TEST_CASE("maximally mixed state has a delta pauli vector") {
  DensityOperator rho = DensityOperator::from_matrix(2, romkit::CMat::Identity(4, 4) / 4.0);
  auto b = romkit::pauli_vector_of(rho);
  CHECK(b[0] == doctest::Approx(1.0));
  for (std::size_t j = 1; j < b.size(); ++j) CHECK(std::abs(b[j]) < 1e-14);
}

TEST_CASE("pauli vector round-trips through reconstruction") {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      DensityOperator rho = DensityOperator::from_matrix(n, random_density(n, rng));
      auto b = romkit::pauli_vector_of(rho);
      CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-12));
      for (double v : b) CHECK(std::abs(v) <= 1.0 + 1e-12);
      DensityOperator back = romkit::density_from_pauli_vector(n, b);
      CHECK((back.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("pauli vector is affine-linear in the state") {
  std::mt19937_64 rng(33);
  romkit::CMat r1 = random_density(2, rng), r2 = random_density(2, rng);
  double alpha = 0.37;
  auto b1 = romkit::pauli_vector_of(DensityOperator::from_matrix(2, r1));
  auto b2 = romkit::pauli_vector_of(DensityOperator::from_matrix(2, r2));
  auto bm = romkit::pauli_vector_of(DensityOperator::from_matrix(2, alpha * r1 + (1 - alpha) * r2));
  for (std::size_t j = 0; j < bm.size(); ++j)
    CHECK(bm[j] == doctest::Approx(alpha * b1[j] + (1 - alpha) * b2[j]).epsilon(1e-12));
}

TEST_CASE("construction validates the density invariants") {
  romkit::CMat m(2, 2);
  m << 1, std::complex<double>{0, 0.5}, std::complex<double>{0, 0.5}, 0;  // not Hermitian
  CHECK_THROWS_AS(DensityOperator::from_matrix(1, m), std::invalid_argument);

  m << 0.7, 0, 0, 0.7;  // wrong trace
  CHECK_THROWS_AS(DensityOperator::from_matrix(1, m), std::invalid_argument);

  m << 2, 0, 0, -1;  // negative eigenvalue
  CHECK_THROWS_AS(DensityOperator::from_matrix(1, m), std::invalid_argument);

  CHECK_THROWS_AS(DensityOperator::from_matrix(2, romkit::CMat::Identity(2, 2)),
                  std::invalid_argument);  // size mismatch
  CHECK_THROWS_AS(DensityOperator::from_matrix(6, romkit::CMat::Identity(64, 64) / 64.0),
                  std::invalid_argument);  // beyond dense cap

  romkit::CVec z = romkit::CVec::Zero(2);
  CHECK_THROWS_AS(DensityOperator::pure(1, z), std::invalid_argument);
}

TEST_CASE("pure states normalize and have unit purity") {
  romkit::CVec psi(4);
  psi << 3, 0, 4, 0;  // unnormalized on purpose
  DensityOperator rho = DensityOperator::pure(2, psi);
  CHECK(rho.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rho.purity() == doctest::Approx(1.0).epsilon(1e-10));
}
