#include "romkit/density.hpp"

#include <fmt/format.h>

#include <bit>
#include <stdexcept>

namespace romkit {

namespace {

const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

}  // namespace

DensityOperator DensityOperator::from_matrix(int n, CMat m, bool validate) {
  if (n < 1 || n > kMaxDenseQubits)
    throw std::invalid_argument(
        fmt::format("density operator qubit count {} out of range [1, {}]", n, kMaxDenseQubits));
  Eigen::Index dim = Eigen::Index{1} << n;
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument(fmt::format("density matrix must be {}x{}, got {}x{}", dim, dim,
                                            m.rows(), m.cols()));
  if (validate) {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m.trace() - std::complex<double>{1, 0}) > 1e-12)
      throw std::invalid_argument(
          fmt::format("density matrix trace is {}, expected 1", m.trace().real()));
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
      throw std::invalid_argument(
          fmt::format("density matrix has negative eigenvalue {}", es.eigenvalues().minCoeff()));
  }
  DensityOperator rho;
  rho.n = n;
  rho.matrix = std::move(m);
  return rho;
}

DensityOperator DensityOperator::pure(int n, const CVec& psi) {
  if (n < 1 || n > kMaxDenseQubits)
    throw std::invalid_argument(
        fmt::format("density operator qubit count {} out of range [1, {}]", n, kMaxDenseQubits));
  Eigen::Index dim = Eigen::Index{1} << n;
  if (psi.size() != dim)
    throw std::invalid_argument(
        fmt::format("state vector must have {} amplitudes, got {}", dim, psi.size()));
  double nrm = psi.norm();
  if (nrm < 1e-12) throw std::invalid_argument("state vector is numerically zero");
  CVec unit = psi / nrm;
  DensityOperator rho;
  rho.n = n;
  rho.matrix = unit * unit.adjoint();
  return rho;
}

std::complex<double> pauli_trace(const PauliString& p, const CMat& m) {
  std::uint64_t dim = std::uint64_t{1} << p.n;
  if (m.rows() != static_cast<Eigen::Index>(dim))
    throw std::invalid_argument("pauli_trace: dimension mismatch");
  // P|t> = i^phase (-1)^(z.t) |t^x>, so Tr(P rho) picks one entry per column.
  std::complex<double> acc{0, 0};
  for (std::uint64_t t = 0; t < dim; ++t) {
    double s = parity(p.z & t) ? -1.0 : 1.0;
    acc += s * m(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t ^ p.x));
  }
  return kIPow[p.phase & 3] * acc;
}

PauliVector pauli_vector_of(const DensityOperator& rho) {
  std::uint64_t count = std::uint64_t{1} << (2 * rho.n);
  PauliVector b(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    std::complex<double> t = pauli_trace(pauli_from_index(rho.n, j), rho.matrix);
    if (std::abs(t.imag()) > 1e-9)
      throw std::logic_error("pauli_vector_of: complex trace against a Hermitian Pauli");
    b[j] = t.real();
  }
  return b;
}

DensityOperator density_from_pauli_vector(int n, const PauliVector& b, bool validate) {
  std::uint64_t count = std::uint64_t{1} << (2 * n);
  if (b.size() != count)
    throw std::invalid_argument(
        fmt::format("pauli vector must have {} entries, got {}", count, b.size()));
  std::uint64_t dim = std::uint64_t{1} << n;
  CMat m = CMat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  double scale = 1.0 / static_cast<double>(dim);
  for (std::uint64_t j = 0; j < count; ++j) {
    if (b[j] == 0.0) continue;
    PauliString p = pauli_from_index(n, j);
    std::complex<double> w = kIPow[p.phase & 3] * (scale * b[j]);
    for (std::uint64_t t = 0; t < dim; ++t) {
      double s = parity(p.z & t) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(t ^ p.x), static_cast<Eigen::Index>(t)) += s * w;
    }
  }
  return DensityOperator::from_matrix(n, std::move(m), validate);
}

}  // namespace romkit
