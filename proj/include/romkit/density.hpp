#pragma once

#include <Eigen/Dense>
#include <complex>

#include "romkit/pauli.hpp"

namespace romkit {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Dense operators are capped here; everything larger must go through the
// tableau or blocked paths.
inline constexpr int kMaxDenseQubits = 5;

// Trace-one Hermitian PSD matrix on n qubits. Construction validates unless
// told otherwise (validate=false is for callers that just proved the
// invariants, e.g. channel application).
struct DensityOperator {
  int n = 0;
  CMat matrix;

  static DensityOperator from_matrix(int n, CMat m, bool validate = true);
  static DensityOperator pure(int n, const CVec& psi);

  Eigen::Index dim() const { return matrix.rows(); }
  double purity() const { return (matrix * matrix).trace().real(); }
};

// Tr(P rho) using the one-nonzero-per-row structure of P; O(2^n).
std::complex<double> pauli_trace(const PauliString& p, const CMat& m);

// b_j = Tr(P_j rho) over all 4^n canonical Hermitian Paulis.
PauliVector pauli_vector_of(const DensityOperator& rho);

// Inverse transform rho = 2^{-n} sum_j b_j P_j.
DensityOperator density_from_pauli_vector(int n, const PauliVector& b, bool validate = true);

}  // namespace romkit
