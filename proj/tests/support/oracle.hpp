#pragma once

// Dense-matrix test oracle. Everything here is built straight from textbook
// definitions (explicit 2x2 matrices, Kronecker products, matrix traces) and
// deliberately shares no code with the production bit-twiddling paths it is
// used to check.

#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "romkit/pauli.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat mat_I() { return Mat::Identity(2, 2); }
inline Mat mat_X() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat mat_Y() {
  Mat m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}
inline Mat mat_Z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

// i^k
inline cd ipow(int k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Dense matrix straight from the definition i^phase * prod_q X^x Z^z,
// qubit 1 = leftmost Kronecker factor = mask bit n-1.
inline Mat pauli_matrix(const romkit::PauliString& p) {
  Mat m = Mat::Identity(1, 1);
  for (int b = p.n - 1; b >= 0; --b) {
    Mat q = Mat::Identity(2, 2);
    if ((p.x >> b) & 1u) q = mat_X();
    if ((p.z >> b) & 1u) q = q * mat_Z();
    m = kron(m, q);
  }
  return ipow(p.phase) * m;
}

// Dense matrix of the canonical Hermitian Pauli with the given index, built
// from the letter string (a second independent route).
inline Mat pauli_matrix_from_letters(int n, std::uint64_t index) {
  Mat m = Mat::Identity(1, 1);
  std::uint64_t rest = index;
  // letters of qubit 1 sit in the top base-4 digit
  for (int q = 1; q <= n; ++q) {
    int shift = 2 * (n - q);
    int code = static_cast<int>((rest >> shift) & 3u);
    switch (code) {
      case 0: m = kron(m, mat_I()); break;
      case 1: m = kron(m, mat_X()); break;
      case 2: m = kron(m, mat_Y()); break;
      default: m = kron(m, mat_Z()); break;
    }
  }
  return m;
}

inline romkit::PauliString random_pauli(int n, std::mt19937_64& rng, bool hermitian = false) {
  std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << n) - 1);
  romkit::PauliString p;
  p.n = n;
  p.x = bits(rng);
  p.z = bits(rng);
  int parity = std::popcount(p.x & p.z) & 1;
  std::uniform_int_distribution<int> ph(0, 3);
  int k = ph(rng);
  if (hermitian) k = (k & 2) | parity;
  p.phase = static_cast<std::uint8_t>(k & 3);
  return p;
}

}  // namespace oracle
