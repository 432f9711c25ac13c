#pragma once

#include <cstdint>
#include <vector>

#include "romkit/enumerate.hpp"

namespace romkit {

// Sparse column-major matrix of stabilizer-state Pauli expectations:
// entry (j, i) = <P_j> on enumerated state i, values in {-1, 0, +1}.
// Every column holds exactly 2^n nonzeros (the stabilizer group of the
// state), stored as sorted row indices plus one packed sign bit per entry
// (bit set = -1). Row 0 is the identity Pauli, so the first entry of every
// column is row 0 with sign +1.
struct BasisMatrix {
  int n = 0;
  std::uint32_t rows = 0;  // 4^n
  std::uint64_t cols = 0;  // stabilizer_state_count(n)
  int col_nnz = 0;         // 2^n
  std::vector<std::uint16_t> row_idx;     // cols * col_nnz
  std::vector<std::uint64_t> sign_words;  // entry e -> bit e % 64 of word e / 64

  const std::uint16_t* column(std::uint64_t col) const {
    return row_idx.data() + col * static_cast<std::uint64_t>(col_nnz);
  }
  bool sign_bit(std::uint64_t entry) const {
    return (sign_words[entry >> 6] >> (entry & 63)) & 1;
  }
  // All sign bits of one column in the low col_nnz bits (columns never
  // straddle a word because col_nnz divides 64).
  std::uint64_t column_signs(std::uint64_t col) const {
    std::uint64_t base = col * static_cast<std::uint64_t>(col_nnz);
    std::uint64_t word = sign_words[base >> 6] >> (base & 63);
    return col_nnz == 64 ? word : word & ((std::uint64_t{1} << col_nnz) - 1);
  }
  double value_at(std::uint64_t col, int t) const {
    return sign_bit(col * static_cast<std::uint64_t>(col_nnz) + static_cast<std::uint64_t>(t))
               ? -1.0
               : 1.0;
  }
};

// Bytes the assembled matrix will occupy, for gating and error messages.
std::uint64_t basis_memory_estimate(int n);

// Builds the full matrix by walking every enumerated state's stabilizer
// group. n = 5 (78M nonzeros) must be requested explicitly via allow_heavy.
BasisMatrix assemble_basis(int n, bool allow_heavy = false, int workers = 1);

}  // namespace romkit
