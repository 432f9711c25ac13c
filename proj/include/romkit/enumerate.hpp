#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "romkit/tableau.hpp"

namespace romkit {

// Affine canonical form of a pure stabilizer state:
//
//   psi(My ^ c) = i^(sum_a d_a y_a) * (-1)^(sum_{a<b} J_ab y_a y_b) / 2^(k/2),
//   y in F_2^k,
//
// where the columns m_a of M form a column-echelon basis of the X-support
// subspace (pivot = lowest set bit of the column, pivot bits exclusive to
// their column, nothing below the pivot), c lives on the non-pivot bits,
// d_a in Z4 carries the linear phase and J the binary quadratic coupling.
// Every pure stabilizer state has exactly one such form, which is what makes
// the enumeration duplicate-free and the state id stable.
struct StabilizerCanonicalForm {
  int n = 0;
  int k = 0;
  std::vector<int> pivots;       // ascending mask bit positions, size k
  std::vector<std::uint64_t> m;  // column masks, size k
  std::uint64_t c = 0;           // coset representative, zero on pivot bits
  std::vector<int> d;            // size k, mod 4
  std::vector<std::uint8_t> J;   // k*k row-major, symmetric, zero diagonal
};

// Extracts the canonical form from any valid tableau (any generating set).
StabilizerCanonicalForm canonical_form_of(const StabilizerTableau& t);

// Rebuilds the canonical tableau (generators sorted by their home bit).
StabilizerTableau tableau_of(const StabilizerCanonicalForm& f);

// 2^n * prod_{j=1..n} (2^j + 1)
std::uint64_t stabilizer_state_count(int n);

// Bijection between [0, count) and the pure stabilizer states on n qubits,
// n in [1, 5]. Ids are stable: group structure (k ascending, pivot sets in
// lexicographic order, then echelon free bits, quadratic coupling, linear
// phase parities) forms the high digits and the 2^n sign pattern (coset bits
// and linear phase high bits) the low digits.
class StabilizerStateEnumeration {
 public:
  explicit StabilizerStateEnumeration(int n);

  int num_qubits() const { return n_; }
  std::uint64_t size() const { return total_groups_ << n_; }

  StabilizerCanonicalForm form_for(std::uint64_t id) const;
  StabilizerTableau tableau_for(std::uint64_t id) const;

  std::uint64_t id_of_form(const StabilizerCanonicalForm& f) const;
  std::uint64_t id_of(const StabilizerTableau& t) const { return id_of_form(canonical_form_of(t)); }

 private:
  struct Block {
    int k = 0;
    std::uint32_t pivot_mask = 0;
    std::vector<int> pivots;
    std::vector<std::vector<int>> col_free;  // candidate free positions per column
    int f_bits = 0;
    int j_bits = 0;
    std::uint64_t groups = 0;
    std::uint64_t group_start = 0;
  };

  const Block& block_for_group(std::uint64_t g) const;

  int n_ = 0;
  std::uint64_t total_groups_ = 0;
  std::vector<Block> blocks_;
  std::unordered_map<std::uint32_t, std::size_t> block_by_pivots_;
};

}  // namespace romkit
