#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace romkit {

// Bit masks live in a single uint64_t, which caps the register size well
// above anything the toolkit needs (5 analysis qubits plus gadget ancillas).
inline constexpr int kMaxQubits = 56;

// An n-qubit Pauli operator stored as i^phase * X^x * Z^z with the per-qubit
// factors ordered X-then-Z. Qubit q (1-based, q=1 "first") occupies mask bit
// n-q, so a basis-state bit mask read as an integer equals its index in the
// dense 2^n vector. Y is represented as i * XZ, so the canonical Hermitian
// operator with letters L_1..L_n carries phase = (#Y letters) mod 4.
struct PauliString {
  int n = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint8_t phase = 0;  // exponent of i, mod 4

  bool operator==(const PauliString&) const = default;

  // Hermitian iff the phase parity matches the XZ-overlap parity.
  bool is_hermitian() const;
  bool is_identity() const { return x == 0 && z == 0 && phase == 0; }
};

struct IndexedPauli {
  std::uint64_t index;  // canonical index, see pauli_from_index
  int sign;             // +1 or -1; p == sign * pauli_from_index(n, index)
};

// Canonical order: read qubit 1 first and sort letters I < X < Y < Z, i.e.
// index = sum_q letter(q) * 4^(n-q). Index 0 is the identity; for n=1 the
// order is I, X, Y, Z.
PauliString pauli_from_index(int n, std::uint64_t index);

// Decomposes a Hermitian Pauli into its canonical index and sign.
// Throws std::invalid_argument if p is not Hermitian.
IndexedPauli pauli_index_signed(const PauliString& p);

std::string pauli_index_to_string(int n, std::uint64_t index);

// "XIZ" with optional prefix "+", "-", "i", "+i", "-i". Throws on bad input.
PauliString pauli_from_string(std::string_view s);
std::string to_string(const PauliString& p);

// Product a*b. Throws std::invalid_argument when the qubit counts differ.
PauliString pauli_multiply(const PauliString& a, const PauliString& b);

// a acting on qubits 1..a.n, b appended as qubits a.n+1..a.n+b.n.
PauliString pauli_tensor(const PauliString& a, const PauliString& b);

bool pauli_commutes(const PauliString& a, const PauliString& b);

// Expectation values <P_i> for all 4^n canonical Paulis, index order.
using PauliVector = std::vector<double>;

}  // namespace romkit
