#pragma once

#include <bit>
#include <complex>
#include <functional>
#include <vector>

#include "romkit/pauli.hpp"

namespace romkit {

enum class CliffordGate { H, S, CNOT, X, Z, SqrtX };

// One Clifford gate application; qubits are 1-based, q2 is the CNOT target.
struct GateOp {
  CliffordGate gate;
  int q1;
  int q2 = 0;
};

struct MeasurementResult {
  int outcome;         // +1 or -1 eigenvalue
  bool deterministic;  // false when the coin decided
};

// g -> U g U^dagger for a single generator gate.
PauliString pauli_conjugate(const GateOp& op, const PauliString& p);

// Aaronson-Gottesman style tableau: n stabilizer generators plus the paired
// destabilizers (destabilizer i anticommutes with stabilizer i and commutes
// with every other row). Starts in |0...0>.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(int n);

  // Builds a tableau from explicit rows. With validate=true the symplectic
  // pairing, commutation and hermiticity invariants are checked.
  static StabilizerTableau from_rows(std::vector<PauliString> stabilizers,
                                     std::vector<PauliString> destabilizers,
                                     bool validate = true);

  int num_qubits() const { return n_; }
  const PauliString& stabilizer(int i) const { return stab_[static_cast<std::size_t>(i)]; }
  const PauliString& destabilizer(int i) const { return destab_[static_cast<std::size_t>(i)]; }

  void apply(const GateOp& op);
  void apply(CliffordGate g, int q1, int q2 = 0) { apply(GateOp{g, q1, q2}); }
  void apply_word(const std::vector<GateOp>& word);

  // Measures a Hermitian Pauli. `coin` supplies the fair bit for the random
  // branch (true = outcome -1) and is not consulted otherwise.
  MeasurementResult measure_pauli(const PauliString& p, const std::function<bool()>& coin);

  // <P> for a Hermitian Pauli: +1/-1 when stabilized, 0 otherwise.
  int pauli_expectation(const PauliString& p) const;

  // this (qubits 1..n) extended by `other` (appended after qubit n).
  StabilizerTableau tensor(const StabilizerTableau& other) const;

 private:
  StabilizerTableau() = default;
  int n_ = 0;
  std::vector<PauliString> stab_;
  std::vector<PauliString> destab_;
};

// Visits the 2^n stabilizer group elements of `t` as canonical index + sign,
// in Gray-code order (each step is one generator multiplication).
template <typename F>
void for_each_group_element(const StabilizerTableau& t, F&& f) {
  int n = t.num_qubits();
  PauliString cur;
  cur.n = n;
  f(IndexedPauli{0, 1});
  std::uint32_t prev = 0;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
    std::uint32_t gray = s ^ (s >> 1);
    cur = pauli_multiply(cur, t.stabilizer(std::countr_zero(gray ^ prev)));
    prev = gray;
    f(pauli_index_signed(cur));
  }
}

// Dense amplitudes of the stabilized pure state, global phase fixed so the
// first (lowest-index) nonzero amplitude is real positive. Oracle support,
// guarded to small n. Implemented via the affine canonical form.
std::vector<std::complex<double>> state_vector_of(const StabilizerTableau& t);

}  // namespace romkit
