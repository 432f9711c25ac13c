#pragma once

#include <string>
#include <vector>

#include "romkit/states.hpp"

namespace romkit {

// One operation of a magic-state-assisted circuit. Clifford gates act
// directly; `measure` records a mid-circuit Pauli outcome; `phase_gate` is a
// diagonal gate given by its phase polynomial; `t_gate` is the single-qubit
// T, kept separate so ancilla blocking can group T gates specially.
struct CircuitOp {
  enum class Kind { clifford, measure, phase_gate, t_gate };
  Kind kind;
  GateOp g{};
  PauliString p{};
  PhasePolynomialGate gate;
  int t_qubit = 0;
};

struct Circuit {
  int n_data = 0;
  std::vector<CircuitOp> ops;
  PauliString final_observable;  // Hermitian, on the data register

  int t_gate_count() const;
  int phase_gate_count() const;  // non-Clifford phase gates only
};

// Line-based circuit text:
//
//   qubits <n>                 header, required first
//   H <q> | S <q> | X <q> | Z <q> | SQRTX <q>
//   CNOT <control> <target>
//   T <q>
//   GATE <gate-spec>           diagonal gate, e.g. "GATE CCZ_123" or
//                              "GATE T_1 CS_12" (state-spec gate grammar)
//   MEASURE <pauli>            e.g. "MEASURE ZIZ" or "MEASURE -XY"
//   OBSERVE <pauli>            required, must be the last operation
//
// '#' starts a comment; blank lines are skipped. Qubits are 1-based. Pauli
// strings must cover every data qubit and be Hermitian. Throws
// std::runtime_error naming the offending line.
Circuit parse_circuit(const std::string& text);

}  // namespace romkit
