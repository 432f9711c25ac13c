#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "romkit/density.hpp"
#include "romkit/tableau.hpp"

namespace romkit {

// Diagonal gate from the third level of the Clifford hierarchy, stored as the
// phase polynomial a(x) = sum_q l_q x_q + 2 sum_{q<r} m_qr x_q x_r
// + 4 sum_{q<r<s} c_qrs x_q x_r x_s (mod 8); the unitary has diagonal entries
// e^{i pi a(x)/4}. Coefficient maps hold only nonzero entries; qubits are
// 1-based with qubit 1 the most significant bit of the basis index.
struct PhasePolynomialGate {
  int n = 0;
  std::map<int, int> linear;                     // qubit -> Z8 exponent
  std::map<std::pair<int, int>, int> quadratic;  // qubit pair -> Z4 exponent
  std::map<std::array<int, 3>, int> cubic;       // qubit triple -> Z2 exponent

  // Accumulators normalize mod the slot size, drop zeros, and grow n to the
  // largest qubit mentioned. Keys may be given in any order.
  void add_linear(int q, int k);
  void add_quadratic(int q, int r, int k);
  void add_cubic(int q, int r, int s, int k);

  int phase_exponent(std::uint64_t x) const;  // a(x) mod 8
  CMat matrix() const;

  // True when every phase is a multiple of pi/2, i.e. the gate is already a
  // (diagonal) Clifford and carries no magic.
  bool is_clifford() const;
  bool is_identity() const { return linear.empty() && quadratic.empty() && cubic.empty(); }
};

// Error in a state spec string; position is a 0-based byte offset into text.
struct StateSpecError : std::runtime_error {
  StateSpecError(const std::string& msg, std::size_t at)
      : std::runtime_error(msg), position(at) {}
  std::size_t position;
};

// Parsed state specification. A spec is either a product of diagonal-gate
// factors, merged into one phase polynomial over a shared register (the
// state is then U|+...+>), or a tensor product of closed-form state factors;
// the two kinds do not mix.
struct StateSpec {
  struct Factor {
    enum class Kind {
      h_copies,     // |H><H|^(x)k
      f_copies,     // |F><F|^(x)k
      bloch,        // single-qubit density from a Bloch vector
      hoggar,       // the three-qubit fiducial state
      jam_gate,     // Jamiolkowski state of a diagonal-gate spec
      jam_opt1,     // Jamiolkowski state of the most robust 1-qubit unitary
      jam_opt2,     // Jamiolkowski state of the most robust 2-qubit unitary
      equatorial,   // pure state with Bloch vector (cos phi, sin phi, 0)
      rho_h,        // (1/2)(I + r (X+Z)/sqrt2)
      rho_f         // (1/2)(I + r (X+Y+Z)/sqrt3)
    };
    Kind kind;
    int copies = 1;                 // h_copies / f_copies
    std::array<double, 3> arg{};    // bloch xyz; r or phi in arg[0]
    PhasePolynomialGate jam_inner;  // jam_gate
    int qubits() const;
  };

  std::string text;
  int num_qubits = 0;
  std::optional<PhasePolynomialGate> gate;  // set iff the spec is gate-valued
  std::vector<Factor> factors;              // used otherwise
};

// Qubits the gate actually touches, ascending.
std::vector<int> gate_support(const PhasePolynomialGate& g);

// The same gate relabeled onto qubits 1..k in support order.
PhasePolynomialGate compress_support(const PhasePolynomialGate& g);

// Canonical spec text for a gate ("T_1 CS_12 ..."). Parses back to an equal
// gate; empty for the identity.
std::string gate_spec_text(const PhasePolynomialGate& g);

// Grammar (terms separated by whitespace or "⊗"):
//   spec  := term+
//   term  := "H" ("^" int)? | "F" ("^" int)?
//          | name "_" group ("," group)*      name in {T,S,Z,CS,CZ,CCZ}
//          | "bloch(" real "," real "," real ")"
//          | "hoggar" | "jam(" spec-or-opt ")" | "equatorial(" real ")"
//          | "rhoH(" real ")" | "rhoF(" real ")"
//   group := digit+ with exactly the gate's arity, all digits distinct
// Gate terms accumulate: "T_1 T_1" equals "S_1". Throws StateSpecError with
// the offending byte position.
StateSpec parse_state_spec(const std::string& text);

// Dense realizations. All enforce the kMaxDenseQubits cap.
DensityOperator build_state(const StateSpec& spec);
DensityOperator build_state(const std::string& text);

// U|+>^(x)n for a diagonal third-level gate: amplitudes e^{i pi a(x)/4}/2^{n/2}.
DensityOperator resource_state(const PhasePolynomialGate& g);

// The three-qubit SIC-POVM fiducial state (1+i, 0, -1, 1, -i, 1, 0, 0)/sqrt6.
DensityOperator hoggar_state();

// Normalized Choi state (1 (x) U) sum_j |j,j> / 2^{n/2} on 2n qubits.
DensityOperator jamiolkowski_state(const CMat& u);

DensityOperator bloch_state(double rx, double ry, double rz);
DensityOperator rho_h_state(double r);
DensityOperator rho_f_state(double r);
DensityOperator equatorial_state(double phi);

// Dense matrix of a Clifford gate word on n qubits, applied left to right
// (the first element of the word acts first).
CMat clifford_word_matrix(const std::vector<GateOp>& word, int n);

// One step of a stabilizer channel acting on a dense density operator.
// Measurements fork the state into outcome branches; `conditional` words run
// only on branches where an earlier measurement returned -1.
struct ChannelStep {
  enum class Kind { unitary, measure, append, discard, conditional };
  Kind kind;
  std::vector<GateOp> word;        // unitary / conditional
  PauliString observable;          // measure
  bool postselect = false;         // measure: keep a single outcome...
  int postselect_outcome = +1;     // ...this one (+1 or -1)
  int append_qubits = 0;           // append: register size and
  std::uint64_t append_state_id = 0;  // enumeration id of the appended state
  int discard_qubit = 0;           // discard: 1-based qubit to trace out
  int condition_measurement = 0;   // conditional: 0-based measurement index

  static ChannelStep unitary_step(std::vector<GateOp> w);
  static ChannelStep measure_step(PauliString p, bool postselect = false, int outcome = +1);
  static ChannelStep append_step(int qubits, std::uint64_t state_id = 0);
  static ChannelStep discard_step(int qubit);
  static ChannelStep conditional_step(int measurement, std::vector<GateOp> w);
};

// Exact dense action of the channel. Trace-preserving when no step
// postselects; postselection renormalizes onto the surviving branches and
// throws if the requested outcome has probability ~0.
DensityOperator apply_stabilizer_channel(const DensityOperator& rho,
                                         const std::vector<ChannelStep>& steps);

}  // namespace romkit
