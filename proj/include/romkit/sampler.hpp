#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "romkit/circuit.hpp"
#include "romkit/lp.hpp"

namespace romkit {

// One gadget ancilla block. The resource state is gate|+...+> on the slot's
// k qubits, which occupy combined-register positions first_qubit ..
// first_qubit + k - 1. spec_text rebuilds the state via build_state.
struct AncillaSlot {
  PhasePolynomialGate gate;
  std::string spec_text;
  int k = 0;
  int first_qubit = 0;
};

// Stabilizer-only operation stream. `correction` applies
// words[pattern] where pattern packs the outcomes of measurements
// meas_first .. meas_first + nbits - 1 (first measurement = highest bit,
// outcome -1 = bit set). Every correction word is Clifford by construction.
struct GadgetOp {
  enum class Kind { clifford, measure, correction };
  Kind kind;
  GateOp g{};
  PauliString p{};
  int meas_first = 0;
  int nbits = 0;
  std::vector<std::vector<GateOp>> words;
};

struct GadgetizedCircuit {
  int n_data = 0;
  int n_total = 0;
  std::vector<AncillaSlot> slots;
  std::vector<GadgetOp> ops;
  PauliString final_observable;  // extended to the combined register
  int num_measurements = 0;
};

// Rewrites every non-Clifford operation into a stabilizer gadget consuming a
// magic ancilla block: T gates become the injection circuit (CNOT, Z
// measurement, conditional S), diagonal phase gates the half-teleportation
// gadget whose per-outcome corrections are derived symbolically from the
// phase polynomial. Up to t_block_size T ancillas share one slot so their
// resource state can be decomposed jointly. Clifford phase gates are expanded
// into gate words instead of consuming a slot. Applying the result to exact
// resource states reproduces the original circuit exactly.
GadgetizedCircuit gadgetize(const Circuit& c, int t_block_size = 1);

struct EstimatorConfig {
  double delta = 0.1;     // additive accuracy
  double epsilon = 0.05;  // failure probability
  std::uint64_t seed = 0;
  int block_size = 1;  // T ancillas per slot, 1..5
  int workers = 1;
};

// Hoeffding sample count ceil((2/delta^2) l1^2 ln(2/epsilon)).
std::uint64_t sample_count(const EstimatorConfig& cfg, double l1);

struct EstimateResult {
  double estimate = 0;
  double l1 = 1;                  // product of per-slot one-norms
  std::uint64_t samples = 0;      // N actually drawn
  std::uint64_t plus_samples = 0; // draws whose signed output was +l1
};

// Monte-Carlo estimate of Tr[P E(rho)]: per slot, a stabilizer state index is
// drawn with probability |x_i| / sum|x_i|, the stabilizer circuit runs on a
// tableau, and the signed measurement outcome is scaled by the product of
// one-norms. Unbiased; every draw contributes exactly +-l1, so the mean is
// reconstructed from an exact integer count. Workers split the sample range;
// worker w draws from a splitmix64 stream seeded cfg.seed xor w, so runs are
// bit-reproducible for a fixed worker count.
EstimateResult estimate_expectation(const GadgetizedCircuit& g,
                                    const std::vector<Pseudomixture>& mixtures,
                                    const EstimatorConfig& cfg);

struct CostReport {
  double l1 = 1;
  std::uint64_t samples = 0;
  int t_count = 0;
  int t_block_size = 1;
  double per_t_factor = 1;  // l1 growth per T gate at the chosen blocking
  std::vector<std::pair<std::string, double>> slot_values;  // spec -> block l1
};

// Predicts the sampling cost of a circuit without solving any decomposition:
// T blocks are priced by h_copies_exact at cfg.block_size; non-Clifford
// phase gates by gate_rom (required only when such gates occur).
CostReport simulation_cost_report(
    const Circuit& c, const EstimatorConfig& cfg,
    const std::function<double(const PhasePolynomialGate&)>& gate_rom = {});

// Keyed 64-bit generator used by the estimator; also exposed for tests that
// pin the sampling stream.
struct SplitMix64 {
  std::uint64_t state = 0;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin() { return (next() & 1ull) != 0; }
};

}  // namespace romkit
