#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "romkit/lp.hpp"
#include "romkit/states.hpp"

namespace romkit {

// A Clifford circuit spelled as generator gates, applied left to right.
using CliffordWord = std::vector<GateOp>;

enum class Verdict { optimal, gap, unknown };

// Outcome of comparing R(U|+..+>) against the exact robustness of t-fold
// T-state registers: a circuit using t T gates can only realize U if
// R(U|+..+>) <= R of the t-copy register, so lower_t is a floor on the
// T-count of any implementation.
struct SynthesisVerdict {
  PhasePolynomialGate gate;
  double rom_value = 1.0;
  int lower_t = 0;
  // False when the t-copy robustness is only bracketed (t > 5) and the
  // bracket cannot place rom_value; lower_t is then the smallest copy count
  // not excluded rather than the exact threshold.
  bool lower_t_exact = true;
  std::optional<int> known_t;
  Verdict verdict = Verdict::unknown;
};

// Computes lower_t = min{t : R(U|+..+>) <= R(t T-copies) + margin} with
// margin = 1e-5 plus the LP duality gap, so verdicts never hinge on solver
// noise. Copy values are exact for t <= 5 and bracketed beyond; when the
// bracket is inconclusive the verdict stays unknown and lower_t_exact is
// cleared. With known_t supplied, equality yields optimal and excess yields
// gap. Throws std::invalid_argument on basis/gate mismatch or when known_t
// sits below the proven floor.
SynthesisVerdict t_count_lower_bound(const PhasePolynomialGate& g, const BasisMatrix& basis,
                                     std::optional<int> known_t = {},
                                     const SimplexOptions& opt = {});

enum class EquivalenceStatus {
  found,             // word maps u to v up to global phase, verified densely
  disproved,         // Pauli spectra differ, or the whole group was searched
  budget_exhausted,  // neither: not found within the node budget
};

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::budget_exhausted;
  CliffordWord word;           // meaningful only when status == found
  std::uint64_t nodes = 0;     // distinct group elements created
};

// Searches for a Clifford word C with C u C^dag = v, breadth-first over
// {H, S, sqrtX, CNOT} generator words deduplicated by the conjugation images
// of every X_q and Z_q (the group element modulo global phase). The sorted
// multiset of |Tr(P rho)| over all Paulis is Clifford-invariant, so a
// mismatch there disproves equivalence without any search; an exhausted
// budget never does. Both states must be pure and of equal width n <= 4.
EquivalenceResult clifford_equivalent(const DensityOperator& u_state,
                                      const DensityOperator& v_state,
                                      std::uint64_t budget = 1000000);

// One rewrite "source costs t_before T gates by the direct construction, but
// its resource state is Clifford-equivalent to target's, which costs only
// t_after". Gate injection then realizes source at the cheaper count.
struct SavingsEntry {
  PhasePolynomialGate source;
  PhasePolynomialGate target;
  int t_before = 0;
  int t_after = 0;
};

// The known T-saving substitutions among third-level diagonal gates on up to
// five qubits. Static data; equal robustness of each pair is re-checked in
// the test suite rather than at call time.
std::vector<SavingsEntry> savings_catalog();

// Two equatorial copies (|0> + e^{i theta}|1>)/sqrt2 converted into one
// sharper single-qubit state: measure ZY, apply CNOT(1 -> 2), discard the
// second qubit. Either outcome leaves Bloch vector
// (cos^2 t, sin t cos t, +-sin t), whose L1 norm equals the two-copy
// robustness (2 sin t + sin 2t + cos 2t + 1)/2 while 0 <= theta <=
// arctan(1/3); outside that window the identity fails and the result is
// only flagged, not rejected.
struct TwoToOneResult {
  double theta = 0;
  bool within_window = true;
  double prob_plus = 0.5;
  double prob_minus = 0.5;
  DensityOperator out_plus;
  DensityOperator out_minus;
  std::array<double, 3> bloch_plus{};
  std::array<double, 3> bloch_minus{};
  double l1_plus = 1.0;   // single-qubit robustness of out_plus
  double l1_minus = 1.0;  // and of out_minus
  double two_copy_rom = 1.0;  // closed form, meaningful inside the window
};
TwoToOneResult two_to_one_conversion(double theta);

// One qubit-relabeling orbit of gates, named by its canonical spec text.
// t_cost is the published CNOT+T count for the representative, quoted from
// the synthesis literature; -1 where none is known.
struct GateClassEntry {
  PhasePolynomialGate gate;
  std::string spec;
  int t_cost = -1;
};

// All orbits sharing one robustness value. min_t_cost is the cheapest known
// member count (-1 when no member has a published count); implementing any
// member at that cost takes a Clifford conversion between resource states.
struct GateClass {
  double rom_value = 1.0;
  int min_t_cost = -1;
  std::vector<GateClassEntry> members;
};

// Classifies every n-qubit diagonal third-level gate with T/CS/CCZ content
// (coefficients taken mod the diagonal Cliffords S, Z, CZ, which cannot
// change the resource state's robustness) up to qubit relabeling, solving
// one LP per orbit and grouping orbits by value. n = 3 is cheap; n = 4
// solves a few hundred four-qubit LPs and is a deliberate heavy run.
std::vector<GateClass> classification_table(int n, const BasisMatrix& basis,
                                            const SimplexOptions& opt = {});

}  // namespace romkit
