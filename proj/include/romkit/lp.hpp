#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "romkit/basis.hpp"
#include "romkit/density.hpp"

namespace romkit {

// Knobs for the revised-simplex L1 solver. Defaults are tuned so that
// n <= 4 problems solve in seconds; only the candidate pool and warm
// columns matter for the 2.4M-column five-qubit case.
struct SimplexOptions {
  double pricing_tol = 1e-9;   // entering threshold on |y.A_j| - cost
  double ratio_tol = 1e-9;     // pivot element floor in the ratio test
  int refactor_interval = 128;
  std::uint64_t max_iterations = 2000000;
  std::size_t pool_size = 8192;  // partial-pricing candidate pool
  int stall_limit = 512;         // degenerate steps before Bland's rule
  std::vector<std::uint64_t> warm_columns;  // seed candidates (column ids)
};

// Affine decomposition over enumerated stabilizer states: rho = sum x_i s_i
// with sum x_i = 1. Terms hold (state id, coefficient), coefficients
// nonzero, ids unique and sorted.
struct Pseudomixture {
  int n = 0;
  std::vector<std::pair<std::uint64_t, double>> terms;

  double l1() const;
  double affine_sum() const;
};

struct RobustnessResult {
  double value = 0;  // ||x||_1 at the optimum
  Pseudomixture mixture;
  // Optimality certificate: maximizes -b.y subject to ||A^T y||_inf <= 1,
  // and -b.y equals the primal value at the optimum.
  std::vector<double> dual;
  double gap = 0;  // |value - (-b.y)|
  std::uint64_t iterations = 0;
  bool certified = false;  // solver reached proven optimality
};

// Minimizes ||x||_1 over A x = b. Throws std::invalid_argument on dimension
// mismatch and std::runtime_error when max_iterations is exhausted.
RobustnessResult rom_from_pauli_vector(const PauliVector& b, const BasisMatrix& basis,
                                       const SimplexOptions& opt = {});
RobustnessResult rom(const DensityOperator& rho, const BasisMatrix& basis,
                     const SimplexOptions& opt = {});

// ||Ax - b||_inf of a candidate mixture.
double primal_residual(const Pseudomixture& x, const PauliVector& b, const BasisMatrix& basis);

// Recomputes, from scratch: primal residual <= 1e-7, dual feasibility
// ||A^T y||_inf <= 1 + 1e-8, duality gap <= 1e-6.
bool verify_certificate(const RobustnessResult& r, const PauliVector& b,
                        const BasisMatrix& basis);

// Product-form decomposition of a tensor of independent blocks. The joint
// coefficient vector is never materialized; its L1 norm is the product of
// the block norms and sampling draws per-block.
struct BlockedRom {
  double value = 1.0;
  std::vector<RobustnessResult> blocks;
};
BlockedRom blocked_rom(const std::vector<DensityOperator>& blocks,
                       const std::vector<const BasisMatrix*>& bases,
                       const SimplexOptions& opt = {});

// Exact robustness of m copies of the T-magic state, m in [1, 5]. Closed
// forms for m <= 4; the five-copy value is the solver-verified constant
// 3.68705 kept here so brackets and cost reports need no heavy run.
double h_copies_exact(int m);

// Lower/upper bracket for t >= 6 copies: lower from the multiplicative
// st-norm bound, upper from the best submultiplicative splitting into
// blocks of at most five copies.
struct RomBracket {
  int copies = 0;
  double lower = 1.0;
  double upper = 1.0;
  std::vector<int> split;  // block sizes realizing the upper bound
};
RomBracket rom_bracket(int t);

}  // namespace romkit
