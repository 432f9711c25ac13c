#include "romkit/bounds.hpp"

#include <cmath>

#include "romkit/kernels.hpp"

namespace romkit {

double st_norm(const DensityOperator& rho) {
  PauliVector b = pauli_vector_of(rho);
  double scale = 1.0 / static_cast<double>(std::size_t{1} << rho.n);
  return scale * kernels::abs_sum(b.data(), b.size());
}

double rom_lower_bound(const DensityOperator& rho) {
  double inv_dim = 1.0 / static_cast<double>(std::size_t{1} << rho.n);
  double bound = (st_norm(rho) - inv_dim) / (1.0 - inv_dim);
  return std::max(1.0, bound);
}

double product_lower_bound(const DensityOperator& block, std::uint64_t copies) {
  double d = st_norm(block);
  double inv_dim = std::exp2(-static_cast<double>(copies) * block.n);
  double bound = (std::pow(d, static_cast<double>(copies)) - inv_dim) / (1.0 - inv_dim);
  return std::max(1.0, bound);
}

bool is_magic_witnessed(const DensityOperator& rho) { return st_norm(rho) > 1.0 + 1e-10; }

}  // namespace romkit
