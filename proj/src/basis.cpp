#include "romkit/basis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace romkit {

std::uint64_t basis_memory_estimate(int n) {
  std::uint64_t entries = stabilizer_state_count(n) << n;
  return entries * sizeof(std::uint16_t) + entries / 8;
}

namespace {

void fill_columns(BasisMatrix& b, const StabilizerStateEnumeration& e, std::uint64_t first,
                  std::uint64_t last) {
  int nnz = b.col_nnz;
  std::vector<IndexedPauli> group(static_cast<std::size_t>(nnz));
  for (std::uint64_t id = first; id < last; ++id) {
    StabilizerTableau t = e.tableau_for(id);
    std::size_t w = 0;
    for_each_group_element(t, [&](const IndexedPauli& ip) { group[w++] = ip; });
    std::sort(group.begin(), group.end(),
              [](const IndexedPauli& a, const IndexedPauli& b2) { return a.index < b2.index; });
    std::uint64_t base = id * static_cast<std::uint64_t>(nnz);
    for (int k = 0; k < nnz; ++k) {
      b.row_idx[base + static_cast<std::uint64_t>(k)] =
          static_cast<std::uint16_t>(group[static_cast<std::size_t>(k)].index);
      if (group[static_cast<std::size_t>(k)].sign < 0) {
        std::uint64_t entry = base + static_cast<std::uint64_t>(k);
        b.sign_words[entry >> 6] |= std::uint64_t{1} << (entry & 63);
      }
    }
  }
}

}  // namespace

BasisMatrix assemble_basis(int n, bool allow_heavy, int workers) {
  if (n < 1 || n > 5)
    throw std::invalid_argument(fmt::format("basis qubit count {} out of range [1, 5]", n));
  if (n == 5 && !allow_heavy)
    throw std::runtime_error(
        fmt::format("n=5 basis assembly needs roughly {} MiB for {} nonzeros; pass the heavy "
                    "flag to confirm",
                    basis_memory_estimate(5) >> 20, stabilizer_state_count(5) << 5));

  StabilizerStateEnumeration e(n);
  BasisMatrix b;
  b.n = n;
  b.rows = std::uint32_t{1} << (2 * n);
  b.cols = e.size();
  b.col_nnz = 1 << n;
  std::uint64_t entries = b.cols * static_cast<std::uint64_t>(b.col_nnz);
  b.row_idx.resize(entries);
  b.sign_words.assign((entries + 63) / 64, 0);

  workers = std::max(1, workers);
  std::uint64_t want = (b.cols + static_cast<std::uint64_t>(workers) - 1) /
                       static_cast<std::uint64_t>(workers);
  // Chunk boundaries stay on whole sign words so writers never share one.
  std::uint64_t cols_per_word = 64 / static_cast<std::uint64_t>(b.col_nnz);
  std::uint64_t chunk = ((want + cols_per_word - 1) / cols_per_word) * cols_per_word;

  if (workers == 1 || chunk >= b.cols) {
    fill_columns(b, e, 0, b.cols);
    return b;
  }
  std::vector<std::thread> pool;
  for (std::uint64_t first = 0; first < b.cols; first += chunk) {
    std::uint64_t last = std::min(b.cols, first + chunk);
    pool.emplace_back([&b, &e, first, last] { fill_columns(b, e, first, last); });
  }
  for (auto& t : pool) t.join();
  return b;
}

}  // namespace romkit
