#pragma once

#include <string>

#include "romkit/basis.hpp"

namespace romkit {

// Binary basis file, little-endian throughout:
//   offset 0:  magic "ROMB"
//   4:  u32 format version (currently 1)
//   8:  u32 n
//   12: u32 rows (4^n)
//   16: u64 cols
//   24: u64 nonzero count (cols * 2^n)
//   32: u32 row index width in bytes: 2 for n <= 4, 4 for n = 5
//   36: payload: row indices column-major (nnz * width), then the packed
//       sign bit-stream (ceil(nnz/64) words, bit e%64 of word e/64, set = -1)
//   tail: u64 FNV-1a checksum of the payload bytes.
void save_basis(const BasisMatrix& b, const std::string& path);

// Validates magic, version, counts and checksum; error messages distinguish
// missing file, foreign file, version mismatch and corruption.
BasisMatrix load_basis(const std::string& path);

// $ROM_CACHE_DIR/basis_n<k>.romb, defaulting the directory to ./rom_cache.
std::string default_basis_path(int n);

}  // namespace romkit
