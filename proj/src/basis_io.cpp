#include "romkit/basis_io.hpp"

#include <fmt/format.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace romkit {

namespace {

constexpr char kMagic[4] = {'R', 'O', 'M', 'B'};
constexpr std::uint32_t kVersion = 1;

struct Fnv1a {
  std::uint64_t h = 14695981039346656037ULL;
  void feed(const unsigned char* p, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  }
};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{b[i]} << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{b[i]} << (8 * i);
  return v;
}

constexpr std::size_t kChunkEntries = 1 << 16;

}  // namespace

void save_basis(const BasisMatrix& b, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));

  std::uint64_t nnz = b.cols * static_cast<std::uint64_t>(b.col_nnz);
  std::uint32_t width = b.n == 5 ? 4 : 2;

  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(b.n));
  put_u32(out, b.rows);
  put_u64(out, b.cols);
  put_u64(out, nnz);
  put_u32(out, width);

  Fnv1a sum;
  std::vector<unsigned char> buf;
  buf.reserve(kChunkEntries * width);
  for (std::uint64_t e = 0; e < nnz; ++e) {
    std::uint32_t v = b.row_idx[e];
    for (std::uint32_t k = 0; k < width; ++k)
      buf.push_back(static_cast<unsigned char>(v >> (8 * k)));
    if (buf.size() >= kChunkEntries * width) {
      sum.feed(buf.data(), buf.size());
      out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  for (std::uint64_t w : b.sign_words) {
    for (int k = 0; k < 8; ++k) buf.push_back(static_cast<unsigned char>(w >> (8 * k)));
    if (buf.size() >= kChunkEntries * width) {
      sum.feed(buf.data(), buf.size());
      out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  if (!buf.empty()) {
    sum.feed(buf.data(), buf.size());
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  put_u64(out, sum.h);
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

BasisMatrix load_basis(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("basis file '{}' does not exist", path));

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error(fmt::format("'{}' is not a basis file (bad magic)", path));
  std::uint32_t version = get_u32(in);
  if (version != kVersion)
    throw std::runtime_error(
        fmt::format("basis file '{}' has version {}, expected {}", path, version, kVersion));

  std::uint32_t n = get_u32(in);
  std::uint32_t rows = get_u32(in);
  std::uint64_t cols = get_u64(in);
  std::uint64_t nnz = get_u64(in);
  std::uint32_t width = get_u32(in);
  if (!in) throw std::runtime_error(fmt::format("basis file '{}' is truncated", path));

  if (n < 1 || n > 5 || rows != (std::uint32_t{1} << (2 * n)) ||
      cols != stabilizer_state_count(static_cast<int>(n)) ||
      nnz != cols << n || width != (n == 5 ? 4u : 2u))
    throw std::runtime_error(fmt::format("basis file '{}' has inconsistent header fields", path));

  BasisMatrix b;
  b.n = static_cast<int>(n);
  b.rows = rows;
  b.cols = cols;
  b.col_nnz = 1 << n;
  b.row_idx.resize(nnz);
  b.sign_words.resize((nnz + 63) / 64);

  Fnv1a sum;
  std::vector<unsigned char> buf(kChunkEntries * width);
  std::uint64_t e = 0;
  while (e < nnz) {
    std::size_t take = static_cast<std::size_t>(std::min<std::uint64_t>(kChunkEntries, nnz - e));
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(take * width));
    if (!in) throw std::runtime_error(fmt::format("basis file '{}' is truncated", path));
    sum.feed(buf.data(), take * width);
    for (std::size_t k = 0; k < take; ++k) {
      std::uint32_t v = 0;
      for (std::uint32_t j = 0; j < width; ++j)
        v |= std::uint32_t{buf[k * width + j]} << (8 * j);
      if (v >= rows)
        throw std::runtime_error(fmt::format("basis file '{}' has a row index out of range", path));
      b.row_idx[e + k] = static_cast<std::uint16_t>(v);
    }
    e += take;
  }
  for (std::size_t w = 0; w < b.sign_words.size(); ++w) {
    unsigned char raw[8];
    in.read(reinterpret_cast<char*>(raw), 8);
    if (!in) throw std::runtime_error(fmt::format("basis file '{}' is truncated", path));
    sum.feed(raw, 8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= std::uint64_t{raw[k]} << (8 * k);
    b.sign_words[w] = v;
  }
  std::uint64_t stored = get_u64(in);
  if (!in) throw std::runtime_error(fmt::format("basis file '{}' is truncated", path));
  if (stored != sum.h)
    throw std::runtime_error(fmt::format("basis file '{}' failed its checksum", path));
  return b;
}

std::string default_basis_path(int n) {
  const char* dir = std::getenv("ROM_CACHE_DIR");
  std::string base = dir && *dir ? dir : "rom_cache";
  return fmt::format("{}/basis_n{}.romb", base, n);
}

}  // namespace romkit
