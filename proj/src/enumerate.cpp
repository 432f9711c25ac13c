#include "romkit/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace romkit {

namespace {

inline std::uint64_t bit(int p) { return std::uint64_t{1} << p; }

// Index of pair (a, b), a < b, in the packed triangular layout.
inline int pair_index(int a, int b) { return b * (b - 1) / 2 + a; }

}  // namespace

StabilizerCanonicalForm canonical_form_of(const StabilizerTableau& t) {
  const int n = t.num_qubits();
  std::vector<PauliString> work;
  work.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) work.push_back(t.stabilizer(i));

  StabilizerCanonicalForm f;
  f.n = n;

  // Column-echelon reduction of the X parts; pivot = lowest set bit. The
  // pivot bit is cleared from every other generator, so M comes out in the
  // exclusive-pivot canonical shape.
  int rank = 0;
  for (int r = 0; r < n; ++r) {
    int sel = -1;
    for (int i = rank; i < n; ++i)
      if ((work[static_cast<std::size_t>(i)].x >> r) & 1u) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(work[static_cast<std::size_t>(rank)], work[static_cast<std::size_t>(sel)]);
    for (int i = 0; i < n; ++i)
      if (i != rank && ((work[static_cast<std::size_t>(i)].x >> r) & 1u))
        work[static_cast<std::size_t>(i)] =
            pauli_multiply(work[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(rank)]);
    f.pivots.push_back(r);
    ++rank;
  }
  f.k = rank;

  std::uint64_t pivot_mask = 0;
  for (int p : f.pivots) pivot_mask |= bit(p);

  // Canonicalize the pure-Z block into the one-free-bit basis; the signs of
  // those rows are the coset bits.
  std::vector<int> zgen_for_pos(static_cast<std::size_t>(n), -1);
  int zdone = rank;
  for (int r = 0; r < n; ++r) {
    if (pivot_mask & bit(r)) continue;
    int sel = -1;
    for (int i = zdone; i < n; ++i)
      if ((work[static_cast<std::size_t>(i)].z >> r) & 1u) {
        sel = i;
        break;
      }
    if (sel < 0) throw std::logic_error("canonical_form_of: Z block is rank-deficient");
    std::swap(work[static_cast<std::size_t>(zdone)], work[static_cast<std::size_t>(sel)]);
    for (int i = rank; i < n; ++i)
      if (i != zdone && ((work[static_cast<std::size_t>(i)].z >> r) & 1u))
        work[static_cast<std::size_t>(i)] =
            pauli_multiply(work[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(zdone)]);
    zgen_for_pos[static_cast<std::size_t>(r)] = zdone;
    ++zdone;
  }

  for (int r = 0; r < n; ++r) {
    int i = zgen_for_pos[static_cast<std::size_t>(r)];
    if (i < 0) continue;
    const PauliString& w = work[static_cast<std::size_t>(i)];
    if (w.phase == 2)
      f.c |= bit(r);
    else if (w.phase != 0)
      throw std::logic_error("canonical_form_of: non-real sign on a Z generator");
  }

  // Clear free-bit Z letters from the X generators, then read d and J off
  // the pivot bits.
  f.m.resize(static_cast<std::size_t>(rank));
  f.d.resize(static_cast<std::size_t>(rank));
  f.J.assign(static_cast<std::size_t>(rank) * static_cast<std::size_t>(rank), 0);
  for (int a = 0; a < rank; ++a) {
    PauliString& g = work[static_cast<std::size_t>(a)];
    for (int r = 0; r < n; ++r)
      if (!(pivot_mask & bit(r)) && ((g.z >> r) & 1u))
        g = pauli_multiply(g, work[static_cast<std::size_t>(zgen_for_pos[static_cast<std::size_t>(r)])]);
    f.m[static_cast<std::size_t>(a)] = g.x;
    f.d[static_cast<std::size_t>(a)] = g.phase;
    if (((g.z >> f.pivots[static_cast<std::size_t>(a)]) & 1u) !=
        (static_cast<std::uint64_t>(g.phase) & 1u))
      throw std::logic_error("canonical_form_of: phase parity mismatch on an X generator");
  }
  for (int a = 0; a < rank; ++a)
    for (int b = 0; b < rank; ++b) {
      if (a == b) continue;
      std::uint8_t v = static_cast<std::uint8_t>(
          (work[static_cast<std::size_t>(a)].z >> f.pivots[static_cast<std::size_t>(b)]) & 1u);
      f.J[static_cast<std::size_t>(a * rank + b)] = v;
    }
  for (int a = 0; a < rank; ++a)
    for (int b = a + 1; b < rank; ++b)
      if (f.J[static_cast<std::size_t>(a * rank + b)] != f.J[static_cast<std::size_t>(b * rank + a)])
        throw std::logic_error("canonical_form_of: asymmetric quadratic coupling");
  return f;
}

StabilizerTableau tableau_of(const StabilizerCanonicalForm& f) {
  const int n = f.n;
  std::uint64_t pivot_mask = 0;
  for (int p : f.pivots) pivot_mask |= bit(p);

  std::vector<PauliString> stabs(static_cast<std::size_t>(n));
  std::vector<PauliString> destabs(static_cast<std::size_t>(n));
  int a = 0;  // next X generator
  for (int r = 0; r < n; ++r) {
    PauliString g, dg;
    g.n = dg.n = n;
    if (pivot_mask & bit(r)) {
      g.x = f.m[static_cast<std::size_t>(a)];
      std::uint64_t z = 0;
      for (int b = 0; b < f.k; ++b) {
        if (b == a) continue;
        if (f.J[static_cast<std::size_t>(a * f.k + b)]) z |= bit(f.pivots[static_cast<std::size_t>(b)]);
      }
      if (f.d[static_cast<std::size_t>(a)] & 1) z |= bit(r);
      g.z = z;
      g.phase = static_cast<std::uint8_t>(f.d[static_cast<std::size_t>(a)] & 3);
      dg.z = bit(r);
      ++a;
    } else {
      std::uint64_t z = bit(r);
      for (int b = 0; b < f.k; ++b)
        if ((f.m[static_cast<std::size_t>(b)] >> r) & 1u) z |= bit(f.pivots[static_cast<std::size_t>(b)]);
      g.z = z;
      g.phase = (f.c >> r) & 1u ? 2 : 0;
      dg.x = bit(r);
    }
    stabs[static_cast<std::size_t>(r)] = g;
    destabs[static_cast<std::size_t>(r)] = dg;
  }
  return StabilizerTableau::from_rows(std::move(stabs), std::move(destabs), /*validate=*/false);
}

std::uint64_t stabilizer_state_count(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("stabilizer_state_count: n out of range [1, 8]");
  std::uint64_t count = std::uint64_t{1} << n;
  for (int j = 1; j <= n; ++j) count *= (std::uint64_t{1} << j) + 1;
  return count;
}

StabilizerStateEnumeration::StabilizerStateEnumeration(int n) : n_(n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument(
        fmt::format("stabilizer state enumeration supports n in [1, 5], got {}", n));
  for (int k = 0; k <= n; ++k) {
    std::vector<int> combo(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
    while (true) {
      Block blk;
      blk.k = k;
      blk.pivots = combo;
      for (int p : combo) blk.pivot_mask |= static_cast<std::uint32_t>(bit(p));
      blk.col_free.resize(static_cast<std::size_t>(k));
      for (int a = 0; a < k; ++a) {
        for (int r = combo[static_cast<std::size_t>(a)] + 1; r < n; ++r)
          if (!(blk.pivot_mask & bit(r))) blk.col_free[static_cast<std::size_t>(a)].push_back(r);
        blk.f_bits += static_cast<int>(blk.col_free[static_cast<std::size_t>(a)].size());
      }
      blk.j_bits = k * (k - 1) / 2;
      blk.groups = std::uint64_t{1} << (blk.f_bits + blk.j_bits + k);
      blk.group_start = total_groups_;
      total_groups_ += blk.groups;
      block_by_pivots_.emplace(blk.pivot_mask, blocks_.size());
      blocks_.push_back(std::move(blk));

      // next k-combination of {0..n-1} in lexicographic order
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int t = i + 1; t < k; ++t)
        combo[static_cast<std::size_t>(t)] = combo[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
}

const StabilizerStateEnumeration::Block& StabilizerStateEnumeration::block_for_group(
    std::uint64_t g) const {
  std::size_t lo = 0, hi = blocks_.size();
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (blocks_[mid].group_start <= g)
      lo = mid;
    else
      hi = mid;
  }
  return blocks_[lo];
}

StabilizerCanonicalForm StabilizerStateEnumeration::form_for(std::uint64_t id) const {
  if (id >= size()) throw std::invalid_argument(fmt::format("state id {} out of range", id));
  std::uint64_t g = id >> n_;
  std::uint64_t s = id & ((std::uint64_t{1} << n_) - 1);
  const Block& blk = block_for_group(g);
  std::uint64_t local = g - blk.group_start;

  const int k = blk.k;
  std::uint64_t dlow = local & ((std::uint64_t{1} << k) - 1);
  local >>= k;
  std::uint64_t jbits = local & ((std::uint64_t{1} << blk.j_bits) - 1);
  local >>= blk.j_bits;
  std::uint64_t fbits = local;
  std::uint64_t dhigh = s & ((std::uint64_t{1} << k) - 1);
  std::uint64_t cbits = s >> k;

  StabilizerCanonicalForm f;
  f.n = n_;
  f.k = k;
  f.pivots = blk.pivots;
  f.m.resize(static_cast<std::size_t>(k));
  f.d.resize(static_cast<std::size_t>(k));
  f.J.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0);

  int fpos = 0;
  for (int a = 0; a < k; ++a) {
    std::uint64_t m = bit(blk.pivots[static_cast<std::size_t>(a)]);
    for (int r : blk.col_free[static_cast<std::size_t>(a)]) {
      if ((fbits >> fpos) & 1u) m |= bit(r);
      ++fpos;
    }
    f.m[static_cast<std::size_t>(a)] = m;
    f.d[static_cast<std::size_t>(a)] =
        static_cast<int>(((dlow >> a) & 1u) | (((dhigh >> a) & 1u) << 1));
  }
  for (int b = 1; b < k; ++b)
    for (int a = 0; a < b; ++a)
      if ((jbits >> pair_index(a, b)) & 1u) {
        f.J[static_cast<std::size_t>(a * k + b)] = 1;
        f.J[static_cast<std::size_t>(b * k + a)] = 1;
      }
  int cpos = 0;
  for (int r = 0; r < n_; ++r) {
    if (blk.pivot_mask & bit(r)) continue;
    if ((cbits >> cpos) & 1u) f.c |= bit(r);
    ++cpos;
  }
  return f;
}

StabilizerTableau StabilizerStateEnumeration::tableau_for(std::uint64_t id) const {
  return tableau_of(form_for(id));
}

std::uint64_t StabilizerStateEnumeration::id_of_form(const StabilizerCanonicalForm& f) const {
  if (f.n != n_) throw std::invalid_argument("id_of_form: qubit count mismatch");
  std::uint32_t pivot_mask = 0;
  for (int p : f.pivots) pivot_mask |= static_cast<std::uint32_t>(bit(p));
  auto it = block_by_pivots_.find(pivot_mask);
  if (it == block_by_pivots_.end()) throw std::logic_error("id_of_form: unknown pivot set");
  const Block& blk = blocks_[it->second];
  const int k = blk.k;

  std::uint64_t fbits = 0, dlow = 0, dhigh = 0, jbits = 0, cbits = 0;
  int fpos = 0;
  for (int a = 0; a < k; ++a) {
    for (int r : blk.col_free[static_cast<std::size_t>(a)]) {
      if ((f.m[static_cast<std::size_t>(a)] >> r) & 1u) fbits |= std::uint64_t{1} << fpos;
      ++fpos;
    }
    dlow |= static_cast<std::uint64_t>(f.d[static_cast<std::size_t>(a)] & 1) << a;
    dhigh |= static_cast<std::uint64_t>((f.d[static_cast<std::size_t>(a)] >> 1) & 1) << a;
  }
  for (int b = 1; b < k; ++b)
    for (int a = 0; a < b; ++a)
      if (f.J[static_cast<std::size_t>(a * k + b)]) jbits |= std::uint64_t{1} << pair_index(a, b);
  int cpos = 0;
  for (int r = 0; r < n_; ++r) {
    if (blk.pivot_mask & bit(r)) continue;
    if ((f.c >> r) & 1u) cbits |= std::uint64_t{1} << cpos;
    ++cpos;
  }

  std::uint64_t local = ((fbits << blk.j_bits | jbits) << k) | dlow;
  std::uint64_t s = (cbits << k) | dhigh;
  return ((blk.group_start + local) << n_) | s;
}

std::vector<std::complex<double>> state_vector_of(const StabilizerTableau& t) {
  const int n = t.num_qubits();
  if (n > 14) throw std::invalid_argument("state_vector_of: n too large for a dense vector");
  StabilizerCanonicalForm f = canonical_form_of(t);

  static const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<std::complex<double>> psi(std::size_t{1} << n, 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(std::uint64_t{1} << f.k));
  for (std::uint32_t y = 0; y < (std::uint32_t{1} << f.k); ++y) {
    std::uint64_t mask = f.c;
    int e = 0;
    for (int a = 0; a < f.k; ++a) {
      if (!((y >> a) & 1u)) continue;
      mask ^= f.m[static_cast<std::size_t>(a)];
      e += f.d[static_cast<std::size_t>(a)];
      for (int b = a + 1; b < f.k; ++b)
        if (((y >> b) & 1u) && f.J[static_cast<std::size_t>(a * f.k + b)]) e += 2;
    }
    psi[mask] = amp * kIPow[e & 3];
  }

  for (auto& v : psi) {
    if (std::abs(v) > 1e-12) {
      std::complex<double> rot = std::conj(v) / std::abs(v);
      if (rot != std::complex<double>{1, 0})
        for (auto& w : psi) w *= rot;
      break;
    }
  }
  return psi;
}

}  // namespace romkit
