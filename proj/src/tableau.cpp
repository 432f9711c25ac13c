#include "romkit/tableau.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace romkit {

namespace {

std::uint64_t qubit_bit(int n, int q) {
  if (q < 1 || q > n) throw std::invalid_argument(fmt::format("qubit {} out of range [1, {}]", q, n));
  return std::uint64_t{1} << (n - q);
}

}  // namespace

PauliString pauli_conjugate(const GateOp& op, const PauliString& p) {
  PauliString r = p;
  std::uint64_t b1 = qubit_bit(p.n, op.q1);
  switch (op.gate) {
    case CliffordGate::H: {
      // X <-> Z, Y -> -Y
      bool xb = r.x & b1, zb = r.z & b1;
      if (xb != zb) {
        r.x ^= b1;
        r.z ^= b1;
      } else if (xb && zb) {
        r.phase = static_cast<std::uint8_t>((r.phase + 2) & 3);
      }
      break;
    }
    case CliffordGate::S:
      // X -> iXZ (=Y), Y -> -X
      if (r.x & b1) {
        r.z ^= b1;
        r.phase = static_cast<std::uint8_t>((r.phase + 1) & 3);
      }
      break;
    case CliffordGate::X:
      if (r.z & b1) r.phase = static_cast<std::uint8_t>((r.phase + 2) & 3);
      break;
    case CliffordGate::Z:
      if (r.x & b1) r.phase = static_cast<std::uint8_t>((r.phase + 2) & 3);
      break;
    case CliffordGate::SqrtX:
      // Z -> -iXZ (=-Y), Y -> Z
      if (r.z & b1) {
        r.x ^= b1;
        r.phase = static_cast<std::uint8_t>((r.phase + 3) & 3);
      }
      break;
    case CliffordGate::CNOT: {
      std::uint64_t b2 = qubit_bit(p.n, op.q2);
      if (op.q1 == op.q2) throw std::invalid_argument("CNOT control equals target");
      // X_c -> X_c X_t, Z_t -> Z_c Z_t; no phase in the X-then-Z convention
      if (r.x & b1) r.x ^= b2;
      if (r.z & b2) r.z ^= b1;
      break;
    }
  }
  return r;
}

StabilizerTableau::StabilizerTableau(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument(fmt::format("qubit count {} out of range [1, {}]", n, kMaxQubits));
  n_ = n;
  stab_.resize(static_cast<std::size_t>(n));
  destab_.resize(static_cast<std::size_t>(n));
  for (int q = 1; q <= n; ++q) {
    PauliString zq, xq;
    zq.n = xq.n = n;
    zq.z = qubit_bit(n, q);
    xq.x = qubit_bit(n, q);
    stab_[static_cast<std::size_t>(q - 1)] = zq;
    destab_[static_cast<std::size_t>(q - 1)] = xq;
  }
}

StabilizerTableau StabilizerTableau::from_rows(std::vector<PauliString> stabilizers,
                                               std::vector<PauliString> destabilizers,
                                               bool validate) {
  StabilizerTableau t;
  if (stabilizers.empty() || stabilizers.size() != destabilizers.size())
    throw std::invalid_argument("from_rows: need n stabilizers and n destabilizers");
  int n = stabilizers[0].n;
  if (static_cast<std::size_t>(n) != stabilizers.size())
    throw std::invalid_argument("from_rows: row count must equal qubit count");
  if (validate) {
    auto rows_ok = [&](const std::vector<PauliString>& rows) {
      for (const auto& r : rows)
        if (r.n != n || !r.is_hermitian()) return false;
      return true;
    };
    if (!rows_ok(stabilizers) || !rows_ok(destabilizers))
      throw std::invalid_argument("from_rows: rows must be Hermitian and share one size");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::size_t si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
        if (!pauli_commutes(stabilizers[si], stabilizers[sj]))
          throw std::invalid_argument("from_rows: stabilizers must commute pairwise");
        if (!pauli_commutes(destabilizers[si], destabilizers[sj]))
          throw std::invalid_argument("from_rows: destabilizers must commute pairwise");
        bool anti = !pauli_commutes(destabilizers[si], stabilizers[sj]);
        if (anti != (i == j))
          throw std::invalid_argument("from_rows: symplectic pairing violated");
      }
  }
  t.n_ = n;
  t.stab_ = std::move(stabilizers);
  t.destab_ = std::move(destabilizers);
  return t;
}

void StabilizerTableau::apply(const GateOp& op) {
  for (auto& row : stab_) row = pauli_conjugate(op, row);
  for (auto& row : destab_) row = pauli_conjugate(op, row);
}

void StabilizerTableau::apply_word(const std::vector<GateOp>& word) {
  for (const auto& op : word) apply(op);
}

MeasurementResult StabilizerTableau::measure_pauli(const PauliString& p,
                                                   const std::function<bool()>& coin) {
  if (p.n != n_)
    throw std::invalid_argument(fmt::format("measure_pauli: size mismatch ({} vs {})", p.n, n_));
  if (!p.is_hermitian()) throw std::invalid_argument("measure_pauli: operator is not Hermitian");

  int a = -1;
  for (int i = 0; i < n_; ++i)
    if (!pauli_commutes(stab_[static_cast<std::size_t>(i)], p)) {
      a = i;
      break;
    }

  if (a >= 0) {
    // Random branch: the outcome is a fair coin; rewrite the group so that
    // +-p becomes generator a and the old generator its destabilizer.
    PauliString ga = stab_[static_cast<std::size_t>(a)];
    for (int i = 0; i < n_; ++i) {
      if (i != a && !pauli_commutes(stab_[static_cast<std::size_t>(i)], p))
        stab_[static_cast<std::size_t>(i)] = pauli_multiply(ga, stab_[static_cast<std::size_t>(i)]);
      if (!pauli_commutes(destab_[static_cast<std::size_t>(i)], p))
        destab_[static_cast<std::size_t>(i)] = pauli_multiply(ga, destab_[static_cast<std::size_t>(i)]);
    }
    destab_[static_cast<std::size_t>(a)] = ga;
    int outcome = coin() ? -1 : 1;
    PauliString sp = p;
    if (outcome < 0) sp.phase = static_cast<std::uint8_t>((sp.phase + 2) & 3);
    stab_[static_cast<std::size_t>(a)] = sp;
    return {outcome, false};
  }

  // Deterministic branch: +-p lies in the group; rebuild it from the
  // generators selected by the destabilizer pairing and read off the sign.
  PauliString h;
  h.n = n_;
  for (int i = 0; i < n_; ++i)
    if (!pauli_commutes(destab_[static_cast<std::size_t>(i)], p))
      h = pauli_multiply(h, stab_[static_cast<std::size_t>(i)]);
  if (h.x != p.x || h.z != p.z)
    throw std::logic_error("measure_pauli: tableau invariants are broken");
  return {h.phase == p.phase ? 1 : -1, true};
}

int StabilizerTableau::pauli_expectation(const PauliString& p) const {
  if (p.n != n_)
    throw std::invalid_argument(fmt::format("pauli_expectation: size mismatch ({} vs {})", p.n, n_));
  if (!p.is_hermitian())
    throw std::invalid_argument("pauli_expectation: operator is not Hermitian");
  for (int i = 0; i < n_; ++i)
    if (!pauli_commutes(stab_[static_cast<std::size_t>(i)], p)) return 0;
  PauliString h;
  h.n = n_;
  for (int i = 0; i < n_; ++i)
    if (!pauli_commutes(destab_[static_cast<std::size_t>(i)], p))
      h = pauli_multiply(h, stab_[static_cast<std::size_t>(i)]);
  if (h.x != p.x || h.z != p.z)
    throw std::logic_error("pauli_expectation: tableau invariants are broken");
  return h.phase == p.phase ? 1 : -1;
}

StabilizerTableau StabilizerTableau::tensor(const StabilizerTableau& other) const {
  StabilizerTableau t;
  t.n_ = n_ + other.n_;
  if (t.n_ > kMaxQubits) throw std::invalid_argument("tensor: combined size too large");
  PauliString id_a, id_b;
  id_a.n = n_;
  id_b.n = other.n_;
  t.stab_.reserve(static_cast<std::size_t>(t.n_));
  t.destab_.reserve(static_cast<std::size_t>(t.n_));
  for (int i = 0; i < n_; ++i) {
    t.stab_.push_back(pauli_tensor(stab_[static_cast<std::size_t>(i)], id_b));
    t.destab_.push_back(pauli_tensor(destab_[static_cast<std::size_t>(i)], id_b));
  }
  for (int i = 0; i < other.n_; ++i) {
    t.stab_.push_back(pauli_tensor(id_a, other.stab_[static_cast<std::size_t>(i)]));
    t.destab_.push_back(pauli_tensor(id_a, other.destab_[static_cast<std::size_t>(i)]));
  }
  return t;
}

}  // namespace romkit
