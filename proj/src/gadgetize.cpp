#include <fmt/format.h>

#include <cstdint>
#include <stdexcept>

#include "romkit/sampler.hpp"

namespace romkit {

namespace {

// Re-addresses a Pauli on the first `p.n` qubits of an n_total register.
PauliString embed_pauli(const PauliString& p, int n_total) {
  PauliString out = p;
  int shift = n_total - p.n;
  out.n = n_total;
  out.x <<= shift;
  out.z <<= shift;
  return out;
}

GadgetOp clifford_op(GateOp g) {
  GadgetOp op;
  op.kind = GadgetOp::Kind::clifford;
  op.g = g;
  return op;
}

PauliString z_on(int q, int n) {
  PauliString p;
  p.n = n;
  p.z = std::uint64_t{1} << (n - q);
  return p;
}

void append_s_power(std::vector<GateOp>& word, int q, int lambda) {
  lambda &= 3;
  if (lambda >= 2) word.push_back({CliffordGate::Z, q});
  if (lambda & 1) word.push_back({CliffordGate::S, q});
}

void append_cz(std::vector<GateOp>& word, int q, int r) {
  word.push_back({CliffordGate::H, r});
  word.push_back({CliffordGate::CNOT, q, r});
  word.push_back({CliffordGate::H, r});
}

// Turns the value table b(x) mod 8 of an even degree-2 phase polynomial on k
// qubits (b[0] == 0) into a Clifford word of S powers and CZs acting on
// target[q-1] for slot-local qubit q. Gadget corrections a(x) - a(x xor m)
// always have this form; the reconstruction check guards the derivation.
std::vector<GateOp> diagonal_word_from_table(const std::vector<int>& b, int k,
                                             const std::vector<int>& target) {
  auto bit_of = [k](int q) { return std::size_t{1} << (k - q); };
  for (int v : b)
    if (v & 1) throw std::logic_error("correction phase is not Clifford");

  std::vector<int> lambda(static_cast<std::size_t>(k) + 1, 0);
  for (int q = 1; q <= k; ++q) lambda[static_cast<std::size_t>(q)] = (b[bit_of(q)] / 2) & 3;
  std::vector<std::pair<int, int>> czs;
  for (int q = 1; q <= k; ++q)
    for (int r = q + 1; r <= k; ++r) {
      int mu = (b[bit_of(q) | bit_of(r)] / 2 - lambda[static_cast<std::size_t>(q)] -
                lambda[static_cast<std::size_t>(r)]) & 3;
      if (mu & 1) throw std::logic_error("correction phase is not Clifford");
      if (mu) czs.emplace_back(q, r);
    }

  for (std::size_t x = 0; x < b.size(); ++x) {
    int c = 0;
    for (int q = 1; q <= k; ++q)
      if (x & bit_of(q)) c += lambda[static_cast<std::size_t>(q)];
    for (auto [q, r] : czs)
      if ((x & bit_of(q)) && (x & bit_of(r))) c += 2;
    if ((c & 3) != ((b[x] / 2) & 3))
      throw std::logic_error("correction phase has degree above two");
  }

  std::vector<GateOp> word;
  for (int q = 1; q <= k; ++q)
    append_s_power(word, target[static_cast<std::size_t>(q) - 1],
                   lambda[static_cast<std::size_t>(q)]);
  for (auto [q, r] : czs)
    append_cz(word, target[static_cast<std::size_t>(q) - 1],
              target[static_cast<std::size_t>(r) - 1]);
  return word;
}

// All 2^k correction words for a slot gate: outcome mask m needs the
// diagonal with exponent a(x) - a(x xor m), which is even of degree <= 2
// once the global phase a(m) - a(0) is split off.
std::vector<std::vector<GateOp>> correction_table(const PhasePolynomialGate& g,
                                                  const std::vector<int>& target) {
  int k = g.n;
  std::size_t dim = std::size_t{1} << k;
  std::vector<int> a(dim);
  for (std::size_t x = 0; x < dim; ++x) a[x] = g.phase_exponent(x);

  std::vector<std::vector<GateOp>> words(dim);
  std::vector<int> b(dim);
  for (std::size_t m = 0; m < dim; ++m) {
    int b0 = a[0] - a[m];
    for (std::size_t x = 0; x < dim; ++x)
      b[x] = ((a[x] - a[x ^ m] - b0) % 8 + 8) % 8;
    words[m] = diagonal_word_from_table(b, k, target);
  }
  return words;
}

// A diagonal Clifford needs no ancilla: its polynomial is itself even of
// degree <= 2, so the same decomposition yields a plain gate word.
std::vector<GateOp> clifford_phase_word(const PhasePolynomialGate& g) {
  auto support = gate_support(g);
  auto local = compress_support(g);
  int k = static_cast<int>(support.size());
  std::size_t dim = std::size_t{1} << k;
  std::vector<int> b(dim);
  for (std::size_t x = 0; x < dim; ++x) b[x] = local.phase_exponent(x);
  return diagonal_word_from_table(b, k, support);
}

}  // namespace

GadgetizedCircuit gadgetize(const Circuit& c, int t_block_size) {
  if (t_block_size < 1 || t_block_size > 5)
    throw std::invalid_argument("t_block_size must be between 1 and 5");
  if (c.n_data <= 0) throw std::invalid_argument("circuit has no qubits");

  struct Pending {
    PhasePolynomialGate gate;
    std::vector<int> support;  // data qubits, slot-local order
    bool t_block = false;
  };
  std::vector<Pending> pending;
  // For a T gate: (slot, local qubit). For a phase gate: (slot, 0).
  std::vector<std::pair<int, int>> placement(c.ops.size(), {-1, -1});

  int open_t = -1;
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const CircuitOp& op = c.ops[i];
    if (op.kind == CircuitOp::Kind::t_gate) {
      if (open_t < 0 ||
          static_cast<int>(pending[static_cast<std::size_t>(open_t)].support.size()) ==
              t_block_size) {
        open_t = static_cast<int>(pending.size());
        pending.push_back({{}, {}, true});
      }
      Pending& s = pending[static_cast<std::size_t>(open_t)];
      s.support.push_back(op.t_qubit);
      s.gate.add_linear(static_cast<int>(s.support.size()), 1);
      placement[i] = {open_t, static_cast<int>(s.support.size())};
    } else if (op.kind == CircuitOp::Kind::phase_gate && !op.gate.is_clifford()) {
      placement[i] = {static_cast<int>(pending.size()), 0};
      pending.push_back({compress_support(op.gate), gate_support(op.gate), false});
    }
  }

  GadgetizedCircuit g;
  g.n_data = c.n_data;
  int anc = 0;
  g.slots.reserve(pending.size());
  for (const Pending& s : pending) {
    AncillaSlot slot;
    slot.gate = s.gate;
    slot.spec_text = gate_spec_text(s.gate);
    slot.k = static_cast<int>(s.support.size());
    slot.first_qubit = c.n_data + anc + 1;
    anc += slot.k;
    g.slots.push_back(std::move(slot));
  }
  g.n_total = c.n_data + anc;
  if (g.n_total > kMaxQubits)
    throw std::invalid_argument(
        fmt::format("gadgetized circuit needs {} qubits; limit is {}", g.n_total, kMaxQubits));

  int meas = 0;
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    const CircuitOp& op = c.ops[i];
    switch (op.kind) {
      case CircuitOp::Kind::clifford:
        g.ops.push_back(clifford_op(op.g));
        break;
      case CircuitOp::Kind::measure: {
        GadgetOp out;
        out.kind = GadgetOp::Kind::measure;
        out.p = embed_pauli(op.p, g.n_total);
        g.ops.push_back(std::move(out));
        ++meas;
        break;
      }
      case CircuitOp::Kind::t_gate: {
        auto [si, local] = placement[i];
        const AncillaSlot& slot = g.slots[static_cast<std::size_t>(si)];
        int a_q = slot.first_qubit + local - 1;
        g.ops.push_back(clifford_op({CliffordGate::CNOT, op.t_qubit, a_q}));
        GadgetOp mo;
        mo.kind = GadgetOp::Kind::measure;
        mo.p = z_on(a_q, g.n_total);
        g.ops.push_back(std::move(mo));
        GadgetOp co;
        co.kind = GadgetOp::Kind::correction;
        co.meas_first = meas;
        co.nbits = 1;
        co.words = {{}, {{CliffordGate::S, op.t_qubit}}};
        g.ops.push_back(std::move(co));
        ++meas;
        break;
      }
      case CircuitOp::Kind::phase_gate: {
        if (op.gate.is_identity()) break;
        if (op.gate.is_clifford()) {
          for (const GateOp& w : clifford_phase_word(op.gate))
            g.ops.push_back(clifford_op(w));
          break;
        }
        auto [si, unused] = placement[i];
        (void)unused;
        const AncillaSlot& slot = g.slots[static_cast<std::size_t>(si)];
        const Pending& p = pending[static_cast<std::size_t>(si)];
        for (int j = 0; j < slot.k; ++j)
          g.ops.push_back(clifford_op({CliffordGate::CNOT,
                                       p.support[static_cast<std::size_t>(j)],
                                       slot.first_qubit + j}));
        for (int j = 0; j < slot.k; ++j) {
          GadgetOp mo;
          mo.kind = GadgetOp::Kind::measure;
          mo.p = z_on(slot.first_qubit + j, g.n_total);
          g.ops.push_back(std::move(mo));
        }
        GadgetOp co;
        co.kind = GadgetOp::Kind::correction;
        co.meas_first = meas;
        co.nbits = slot.k;
        co.words = correction_table(p.gate, p.support);
        g.ops.push_back(std::move(co));
        meas += slot.k;
        break;
      }
    }
  }

  g.final_observable = embed_pauli(c.final_observable, g.n_total);
  g.num_measurements = meas;
  return g;
}

}  // namespace romkit
