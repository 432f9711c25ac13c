#include "romkit/circuit.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>

namespace romkit {

int Circuit::t_gate_count() const {
  return static_cast<int>(
      std::count_if(ops.begin(), ops.end(),
                    [](const CircuitOp& op) { return op.kind == CircuitOp::Kind::t_gate; }));
}

int Circuit::phase_gate_count() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(), [](const CircuitOp& op) {
    return op.kind == CircuitOp::Kind::phase_gate && !op.gate.is_clifford();
  }));
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error(fmt::format("line {}: {}", line, msg));
}

int parse_qubit(const std::string& tok, int n, int line) {
  std::size_t used = 0;
  int q = 0;
  try {
    q = std::stoi(tok, &used);
  } catch (const std::exception&) {
    fail(line, fmt::format("expected a qubit index, got '{}'", tok));
  }
  if (used != tok.size() || q < 1 || q > n)
    fail(line, fmt::format("qubit {} out of range 1..{}", tok, n));
  return q;
}

PauliString parse_pauli(const std::string& body, int n, int line) {
  PauliString p;
  try {
    p = pauli_from_string(body);
  } catch (const std::exception& e) {
    fail(line, e.what());
  }
  if (p.n != n) fail(line, fmt::format("Pauli covers {} qubits, circuit has {}", p.n, n));
  if (!p.is_hermitian()) fail(line, "measured Pauli must be Hermitian");
  return p;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_header = false;
  bool have_observable = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string word;
    if (!(ls >> word)) continue;
    if (have_observable) fail(line, "OBSERVE must be the last operation");
    if (!have_header) {
      if (word != "qubits") fail(line, "circuit must start with 'qubits <n>'");
      std::string count;
      if (!(ls >> count)) fail(line, "missing qubit count");
      std::size_t used = 0;
      int n = 0;
      try {
        n = std::stoi(count, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != count.size() || n < 1 || n > kMaxQubits)
        fail(line, fmt::format("qubit count must be in 1..{}", kMaxQubits));
      c.n_data = n;
      have_header = true;
      continue;
    }
    CircuitOp op;
    if (word == "H" || word == "S" || word == "X" || word == "Z" || word == "SQRTX") {
      std::string qt;
      if (!(ls >> qt)) fail(line, fmt::format("{} needs a qubit", word));
      CliffordGate g = word == "H"   ? CliffordGate::H
                       : word == "S" ? CliffordGate::S
                       : word == "X" ? CliffordGate::X
                       : word == "Z" ? CliffordGate::Z
                                     : CliffordGate::SqrtX;
      op.kind = CircuitOp::Kind::clifford;
      op.g = {g, parse_qubit(qt, c.n_data, line)};
    } else if (word == "CNOT") {
      std::string a, b;
      if (!(ls >> a >> b)) fail(line, "CNOT needs control and target");
      int qa = parse_qubit(a, c.n_data, line), qb = parse_qubit(b, c.n_data, line);
      if (qa == qb) fail(line, "CNOT control and target must differ");
      op.kind = CircuitOp::Kind::clifford;
      op.g = {CliffordGate::CNOT, qa, qb};
    } else if (word == "T") {
      std::string qt;
      if (!(ls >> qt)) fail(line, "T needs a qubit");
      op.kind = CircuitOp::Kind::t_gate;
      op.t_qubit = parse_qubit(qt, c.n_data, line);
    } else if (word == "GATE") {
      std::string rest;
      std::getline(ls, rest);
      // error offsets should be relative to the spec text, not the line
      if (auto first = rest.find_first_not_of(" \t"); first != std::string::npos)
        rest.erase(0, first);
      StateSpec spec;
      try {
        spec = parse_state_spec(rest);
      } catch (const StateSpecError& e) {
        fail(line, fmt::format("bad gate spec at offset {}: {}", e.position, e.what()));
      }
      if (!spec.gate) fail(line, "GATE needs a diagonal-gate spec, not a state");
      if (spec.gate->n > c.n_data)
        fail(line, fmt::format("gate touches qubit {}, circuit has {}", spec.gate->n, c.n_data));
      op.kind = CircuitOp::Kind::phase_gate;
      op.gate = *spec.gate;
    } else if (word == "MEASURE") {
      std::string body;
      if (!(ls >> body)) fail(line, "MEASURE needs a Pauli string");
      op.kind = CircuitOp::Kind::measure;
      op.p = parse_pauli(body, c.n_data, line);
    } else if (word == "OBSERVE") {
      std::string body;
      if (!(ls >> body)) fail(line, "OBSERVE needs a Pauli string");
      c.final_observable = parse_pauli(body, c.n_data, line);
      have_observable = true;
      continue;
    } else {
      fail(line, fmt::format("unknown operation '{}'", word));
    }
    std::string extra;
    if (ls >> extra) fail(line, fmt::format("unexpected trailing token '{}'", extra));
    c.ops.push_back(std::move(op));
  }
  if (!have_header) throw std::runtime_error("empty circuit: missing 'qubits <n>' header");
  if (!have_observable) throw std::runtime_error("circuit is missing its OBSERVE line");
  return c;
}

}  // namespace romkit
