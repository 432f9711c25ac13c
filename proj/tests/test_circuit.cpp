#include <doctest.h>

#include <string>

#include "romkit/circuit.hpp"

using namespace romkit;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_circuit(text);
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  FAIL("expected parse_circuit to throw for:\n" << text);
  return {};
}

}  // namespace

TEST_CASE("circuit parser accepts every op kind") {
  Circuit c = parse_circuit(
      "# prepare, inject, observe\n"
      "qubits 3\n"
      "\n"
      "H 1\n"
      "S 2          # phase\n"
      "X 3\n"
      "Z 1\n"
      "SQRTX 2\n"
      "CNOT 1 3\n"
      "T 2\n"
      "GATE CCZ_123\n"
      "GATE T_1 CS_12\n"
      "MEASURE ZIZ\n"
      "MEASURE -XYI\n"
      "OBSERVE XXX\n");
  CHECK(c.n_data == 3);
  REQUIRE(c.ops.size() == 11);

  CHECK(c.ops[0].kind == CircuitOp::Kind::clifford);
  CHECK(c.ops[0].g.gate == CliffordGate::H);
  CHECK(c.ops[0].g.q1 == 1);
  CHECK(c.ops[4].g.gate == CliffordGate::SqrtX);
  CHECK(c.ops[5].g.gate == CliffordGate::CNOT);
  CHECK(c.ops[5].g.q1 == 1);
  CHECK(c.ops[5].g.q2 == 3);

  CHECK(c.ops[6].kind == CircuitOp::Kind::t_gate);
  CHECK(c.ops[6].t_qubit == 2);

  CHECK(c.ops[7].kind == CircuitOp::Kind::phase_gate);
  CHECK(c.ops[7].gate.cubic.size() == 1);
  CHECK(c.ops[8].gate.linear.at(1) == 1);
  CHECK(c.ops[8].gate.quadratic.at({1, 2}) == 1);

  CHECK(c.ops[9].kind == CircuitOp::Kind::measure);
  CHECK(to_string(c.ops[9].p) == "+ZIZ");
  CHECK(to_string(c.ops[10].p) == "-XYI");

  CHECK(to_string(c.final_observable) == "+XXX");
  CHECK(c.t_gate_count() == 1);
  CHECK(c.phase_gate_count() == 2);
}

TEST_CASE("clifford GATE lines do not count as magic") {
  Circuit c = parse_circuit(
      "qubits 2\n"
      "GATE CZ_12 S_1\n"
      "GATE CS_12\n"
      "OBSERVE ZZ\n");
  CHECK(c.phase_gate_count() == 1);  // only the CS line
  CHECK(c.t_gate_count() == 0);
}

TEST_CASE("circuit parser errors name the offending line") {
  CHECK(parse_error("H 1\n").find("line 1") != std::string::npos);
  CHECK(parse_error("H 1\n").find("qubits") != std::string::npos);
  CHECK(parse_error("qubits\n") == "line 1: missing qubit count");
  CHECK(parse_error("qubits 0\n").find("qubit count") != std::string::npos);
  CHECK(parse_error("qubits two\n").find("qubit count") != std::string::npos);

  std::string base = "qubits 2\n";
  CHECK(parse_error(base + "H 3\nOBSERVE ZZ\n") == "line 2: qubit 3 out of range 1..2");
  CHECK(parse_error(base + "H 0\nOBSERVE ZZ\n").find("out of range") != std::string::npos);
  CHECK(parse_error(base + "H\nOBSERVE ZZ\n") == "line 2: H needs a qubit");
  CHECK(parse_error(base + "CNOT 1\nOBSERVE ZZ\n").find("control and target") !=
        std::string::npos);
  CHECK(parse_error(base + "CNOT 2 2\nOBSERVE ZZ\n") ==
        "line 2: CNOT control and target must differ");
  CHECK(parse_error(base + "CPHASE 1 2\nOBSERVE ZZ\n") ==
        "line 2: unknown operation 'CPHASE'");
  CHECK(parse_error(base + "H 1 2\nOBSERVE ZZ\n").find("trailing token") !=
        std::string::npos);

  // GATE payloads reuse the state-spec grammar but must stay gate-valued and
  // inside the register.
  CHECK(parse_error(base + "GATE hoggar\nOBSERVE ZZ\n").find("not a state") !=
        std::string::npos);
  CHECK(parse_error(base + "GATE CCZ_123\nOBSERVE ZZ\n").find("touches qubit 3") !=
        std::string::npos);
  CHECK(parse_error(base + "GATE CS_11\nOBSERVE ZZ\n").find("offset 3") !=
        std::string::npos);

  CHECK(parse_error(base + "MEASURE ZZZ\nOBSERVE ZZ\n").find("covers 3 qubits") !=
        std::string::npos);
  CHECK(parse_error(base + "MEASURE iZZ\nOBSERVE ZZ\n").find("Hermitian") !=
        std::string::npos);
  CHECK(parse_error(base + "MEASURE QQ\nOBSERVE ZZ\n").find("line 2") !=
        std::string::npos);

  CHECK(parse_error(base + "OBSERVE ZZ\nH 1\n") ==
        "line 3: OBSERVE must be the last operation");
  CHECK(parse_error(base + "H 1\n") == "circuit is missing its OBSERVE line");
  CHECK(parse_error("") == "empty circuit: missing 'qubits <n>' header");
  CHECK(parse_error("# only comments\n\n").find("missing 'qubits") !=
        std::string::npos);
}
