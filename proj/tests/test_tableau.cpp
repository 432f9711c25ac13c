#include <doctest.h>

#include <random>
#include <set>

#include "romkit/enumerate.hpp"
#include "romkit/pauli.hpp"
#include "romkit/tableau.hpp"
#include "support/clifford_oracle.hpp"
#include "support/oracle.hpp"

using romkit::CliffordGate;
using romkit::GateOp;
using romkit::PauliString;
using romkit::StabilizerTableau;

namespace {

bool mat_close(const oracle::Mat& a, const oracle::Mat& b, double tol = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() < tol;
}

oracle::Vec tableau_vec(const StabilizerTableau& t) {
  return oracle::to_vec(romkit::state_vector_of(t));
}

}  // namespace

TEST_CASE("single-qubit gate conjugation matches dense U P U^dag") {
  const CliffordGate gates[] = {CliffordGate::H, CliffordGate::S, CliffordGate::X,
                                CliffordGate::Z, CliffordGate::SqrtX};
  std::mt19937_64 rng(11);
  for (CliffordGate g : gates) {
    oracle::Mat u = oracle::gate_matrix_1q(g);
    for (int trial = 0; trial < 40; ++trial) {
      PauliString p = oracle::random_pauli(1, rng, false);
      PauliString q = romkit::pauli_conjugate(GateOp{g, 1}, p);
      oracle::Mat lhs = oracle::pauli_matrix(q);
      oracle::Mat rhs = u * oracle::pauli_matrix(p) * u.adjoint();
      CAPTURE(static_cast<int>(g));
      CAPTURE(romkit::to_string(p));
      CHECK(mat_close(lhs, rhs));
    }
  }
}

TEST_CASE("CNOT conjugation matches dense, both orientations") {
  std::mt19937_64 rng(12);
  for (auto [c, t] : {std::pair{1, 2}, std::pair{2, 1}}) {
    oracle::Mat u = oracle::gate_dense(GateOp{CliffordGate::CNOT, c, t}, 2);
    for (int trial = 0; trial < 80; ++trial) {
      PauliString p = oracle::random_pauli(2, rng, false);
      PauliString q = romkit::pauli_conjugate(GateOp{CliffordGate::CNOT, c, t}, p);
      CHECK(mat_close(oracle::pauli_matrix(q), u * oracle::pauli_matrix(p) * u.adjoint()));
    }
  }
}

TEST_CASE("conjugation in larger registers leaves spectators alone") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3;
    auto word = oracle::random_word(n, 1, rng);
    PauliString p = oracle::random_pauli(n, rng, false);
    PauliString q = romkit::pauli_conjugate(word[0], p);
    oracle::Mat u = oracle::gate_dense(word[0], n);
    CHECK(mat_close(oracle::pauli_matrix(q), u * oracle::pauli_matrix(p) * u.adjoint()));
  }
}

TEST_CASE("gate application errors") {
  StabilizerTableau t(2);
  CHECK_THROWS_AS(t.apply(CliffordGate::H, 0), std::invalid_argument);
  CHECK_THROWS_AS(t.apply(CliffordGate::H, 3), std::invalid_argument);
  CHECK_THROWS_AS(t.apply(CliffordGate::CNOT, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(t.apply(CliffordGate::CNOT, 1, 3), std::invalid_argument);
}

TEST_CASE("random circuits: tableau state tracks dense evolution") {
  std::mt19937_64 rng(14);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      auto word = oracle::random_word(n, 24, rng);
      StabilizerTableau t(n);
      t.apply_word(word);
      oracle::Vec dense = oracle::apply_word_dense(word, oracle::zeros_state(n), n);
      CHECK(oracle::overlap(tableau_vec(t), dense) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("pauli_expectation agrees with dense bra-ket on random states") {
  std::mt19937_64 rng(15);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      auto word = oracle::random_word(n, 20, rng);
      StabilizerTableau t(n);
      t.apply_word(word);
      oracle::Vec psi = oracle::apply_word_dense(word, oracle::zeros_state(n), n);
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (2 * n)); ++idx) {
        PauliString p = romkit::pauli_from_index(n, idx);
        std::complex<double> e = psi.dot(oracle::pauli_matrix(p) * psi);
        CHECK(std::abs(static_cast<double>(t.pauli_expectation(p)) - e.real()) < 1e-9);
      }
    }
  }
}

TEST_CASE("deterministic measurements: known outcomes on |00>") {
  StabilizerTableau t(2);
  auto rz = t.measure_pauli(romkit::pauli_from_string("ZI"), [] { return false; });
  CHECK(rz.deterministic);
  CHECK(rz.outcome == +1);

  t.apply(CliffordGate::X, 2);
  auto rz2 = t.measure_pauli(romkit::pauli_from_string("IZ"), [] { return false; });
  CHECK(rz2.deterministic);
  CHECK(rz2.outcome == -1);

  t.apply(CliffordGate::H, 1);
  auto rx = t.measure_pauli(romkit::pauli_from_string("XI"), [] { return false; });
  CHECK(rx.deterministic);
  CHECK(rx.outcome == +1);
}

TEST_CASE("random-branch measurement projects like dense (I + s P)/2") {
  std::mt19937_64 rng(16);
  int checked_random = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 2;
    auto word = oracle::random_word(n, 18, rng);
    StabilizerTableau t(n);
    t.apply_word(word);
    oracle::Vec psi = oracle::apply_word_dense(word, oracle::zeros_state(n), n);

    PauliString p = oracle::random_pauli(n, rng, true);
    if (p.is_identity()) continue;
    std::complex<double> e = psi.dot(oracle::pauli_matrix(p) * psi);

    bool coin = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    auto res = t.measure_pauli(p, [&] { return coin; });

    if (std::abs(std::abs(e.real()) - 1.0) < 1e-9) {
      CHECK(res.deterministic);
      CHECK(res.outcome == (e.real() > 0 ? +1 : -1));
    } else {
      REQUIRE(std::abs(e.real()) < 1e-9);  // stabilizer expectations are -1, 0, +1
      CHECK(!res.deterministic);
      CHECK(res.outcome == (coin ? -1 : +1));
      ++checked_random;

      oracle::Mat proj =
          0.5 * (oracle::Mat::Identity(4, 4) + double(res.outcome) * oracle::pauli_matrix(p));
      oracle::Vec post = proj * psi;
      post.normalize();
      CHECK(oracle::overlap(tableau_vec(t), post) == doctest::Approx(1.0).epsilon(1e-10));

      // Measuring the same operator again must be deterministic with the same sign.
      auto res2 = t.measure_pauli(p, [] { return false; });
      CHECK(res2.deterministic);
      CHECK(res2.outcome == res.outcome);
    }
  }
  CHECK(checked_random > 20);
}

TEST_CASE("measurement rejects ill-formed operators") {
  StabilizerTableau t(2);
  PauliString bad;
  bad.n = 2;
  bad.x = 0b01;
  bad.z = 0b01;
  bad.phase = 0;  // XZ with no i factor is anti-Hermitian
  CHECK_THROWS_AS(t.measure_pauli(bad, [] { return false; }), std::invalid_argument);
  CHECK_THROWS_AS(t.measure_pauli(romkit::pauli_from_string("Z"), [] { return false; }),
                  std::invalid_argument);
}

TEST_CASE("from_rows validates stabilizer group structure") {
  StabilizerTableau t(2);
  t.apply(CliffordGate::H, 1);
  t.apply(CliffordGate::CNOT, 1, 2);
  std::vector<PauliString> stabs{t.stabilizer(0), t.stabilizer(1)};
  std::vector<PauliString> destabs{t.destabilizer(0), t.destabilizer(1)};
  CHECK_NOTHROW(StabilizerTableau::from_rows(stabs, destabs, true));

  // Swapping destabilizers breaks the pairing: destab j must anticommute with
  // stabilizer j only.
  std::vector<PauliString> swapped{destabs[1], destabs[0]};
  CHECK_THROWS_AS(StabilizerTableau::from_rows(stabs, swapped, true), std::invalid_argument);

  // Commuting "stabilizers" that are not independent: duplicate row.
  std::vector<PauliString> dup{stabs[0], stabs[0]};
  CHECK_THROWS_AS(StabilizerTableau::from_rows(dup, destabs, true), std::invalid_argument);
}

TEST_CASE("tensor of tableaux is the Kronecker product state") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    auto wa = oracle::random_word(2, 16, rng);
    auto wb = oracle::random_word(1, 12, rng);
    StabilizerTableau a(2), b(1);
    a.apply_word(wa);
    b.apply_word(wb);
    StabilizerTableau ab = a.tensor(b);
    REQUIRE(ab.num_qubits() == 3);
    oracle::Vec va = oracle::apply_word_dense(wa, oracle::zeros_state(2), 2);
    oracle::Vec vb = oracle::apply_word_dense(wb, oracle::zeros_state(1), 1);
    oracle::Vec expected = oracle::kron_vec(va, vb);
    CHECK(oracle::overlap(tableau_vec(ab), expected) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("group element walk enumerates all 2^n stabilizer group members") {
  std::mt19937_64 rng(18);
  auto word = oracle::random_word(3, 20, rng);
  StabilizerTableau t(3);
  t.apply_word(word);
  oracle::Vec psi = oracle::apply_word_dense(word, oracle::zeros_state(3), 3);

  int count = 0;
  std::set<std::uint64_t> seen;
  romkit::for_each_group_element(t, [&](const romkit::IndexedPauli& ip) {
    ++count;
    seen.insert(ip.index);
    PauliString p = romkit::pauli_from_index(3, ip.index);
    std::complex<double> e = psi.dot(oracle::pauli_matrix(p) * psi);
    // Every group element stabilizes the state with its recorded sign.
    CHECK(std::abs(e.real() - double(ip.sign)) < 1e-9);
  });
  CHECK(count == 8);
  CHECK(seen.size() == 8);  // distinct Pauli indices
  CHECK(seen.count(0) == 1);  // identity is a member
}
