#include <doctest.h>

#include <random>
#include <set>

#include "romkit/enumerate.hpp"
#include "support/clifford_oracle.hpp"
#include "support/oracle.hpp"

using romkit::StabilizerStateEnumeration;
using romkit::StabilizerTableau;

namespace {

oracle::Vec state_vec(const StabilizerTableau& t) {
  return oracle::to_vec(romkit::state_vector_of(t));
}

// Independent projector route: rho = prod_i (I + g_i)/2 built from dense
// generator matrices. For a valid tableau this is |psi><psi|.
oracle::Mat projector_of(const StabilizerTableau& t) {
  int n = t.num_qubits();
  Eigen::Index dim = Eigen::Index{1} << n;
  oracle::Mat rho = oracle::Mat::Identity(dim, dim);
  for (int i = 0; i < n; ++i) {
    rho = rho * 0.5 * (oracle::Mat::Identity(dim, dim) + oracle::pauli_matrix(t.stabilizer(i)));
  }
  return rho;
}

bool is_projector_onto(const oracle::Mat& rho, const oracle::Vec& psi) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-9) return false;
  return ((rho * psi) - psi).cwiseAbs().maxCoeff() < 1e-9;
}

}  // namespace

TEST_CASE("state counts match the closed-form product") {
  // Independent evaluation of 2^n prod_{j<=n} (2^j + 1).
  auto closed_form = [](int n) {
    std::uint64_t c = std::uint64_t{1} << n;
    for (int j = 1; j <= n; ++j) c *= (std::uint64_t{1} << j) + 1;
    return c;
  };
  CHECK(closed_form(1) == 6);
  CHECK(closed_form(2) == 60);
  CHECK(closed_form(3) == 1080);
  CHECK(closed_form(4) == 36720);
  CHECK(closed_form(5) == 2423520);
  for (int n = 1; n <= 5; ++n) {
    CHECK(romkit::stabilizer_state_count(n) == closed_form(n));
    StabilizerStateEnumeration e(n);
    CHECK(e.size() == closed_form(n));
  }
  CHECK_THROWS_AS(StabilizerStateEnumeration(0), std::invalid_argument);
  CHECK_THROWS_AS(StabilizerStateEnumeration(6), std::invalid_argument);
  CHECK_THROWS_AS(romkit::stabilizer_state_count(0), std::invalid_argument);
}

TEST_CASE("single-qubit ids are ordered |0>,|1>,|+>,|->,|i+>,|i->") {
  StabilizerStateEnumeration e(1);
  REQUIRE(e.size() == 6);
  const double s = 1.0 / std::sqrt(2.0);
  const std::complex<double> i{0, 1};
  std::vector<oracle::Vec> expected(6, oracle::Vec(2));
  expected[0] << 1, 0;
  expected[1] << 0, 1;
  expected[2] << s, s;
  expected[3] << s, -s;
  expected[4] << s, i * s;
  expected[5] << s, -i * s;
  for (std::uint64_t id = 0; id < 6; ++id) {
    oracle::Vec v = state_vec(e.tableau_for(id));
    CAPTURE(id);
    CHECK((v - expected[id]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("exhaustive n<=2: ids round-trip, states are distinct and valid") {
  for (int n = 1; n <= 2; ++n) {
    StabilizerStateEnumeration e(n);
    std::vector<oracle::Vec> vecs;
    vecs.reserve(e.size());
    for (std::uint64_t id = 0; id < e.size(); ++id) {
      StabilizerTableau t = e.tableau_for(id);
      CHECK(e.id_of(t) == id);

      // Rows must form a genuine commuting independent set with destabilizers.
      std::vector<romkit::PauliString> stabs, destabs;
      for (int r = 0; r < n; ++r) {
        stabs.push_back(t.stabilizer(r));
        destabs.push_back(t.destabilizer(r));
      }
      CHECK_NOTHROW(StabilizerTableau::from_rows(stabs, destabs, true));

      oracle::Vec v = state_vec(t);
      CHECK(std::abs(v.norm() - 1.0) < 1e-12);
      CHECK(is_projector_onto(projector_of(t), v));
      vecs.push_back(std::move(v));
    }
    // Pairwise distinct as states: no two ids give overlap 1.
    for (std::size_t a = 0; a < vecs.size(); ++a)
      for (std::size_t b = a + 1; b < vecs.size(); ++b)
        CHECK(oracle::overlap(vecs[a], vecs[b]) < 1.0 - 1e-9);
  }
}

TEST_CASE("n=3: sampled ids round-trip and match the projector oracle") {
  StabilizerStateEnumeration e(3);
  REQUIRE(e.size() == 1080);
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<std::uint64_t> pick(0, e.size() - 1);
  for (int trial = 0; trial < 400; ++trial) {
    std::uint64_t id = pick(rng);
    StabilizerTableau t = e.tableau_for(id);
    CHECK(e.id_of(t) == id);
    if (trial < 60) {
      oracle::Vec v = state_vec(t);
      CHECK(is_projector_onto(projector_of(t), v));
    }
  }
}

TEST_CASE("n=4 and n=5: sampled ids round-trip") {
  std::mt19937_64 rng(22);
  for (int n : {4, 5}) {
    StabilizerStateEnumeration e(n);
    std::uniform_int_distribution<std::uint64_t> pick(0, e.size() - 1);
    for (int trial = 0; trial < 150; ++trial) {
      std::uint64_t id = pick(rng);
      CHECK(e.id_of(e.tableau_for(id)) == id);
    }
  }
}

TEST_CASE("canonical form is generator-set independent") {
  // Scramble the generating set by multiplying rows together and by applying
  // random circuits; the id of the underlying state must not move.
  std::mt19937_64 rng(23);
  StabilizerStateEnumeration e(3);
  for (int trial = 0; trial < 120; ++trial) {
    auto word = oracle::random_word(3, 25, rng);
    StabilizerTableau t(3);
    t.apply_word(word);
    std::uint64_t id = e.id_of(t);

    StabilizerTableau canon = e.tableau_for(id);
    oracle::Vec direct = oracle::apply_word_dense(word, oracle::zeros_state(3), 3);
    CHECK(oracle::overlap(state_vec(canon), direct) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("ids partition by X-support rank blocks") {
  // The k=0 block comes first and its sign bits are the coset mask itself,
  // so ids 0..2^n-1 are the computational basis states in index order.
  StabilizerStateEnumeration e(2);
  for (std::uint64_t id = 0; id < 4; ++id) {
    oracle::Vec v = state_vec(e.tableau_for(id));
    oracle::Vec expected = oracle::Vec::Zero(4);
    expected(static_cast<Eigen::Index>(id)) = 1;
    CHECK((v - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("form accessors reject out-of-range ids") {
  StabilizerStateEnumeration e(2);
  CHECK_THROWS_AS(e.form_for(e.size()), std::invalid_argument);
  StabilizerStateEnumeration e3(3);
  StabilizerTableau t(3);
  CHECK_THROWS_AS(e.id_of(t), std::invalid_argument);  // qubit count mismatch
}
