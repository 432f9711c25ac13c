#include "romkit/states.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "romkit/enumerate.hpp"

namespace romkit {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

std::complex<double> omega_pow(int k) {
  // e^{i pi k / 4}; k is kept in [0, 8).
  static const std::complex<double> table[8] = {
      {1, 0},
      {M_SQRT1_2, M_SQRT1_2},
      {0, 1},
      {-M_SQRT1_2, M_SQRT1_2},
      {-1, 0},
      {-M_SQRT1_2, -M_SQRT1_2},
      {0, -1},
      {M_SQRT1_2, -M_SQRT1_2},
  };
  return table[k & 7];
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// The single-qubit unitary with the largest Choi-state robustness. Column
// orthogonality pins the last entry to -i given the other three.
CMat most_robust_unitary_1q() {
  CMat u(2, 2);
  u << 1.0, std::polar(1.0, 3 * M_PI / 4), std::polar(1.0, -M_PI / 4),
      std::complex<double>(0, -1);
  return u / std::sqrt(2.0);
}

// Its two-qubit counterpart.
CMat most_robust_unitary_2q() {
  CMat u(4, 4);
  u << std::complex<double>(-1, -2), std::complex<double>(3, 1), std::complex<double>(1, -3), 0.0,
      std::complex<double>(1, -3), std::complex<double>(-3, -1), std::complex<double>(-1, -2), 0.0,
      std::complex<double>(3, 1), std::complex<double>(1, 2), std::complex<double>(-3, -1), 0.0,
      0.0, 0.0, 0.0, 5.0;
  return u / 5.0;
}

void check_qubit(int q, int n, const char* what) {
  if (q < 1 || q > n)
    throw std::invalid_argument(fmt::format("{} qubit {} out of range 1..{}", what, q, n));
}

}  // namespace

void PhasePolynomialGate::add_linear(int q, int k) {
  if (q < 1) throw std::invalid_argument("qubit indices are 1-based");
  n = std::max(n, q);
  int v = ((linear[q] + k) % 8 + 8) % 8;
  if (v == 0)
    linear.erase(q);
  else
    linear[q] = v;
}

void PhasePolynomialGate::add_quadratic(int q, int r, int k) {
  if (q < 1 || r < 1) throw std::invalid_argument("qubit indices are 1-based");
  if (q == r) throw std::invalid_argument("two-qubit phase term needs distinct qubits");
  if (q > r) std::swap(q, r);
  n = std::max(n, r);
  auto key = std::make_pair(q, r);
  int v = ((quadratic[key] + k) % 4 + 4) % 4;
  if (v == 0)
    quadratic.erase(key);
  else
    quadratic[key] = v;
}

void PhasePolynomialGate::add_cubic(int q, int r, int s, int k) {
  if (q < 1 || r < 1 || s < 1) throw std::invalid_argument("qubit indices are 1-based");
  std::array<int, 3> key{q, r, s};
  std::sort(key.begin(), key.end());
  if (key[0] == key[1] || key[1] == key[2])
    throw std::invalid_argument("three-qubit phase term needs distinct qubits");
  n = std::max(n, key[2]);
  int v = ((cubic[key] + k) % 2 + 2) % 2;
  if (v == 0)
    cubic.erase(key);
  else
    cubic[key] = v;
}

int PhasePolynomialGate::phase_exponent(std::uint64_t x) const {
  auto bit = [&](int q) { return (x >> (n - q)) & 1u; };
  int a = 0;
  for (const auto& [q, k] : linear) a += k * static_cast<int>(bit(q));
  for (const auto& [qr, k] : quadratic)
    a += 2 * k * static_cast<int>(bit(qr.first) & bit(qr.second));
  for (const auto& [qrs, k] : cubic)
    a += 4 * k * static_cast<int>(bit(qrs[0]) & bit(qrs[1]) & bit(qrs[2]));
  return a & 7;
}

CMat PhasePolynomialGate::matrix() const {
  if (n < 1) throw std::invalid_argument("phase polynomial gate has no qubits");
  Eigen::Index dim = Eigen::Index{1} << n;
  CMat u = CMat::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x)
    u(x, x) = omega_pow(phase_exponent(static_cast<std::uint64_t>(x)));
  return u;
}

bool PhasePolynomialGate::is_clifford() const {
  for (const auto& [q, k] : linear)
    if (k % 2) return false;
  for (const auto& [qr, k] : quadratic)
    if (k % 2) return false;
  return cubic.empty();
}

std::vector<int> gate_support(const PhasePolynomialGate& g) {
  std::set<int> s;
  for (const auto& [q, k] : g.linear) s.insert(q);
  for (const auto& [qr, k] : g.quadratic) {
    s.insert(qr.first);
    s.insert(qr.second);
  }
  for (const auto& [t, k] : g.cubic) {
    s.insert(t[0]);
    s.insert(t[1]);
    s.insert(t[2]);
  }
  return {s.begin(), s.end()};
}

PhasePolynomialGate compress_support(const PhasePolynomialGate& g) {
  auto support = gate_support(g);
  std::map<int, int> to_local;
  for (std::size_t i = 0; i < support.size(); ++i)
    to_local[support[i]] = static_cast<int>(i) + 1;
  PhasePolynomialGate out;
  for (const auto& [q, k] : g.linear) out.add_linear(to_local[q], k);
  for (const auto& [qr, k] : g.quadratic)
    out.add_quadratic(to_local[qr.first], to_local[qr.second], k);
  for (const auto& [t, k] : g.cubic)
    out.add_cubic(to_local[t[0]], to_local[t[1]], to_local[t[2]], k);
  return out;
}

std::string gate_spec_text(const PhasePolynomialGate& g) {
  std::vector<std::string> parts;
  for (const auto& [q, k] : g.linear) {
    if (k & 4) parts.push_back(fmt::format("Z_{}", q));
    if (k & 2) parts.push_back(fmt::format("S_{}", q));
    if (k & 1) parts.push_back(fmt::format("T_{}", q));
  }
  for (const auto& [qr, k] : g.quadratic) {
    if (k & 2) parts.push_back(fmt::format("CZ_{}{}", qr.first, qr.second));
    if (k & 1) parts.push_back(fmt::format("CS_{}{}", qr.first, qr.second));
  }
  for (const auto& [t, k] : g.cubic)
    if (k & 1) parts.push_back(fmt::format("CCZ_{}{}{}", t[0], t[1], t[2]));
  return fmt::format("{}", fmt::join(parts, " "));
}

int StateSpec::Factor::qubits() const {
  switch (kind) {
    case Kind::h_copies:
    case Kind::f_copies:
      return copies;
    case Kind::hoggar:
      return 3;
    case Kind::jam_gate:
      return 2 * jam_inner.n;
    case Kind::jam_opt1:
      return 2;
    case Kind::jam_opt2:
      return 4;
    default:
      return 1;
  }
}

DensityOperator resource_state(const PhasePolynomialGate& g) {
  if (g.n < 1) throw std::invalid_argument("resource state needs at least one qubit");
  if (g.n > kMaxDenseQubits)
    throw std::invalid_argument(
        fmt::format("resource state needs {} qubits, dense cap is {}", g.n, kMaxDenseQubits));
  Eigen::Index dim = Eigen::Index{1} << g.n;
  CVec psi(dim);
  double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index x = 0; x < dim; ++x)
    psi(x) = norm * omega_pow(g.phase_exponent(static_cast<std::uint64_t>(x)));
  return DensityOperator::pure(g.n, psi);
}

DensityOperator hoggar_state() {
  CVec psi(8);
  psi << std::complex<double>(1, 1), 0.0, -1.0, 1.0, -kI, 1.0, 0.0, 0.0;
  return DensityOperator::pure(3, psi / std::sqrt(6.0));
}

DensityOperator jamiolkowski_state(const CMat& u) {
  Eigen::Index dim = u.rows();
  if (dim < 2 || u.cols() != dim || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("Choi construction needs a square power-of-two unitary");
  int n = std::countr_zero(static_cast<unsigned>(dim));
  if (2 * n > kMaxDenseQubits)
    throw std::invalid_argument(
        fmt::format("Choi state needs {} qubits, dense cap is {}", 2 * n, kMaxDenseQubits));
  if (((u * u.adjoint()) - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Choi construction needs a unitary matrix");
  CVec psi = CVec::Zero(dim * dim);
  double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index k = 0; k < dim; ++k) psi(j * dim + k) = norm * u(k, j);
  return DensityOperator::pure(2 * n, psi);
}

DensityOperator bloch_state(double rx, double ry, double rz) {
  if (rx * rx + ry * ry + rz * rz > 1.0 + 1e-12)
    throw std::invalid_argument(
        fmt::format("Bloch vector ({}, {}, {}) lies outside the unit ball", rx, ry, rz));
  CMat m(2, 2);
  m << 0.5 * (1 + rz), 0.5 * std::complex<double>(rx, -ry), 0.5 * std::complex<double>(rx, ry),
      0.5 * (1 - rz);
  return DensityOperator::from_matrix(1, m);
}

DensityOperator rho_h_state(double r) {
  if (std::abs(r) > 1.0 + 1e-12)
    throw std::invalid_argument(fmt::format("radius {} lies outside [-1, 1]", r));
  return bloch_state(r * M_SQRT1_2, 0.0, r * M_SQRT1_2);
}

DensityOperator rho_f_state(double r) {
  if (std::abs(r) > 1.0 + 1e-12)
    throw std::invalid_argument(fmt::format("radius {} lies outside [-1, 1]", r));
  double c = r / std::sqrt(3.0);
  return bloch_state(c, c, c);
}

DensityOperator equatorial_state(double phi) {
  return bloch_state(std::cos(phi), std::sin(phi), 0.0);
}

CMat clifford_word_matrix(const std::vector<GateOp>& word, int n) {
  if (n < 1 || n > kMaxDenseQubits)
    throw std::invalid_argument(fmt::format("dense Clifford word supports 1..{} qubits, got {}",
                                            kMaxDenseQubits, n));
  Eigen::Index dim = Eigen::Index{1} << n;
  CMat acc = CMat::Identity(dim, dim);
  CMat one(2, 2);
  for (const GateOp& op : word) {
    check_qubit(op.q1, n, "gate");
    CMat g = CMat::Zero(dim, dim);
    switch (op.gate) {
      case CliffordGate::H:
        one << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
        break;
      case CliffordGate::S:
        one << 1, 0, 0, kI;
        break;
      case CliffordGate::X:
        one << 0, 1, 1, 0;
        break;
      case CliffordGate::Z:
        one << 1, 0, 0, -1;
        break;
      case CliffordGate::SqrtX:
        one << 0.5 * std::complex<double>(1, 1), 0.5 * std::complex<double>(1, -1),
            0.5 * std::complex<double>(1, -1), 0.5 * std::complex<double>(1, 1);
        break;
      case CliffordGate::CNOT: {
        check_qubit(op.q2, n, "gate");
        if (op.q1 == op.q2)
          throw std::invalid_argument("CNOT needs distinct control and target");
        Eigen::Index cm = Eigen::Index{1} << (n - op.q1);
        Eigen::Index tm = Eigen::Index{1} << (n - op.q2);
        for (Eigen::Index t = 0; t < dim; ++t) g((t & cm) ? (t ^ tm) : t, t) = 1.0;
        acc = g * acc;
        continue;
      }
    }
    Eigen::Index bm = Eigen::Index{1} << (n - op.q1);
    for (Eigen::Index t = 0; t < dim; ++t) {
      Eigen::Index base = t & ~bm;
      Eigen::Index bt = (t & bm) ? 1 : 0;
      g(base, t) = one(0, bt);
      g(base | bm, t) = one(1, bt);
    }
    acc = g * acc;
  }
  return acc;
}

ChannelStep ChannelStep::unitary_step(std::vector<GateOp> w) {
  ChannelStep s;
  s.kind = Kind::unitary;
  s.word = std::move(w);
  return s;
}

ChannelStep ChannelStep::measure_step(PauliString p, bool postselect, int outcome) {
  ChannelStep s;
  s.kind = Kind::measure;
  s.observable = std::move(p);
  s.postselect = postselect;
  s.postselect_outcome = outcome;
  return s;
}

ChannelStep ChannelStep::append_step(int qubits, std::uint64_t state_id) {
  ChannelStep s;
  s.kind = Kind::append;
  s.append_qubits = qubits;
  s.append_state_id = state_id;
  return s;
}

ChannelStep ChannelStep::discard_step(int qubit) {
  ChannelStep s;
  s.kind = Kind::discard;
  s.discard_qubit = qubit;
  return s;
}

ChannelStep ChannelStep::conditional_step(int measurement, std::vector<GateOp> w) {
  ChannelStep s;
  s.kind = Kind::conditional;
  s.condition_measurement = measurement;
  s.word = std::move(w);
  return s;
}

namespace {

CMat pauli_dense(const PauliString& p) {
  Eigen::Index dim = Eigen::Index{1} << p.n;
  CMat m = CMat::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    int sgn = std::popcount(static_cast<std::uint64_t>(c) & p.z) & 1 ? -1 : 1;
    m(static_cast<Eigen::Index>(c ^ static_cast<Eigen::Index>(p.x)), c) =
        static_cast<double>(sgn) * omega_pow(2 * p.phase);
  }
  return m;
}

// Unnormalized outcome branch: trace carries the probability mass.
struct Branch {
  CMat m;
  std::vector<int> outcomes;  // 0 for +1, 1 for -1, in measurement order
};

}  // namespace

DensityOperator apply_stabilizer_channel(const DensityOperator& rho,
                                         const std::vector<ChannelStep>& steps) {
  int n = rho.n;
  std::vector<Branch> branches{{rho.matrix, {}}};
  int measurements = 0;
  for (const ChannelStep& step : steps) {
    switch (step.kind) {
      case ChannelStep::Kind::unitary: {
        CMat u = clifford_word_matrix(step.word, n);
        for (Branch& br : branches) br.m = u * br.m * u.adjoint();
        break;
      }
      case ChannelStep::Kind::measure: {
        if (step.observable.n != n)
          throw std::invalid_argument(fmt::format(
              "measurement acts on {} qubits, state has {}", step.observable.n, n));
        if (!step.observable.is_hermitian())
          throw std::invalid_argument("measurement operator must be Hermitian");
        CMat p = pauli_dense(step.observable);
        Eigen::Index dim = branches.front().m.rows();
        CMat proj_plus = 0.5 * (CMat::Identity(dim, dim) + p);
        CMat proj_minus = 0.5 * (CMat::Identity(dim, dim) - p);
        std::vector<Branch> next;
        for (Branch& br : branches) {
          for (int bit = 0; bit < 2; ++bit) {
            if (step.postselect && bit != (step.postselect_outcome < 0 ? 1 : 0)) continue;
            const CMat& proj = bit ? proj_minus : proj_plus;
            CMat out = proj * br.m * proj;
            if (out.trace().real() < 1e-14) continue;
            Branch nb{std::move(out), br.outcomes};
            nb.outcomes.push_back(bit);
            next.push_back(std::move(nb));
          }
        }
        branches = std::move(next);
        ++measurements;
        break;
      }
      case ChannelStep::Kind::append: {
        if (step.append_qubits < 1 || n + step.append_qubits > kMaxDenseQubits)
          throw std::invalid_argument(
              fmt::format("appending {} qubits to {} exceeds the dense cap of {}",
                          step.append_qubits, n, kMaxDenseQubits));
        StabilizerStateEnumeration e(step.append_qubits);
        auto psi = state_vector_of(e.tableau_for(step.append_state_id));
        Eigen::Index ad = Eigen::Index{1} << step.append_qubits;
        CMat sigma(ad, ad);
        for (Eigen::Index i = 0; i < ad; ++i)
          for (Eigen::Index j = 0; j < ad; ++j)
            sigma(i, j) = psi[static_cast<std::size_t>(i)] *
                          std::conj(psi[static_cast<std::size_t>(j)]);
        for (Branch& br : branches) br.m = kron(br.m, sigma);
        n += step.append_qubits;
        break;
      }
      case ChannelStep::Kind::discard: {
        if (n < 2)
          throw std::invalid_argument("cannot discard the last remaining qubit");
        check_qubit(step.discard_qubit, n, "discard");
        int bit = n - step.discard_qubit;
        Eigen::Index low = Eigen::Index{1} << bit;
        Eigen::Index half = Eigen::Index{1} << (n - 1);
        for (Branch& br : branches) {
          CMat out = CMat::Zero(half, half);
          for (Eigen::Index r = 0; r < half; ++r) {
            Eigen::Index rl = r & (low - 1), rh = (r >> bit) << (bit + 1);
            for (Eigen::Index c = 0; c < half; ++c) {
              Eigen::Index cl = c & (low - 1), ch = (c >> bit) << (bit + 1);
              out(r, c) = br.m(rh | rl, ch | cl) + br.m(rh | low | rl, ch | low | cl);
            }
          }
          br.m = std::move(out);
        }
        --n;
        break;
      }
      case ChannelStep::Kind::conditional: {
        if (step.condition_measurement < 0 || step.condition_measurement >= measurements)
          throw std::invalid_argument(
              fmt::format("conditional references measurement {}, only {} recorded",
                          step.condition_measurement, measurements));
        CMat u = clifford_word_matrix(step.word, n);
        for (Branch& br : branches)
          if (br.outcomes[static_cast<std::size_t>(step.condition_measurement)])
            br.m = u * br.m * u.adjoint();
        break;
      }
    }
  }
  Eigen::Index dim = Eigen::Index{1} << n;
  CMat total = CMat::Zero(dim, dim);
  for (const Branch& br : branches) total += br.m;
  double tr = total.trace().real();
  if (tr < 1e-12)
    throw std::runtime_error("channel output has vanishing trace (impossible postselection)");
  // Invariants hold by construction; skip the eigenvalue sweep.
  return DensityOperator::from_matrix(n, total / tr, false);
}

DensityOperator build_state(const StateSpec& spec) {
  if (spec.gate) return resource_state(*spec.gate);
  if (spec.num_qubits > kMaxDenseQubits)
    throw std::invalid_argument(fmt::format("state spec needs {} qubits, dense cap is {}",
                                            spec.num_qubits, kMaxDenseQubits));
  CMat acc = CMat::Identity(1, 1);
  using Kind = StateSpec::Factor::Kind;
  for (const StateSpec::Factor& f : spec.factors) {
    CMat part;
    switch (f.kind) {
      case Kind::h_copies:
      case Kind::f_copies: {
        CMat one = (f.kind == Kind::h_copies ? rho_h_state(1.0) : rho_f_state(1.0)).matrix;
        part = one;
        for (int c = 1; c < f.copies; ++c) part = kron(part, one);
        break;
      }
      case Kind::bloch:
        part = bloch_state(f.arg[0], f.arg[1], f.arg[2]).matrix;
        break;
      case Kind::hoggar:
        part = hoggar_state().matrix;
        break;
      case Kind::jam_gate:
        part = jamiolkowski_state(f.jam_inner.matrix()).matrix;
        break;
      case Kind::jam_opt1:
        part = jamiolkowski_state(most_robust_unitary_1q()).matrix;
        break;
      case Kind::jam_opt2:
        part = jamiolkowski_state(most_robust_unitary_2q()).matrix;
        break;
      case Kind::equatorial:
        part = equatorial_state(f.arg[0]).matrix;
        break;
      case Kind::rho_h:
        part = rho_h_state(f.arg[0]).matrix;
        break;
      case Kind::rho_f:
        part = rho_f_state(f.arg[0]).matrix;
        break;
    }
    acc = acc.rows() == 1 ? part : kron(acc, part);
  }
  return DensityOperator::from_matrix(spec.num_qubits, acc);
}

DensityOperator build_state(const std::string& text) { return build_state(parse_state_spec(text)); }

}  // namespace romkit
