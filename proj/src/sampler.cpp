#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "romkit/enumerate.hpp"
#include "romkit/sampler.hpp"

namespace romkit {

std::uint64_t sample_count(const EstimatorConfig& cfg, double l1) {
  if (!(cfg.delta > 0)) throw std::invalid_argument("delta must be positive");
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1))
    throw std::invalid_argument("epsilon must be in (0, 1)");
  if (!(l1 >= 1.0 - 1e-12)) throw std::invalid_argument("one-norm below 1");
  double n = (2.0 / (cfg.delta * cfg.delta)) * l1 * l1 * std::log(2.0 / cfg.epsilon);
  return static_cast<std::uint64_t>(std::ceil(n));
}

namespace {

// Per-slot sampling tables: one prepared tableau and sign per mixture term,
// plus the running |coef| sums the inverse-CDF draw walks.
struct SlotTable {
  std::vector<StabilizerTableau> states;
  std::vector<int> signs;
  std::vector<double> cum;
  double l1 = 1;
};

std::size_t draw_index(const std::vector<double>& cum, double u) {
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cum.begin());
  return std::min(i, cum.size() - 1);
}

struct WorkerOutcome {
  std::uint64_t plus = 0;
};

void run_samples(const GadgetizedCircuit& g, const std::vector<SlotTable>& tables,
                 std::uint64_t seed, std::uint64_t count, WorkerOutcome& out) {
  SplitMix64 rng(seed);
  auto coin = [&rng] { return rng.coin(); };
  std::vector<std::uint8_t> outcomes(static_cast<std::size_t>(g.num_measurements));

  for (std::uint64_t s = 0; s < count; ++s) {
    // One draw per slot, in slot order, before any circuit randomness; the
    // stream layout is part of the reproducibility contract.
    StabilizerTableau t(g.n_data);
    int sign = 1;
    for (const SlotTable& table : tables) {
      std::size_t i = draw_index(table.cum, rng.uniform() * table.l1);
      sign *= table.signs[i];
      t = t.tensor(table.states[i]);
    }

    std::size_t mi = 0;
    for (const GadgetOp& op : g.ops) {
      switch (op.kind) {
        case GadgetOp::Kind::clifford:
          t.apply(op.g);
          break;
        case GadgetOp::Kind::measure:
          outcomes[mi++] = t.measure_pauli(op.p, coin).outcome < 0 ? 1 : 0;
          break;
        case GadgetOp::Kind::correction: {
          std::size_t pattern = 0;
          for (int b = 0; b < op.nbits; ++b)
            pattern = (pattern << 1) |
                      outcomes[static_cast<std::size_t>(op.meas_first + b)];
          for (const GateOp& w : op.words[pattern]) t.apply(w);
          break;
        }
      }
    }

    int m = t.measure_pauli(g.final_observable, coin).outcome;
    if (sign * m > 0) ++out.plus;
  }
}

}  // namespace

EstimateResult estimate_expectation(const GadgetizedCircuit& g,
                                    const std::vector<Pseudomixture>& mixtures,
                                    const EstimatorConfig& cfg) {
  if (mixtures.size() != g.slots.size())
    throw std::invalid_argument(fmt::format("{} ancilla slots but {} mixtures",
                                            g.slots.size(), mixtures.size()));

  std::vector<SlotTable> tables;
  tables.reserve(g.slots.size());
  std::map<int, StabilizerStateEnumeration> enums;
  double l1_total = 1;
  for (std::size_t j = 0; j < g.slots.size(); ++j) {
    const Pseudomixture& mix = mixtures[j];
    if (mix.n != g.slots[j].k)
      throw std::invalid_argument(fmt::format(
          "slot {} holds {} qubits but its mixture is over {}", j, g.slots[j].k, mix.n));
    if (mix.terms.empty())
      throw std::invalid_argument(fmt::format("slot {} mixture is empty", j));
    const StabilizerStateEnumeration& e = enums.try_emplace(mix.n, mix.n).first->second;
    SlotTable table;
    table.states.reserve(mix.terms.size());
    double run = 0;
    for (const auto& [id, coef] : mix.terms) {
      if (id >= e.size())
        throw std::invalid_argument(fmt::format("state id {} out of range", id));
      table.states.push_back(e.tableau_for(id));
      table.signs.push_back(coef < 0 ? -1 : 1);
      run += std::abs(coef);
      table.cum.push_back(run);
    }
    table.l1 = run;
    l1_total *= run;
    tables.push_back(std::move(table));
  }

  std::uint64_t n = sample_count(cfg, std::max(1.0, l1_total));
  int workers = std::max(1, cfg.workers);
  if (static_cast<std::uint64_t>(workers) > n) workers = static_cast<int>(n);

  std::vector<WorkerOutcome> outs(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_samples(g, tables, cfg.seed ^ 0ull, n, outs[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::uint64_t base = n / static_cast<std::uint64_t>(workers);
    std::uint64_t extra = n % static_cast<std::uint64_t>(workers);
    for (int w = 0; w < workers; ++w) {
      std::uint64_t count = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
      pool.emplace_back(run_samples, std::cref(g), std::cref(tables),
                        cfg.seed ^ static_cast<std::uint64_t>(w), count,
                        std::ref(outs[static_cast<std::size_t>(w)]));
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t plus = 0;
  for (const WorkerOutcome& o : outs) plus += o.plus;

  EstimateResult r;
  r.l1 = l1_total;
  r.samples = n;
  r.plus_samples = plus;
  // Every sample contributes +-l1; the mean reduces to an exact count.
  r.estimate = l1_total *
               (2.0 * static_cast<double>(plus) - static_cast<double>(n)) /
               static_cast<double>(n);
  return r;
}

CostReport simulation_cost_report(
    const Circuit& c, const EstimatorConfig& cfg,
    const std::function<double(const PhasePolynomialGate&)>& gate_rom) {
  if (cfg.block_size < 1 || cfg.block_size > 5)
    throw std::invalid_argument("block_size must be between 1 and 5");

  CostReport r;
  r.t_count = c.t_gate_count();
  r.t_block_size = cfg.block_size;
  r.per_t_factor = std::pow(h_copies_exact(cfg.block_size), 1.0 / cfg.block_size);

  int full = r.t_count / cfg.block_size;
  int rem = r.t_count % cfg.block_size;
  for (int i = 0; i < full; ++i)
    r.slot_values.emplace_back(fmt::format("H^{}", cfg.block_size),
                               h_copies_exact(cfg.block_size));
  if (rem) r.slot_values.emplace_back(fmt::format("H^{}", rem), h_copies_exact(rem));

  for (const CircuitOp& op : c.ops) {
    if (op.kind != CircuitOp::Kind::phase_gate) continue;
    if (op.gate.is_clifford()) continue;
    if (!gate_rom)
      throw std::invalid_argument(
          "circuit has non-Clifford phase gates; a gate_rom callback is required");
    PhasePolynomialGate local = compress_support(op.gate);
    r.slot_values.emplace_back(gate_spec_text(local), gate_rom(local));
  }

  r.l1 = 1;
  for (const auto& [spec, value] : r.slot_values) r.l1 *= value;
  r.samples = sample_count(cfg, std::max(1.0, r.l1));
  return r;
}

}  // namespace romkit
