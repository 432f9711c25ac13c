#include "romkit/lp.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "romkit/kernels.hpp"

namespace romkit {

namespace kn = kernels;

double Pseudomixture::l1() const {
  double s = 0;
  for (const auto& [id, c] : terms) s += std::abs(c);
  return s;
}

double Pseudomixture::affine_sum() const {
  double s = 0;
  for (const auto& [id, c] : terms) s += c;
  return s;
}

namespace {

// Basic variable: signed basis column, or a phase-1 artificial unit column
// (artificial's `col` is its home row).
struct BasicVar {
  std::uint64_t col = 0;
  double sign = 1.0;
  bool artificial = true;
};

struct Entering {
  std::uint64_t col = 0;
  double sign = 1.0;    // +1 = positive-coefficient variable, -1 = negated
  double score = 0.0;   // |y.A_col| - cost, > tol when violating
  double merit = -1.0;  // score^2 / devex weight, the selection key
  bool found = false;
};

class SimplexSolver {
 public:
  SimplexSolver(const PauliVector& b, const BasisMatrix& A, const SimplexOptions& opt)
      : A_(A), opt_(opt), m_(static_cast<int>(A.rows)), b_(b), bwork_(b) {
    std::size_t mm = static_cast<std::size_t>(m_);
    // The instances here are brutally degenerate (most right-hand-side
    // entries vanish and the columns are highly symmetric), which stalls any
    // textbook pivot rule. A fixed perturbation of the right-hand side makes
    // every vertex generic; it must sit well above the pivot tolerances or
    // numerical dust recreates the degeneracy. The exact b is restored at
    // extraction and the basis repaired with dual steps.
    std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (double& v : bwork_) v += 1e-5 * u(gen);
    binv_.assign(mm * mm, 0.0);
    xb_.assign(mm, 0.0);
    y_.assign(mm, 0.0);
    w_.assign(mm, 0.0);
    basic_.assign(mm, BasicVar{});
    for (int r = 0; r < m_; ++r) {
      double s = bwork_[static_cast<std::size_t>(r)] < 0 ? -1.0 : 1.0;
      basic_[static_cast<std::size_t>(r)] = BasicVar{static_cast<std::uint64_t>(r), s, true};
      row(r)[r] = s;
      xb_[static_cast<std::size_t>(r)] = std::abs(bwork_[static_cast<std::size_t>(r)]);
    }
    pool_.reserve(opt_.pool_size);
    for (std::uint64_t id : opt_.warm_columns)
      if (id < A_.cols) pool_.push_back(id);
    dedup_pool();
  }

  RobustnessResult solve() {
    run_phase(true);
    double infeas = phase_objective(true);
    if (infeas > 1e-8)
      throw std::logic_error(
          fmt::format("decomposition LP infeasible (phase-1 objective {:.3e}); the input is not "
                      "a unit-trace operator in the stabilizer span",
                      infeas));
    drive_out_artificials();
    run_phase(false);
    return extract();
  }

 private:
  double* row(int i) { return binv_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m_); }
  const double* row(int i) const {
    return binv_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m_);
  }

  void dedup_pool() {
    std::sort(pool_.begin(), pool_.end());
    pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
  }

  double phase_objective(bool phase1) const {
    double obj = 0;
    for (int i = 0; i < m_; ++i)
      if (basic_[static_cast<std::size_t>(i)].artificial == phase1)
        obj += xb_[static_cast<std::size_t>(i)];
    return obj;
  }

  // y = cB^T B^-1 for the current phase's costs (phase 1: artificials cost 1,
  // phase 2: real columns cost 1).
  void compute_multipliers(bool phase1) {
    std::fill(y_.begin(), y_.end(), 0.0);
    for (int i = 0; i < m_; ++i)
      if (basic_[static_cast<std::size_t>(i)].artificial == phase1)
        kn::axpy(1.0, row(i), y_.data(), static_cast<std::size_t>(m_));
  }

  // Up to k violating pool columns, best devex merit first.
  int collect_candidates(double cost, Entering* out, int k) {
    int n = 0;
    for (std::uint64_t id : pool_) {
      if (in_basis_.count(id)) continue;
      double t = kn::signed_gather_sum(y_.data(), A_.column(id), A_.column_signs(id),
                                       static_cast<std::uint32_t>(A_.col_nnz));
      double score = std::abs(t) - cost;
      if (score <= opt_.pricing_tol) continue;
      double merit = score * score / devex_[id];
      if (n == k && merit <= out[k - 1].merit) continue;
      if (n < k) ++n;
      out[n - 1] = Entering{id, t > 0 ? 1.0 : -1.0, score, merit, true};
      for (int i = n - 1; i > 0 && out[i - 1].merit < out[i].merit; --i)
        std::swap(out[i - 1], out[i]);
    }
    return n;
  }

  // Full pass over the columns; rebuilds the candidate pool from the
  // strongest violators so subsequent iterations price only those.
  bool refill_pool(double cost) {
    constexpr std::uint64_t kChunk = 1 << 15;
    std::vector<double> scratch(kChunk);
    std::vector<std::pair<double, std::uint64_t>> violators;
    for (std::uint64_t begin = 0; begin < A_.cols; begin += kChunk) {
      std::uint64_t end = std::min(A_.cols, begin + kChunk);
      kn::price_columns(y_.data(), A_.row_idx.data(), A_.sign_words.data(),
                        static_cast<std::uint32_t>(A_.col_nnz), begin, end, scratch.data());
      for (std::uint64_t j = begin; j < end; ++j) {
        double t = scratch[j - begin];
        double score = std::abs(t) - cost;
        if (score > opt_.pricing_tol && !in_basis_.count(j))
          violators.emplace_back(score * score / devex_[j], j);
      }
      if (violators.size() > 4 * opt_.pool_size) trim_violators(violators);
    }
    trim_violators(violators);
    pool_.clear();
    for (const auto& [merit, id] : violators) pool_.push_back(id);
    dedup_pool();
    return !pool_.empty();
  }

  void trim_violators(std::vector<std::pair<double, std::uint64_t>>& v) {
    if (v.size() <= opt_.pool_size) return;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(opt_.pool_size), v.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    v.resize(opt_.pool_size);
  }

  // Bland's anti-cycling rule: first violating variable in fixed order
  // (positive variable before negated, ascending column id).
  Entering bland_scan(double cost) {
    constexpr std::uint64_t kChunk = 1 << 15;
    std::vector<double> scratch(kChunk);
    for (std::uint64_t begin = 0; begin < A_.cols; begin += kChunk) {
      std::uint64_t end = std::min(A_.cols, begin + kChunk);
      kn::price_columns(y_.data(), A_.row_idx.data(), A_.sign_words.data(),
                        static_cast<std::uint32_t>(A_.col_nnz), begin, end, scratch.data());
      for (std::uint64_t j = begin; j < end; ++j) {
        double t = scratch[j - begin];
        if (in_basis_.count(j)) continue;
        if (t - cost > opt_.pricing_tol) return Entering{j, 1.0, t - cost, 0.0, true};
        if (-t - cost > opt_.pricing_tol) return Entering{j, -1.0, -t - cost, 0.0, true};
      }
    }
    return {};
  }

  // w = sign * B^-1 A_col.
  void ftran(std::uint64_t col, double sign, double* w) const {
    const std::uint16_t* rows = A_.column(col);
    std::uint64_t signs = A_.column_signs(col);
    for (int i = 0; i < m_; ++i)
      w[i] = sign *
             kn::signed_gather_sum(row(i), rows, signs, static_cast<std::uint32_t>(A_.col_nnz));
  }

  // Smallest nonnegative ratio; ties broken toward the largest pivot unless
  // Bland mode asks for the lowest variable order.
  int ratio_test(const double* w, bool bland) const {
    int leave = -1;
    double best_theta = 0;
    for (int i = 0; i < m_; ++i) {
      double wi = w[i];
      if (wi <= opt_.ratio_tol) continue;
      // Degenerate drift can leave a basic value a hair below zero; treating
      // it as zero keeps the step nonnegative.
      double theta = std::max(0.0, xb_[static_cast<std::size_t>(i)]) / wi;
      if (leave < 0 || theta < best_theta - 1e-12) {
        leave = i;
        best_theta = theta;
      } else if (theta < best_theta + 1e-12) {
        if (bland ? var_order(i) < var_order(leave) : std::abs(wi) > std::abs(w[leave])) {
          leave = i;
          best_theta = theta;
        }
      }
    }
    return leave;
  }

  std::uint64_t var_order(int i) const {
    const BasicVar& v = basic_[static_cast<std::size_t>(i)];
    if (v.artificial) return 2 * A_.cols + v.col;
    return 2 * v.col + (v.sign < 0 ? 1 : 0);
  }

  // Devex reference weights: an approximate steepest-edge merit that steers
  // pricing toward columns whose edge actually moves the solution, which is
  // what keeps highly degenerate instances from crawling. The pivot row of
  // B^-1 needed for the update is free because the inverse is stored densely.
  // Only pooled columns are reweighted; stale weights elsewhere just make a
  // column price a little too attractively after a refill, never wrongly.
  void update_devex(int leave, const Entering& ent) {
    double aq = w_[static_cast<std::size_t>(leave)];
    double gq = devex_[ent.col];
    if (gq > 1e8) {  // framework has drifted far from its reference; restart
      std::fill(devex_.begin(), devex_.end(), 1.0);
      gq = 1.0;
    }
    double scale = gq / (aq * aq);
    const double* rho = row(leave);
    for (std::uint64_t id : pool_) {
      if (id == ent.col || in_basis_.count(id)) continue;
      double alpha = kn::signed_gather_sum(rho, A_.column(id), A_.column_signs(id),
                                           static_cast<std::uint32_t>(A_.col_nnz));
      double cand = alpha * alpha * scale;
      if (cand > devex_[id]) devex_[id] = cand;
    }
    const BasicVar& old = basic_[static_cast<std::size_t>(leave)];
    if (!old.artificial) devex_[old.col] = std::max(scale, 1.0);
  }

  void pivot(int leave, const Entering& ent) {
    double wr = w_[static_cast<std::size_t>(leave)];
    double theta = xb_[static_cast<std::size_t>(leave)] / wr;
    double* rl = row(leave);
    kn::scale(rl, 1.0 / wr, static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      if (i == leave) continue;
      double wi = w_[static_cast<std::size_t>(i)];
      if (wi != 0.0) {
        kn::axpy(-wi, rl, row(i), static_cast<std::size_t>(m_));
        xb_[static_cast<std::size_t>(i)] -= theta * wi;
        if (xb_[static_cast<std::size_t>(i)] < 0 && xb_[static_cast<std::size_t>(i)] > -1e-11)
          xb_[static_cast<std::size_t>(i)] = 0;
      }
    }
    xb_[static_cast<std::size_t>(leave)] = theta;
    const BasicVar& old = basic_[static_cast<std::size_t>(leave)];
    if (!old.artificial) in_basis_.erase(old.col);
    basic_[static_cast<std::size_t>(leave)] = BasicVar{ent.col, ent.sign, false};
    in_basis_.insert(ent.col);
  }

  void refactor() {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m_, m_);
    for (int r = 0; r < m_; ++r) {
      const BasicVar& v = basic_[static_cast<std::size_t>(r)];
      if (v.artificial) {
        B(static_cast<Eigen::Index>(v.col), r) = v.sign;
      } else {
        const std::uint16_t* rows = A_.column(v.col);
        std::uint64_t signs = A_.column_signs(v.col);
        for (int t = 0; t < A_.col_nnz; ++t)
          B(rows[t], r) = v.sign * ((signs >> t) & 1 ? -1.0 : 1.0);
      }
    }
    Eigen::MatrixXd inv = Eigen::PartialPivLU<Eigen::MatrixXd>(B).inverse();
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) row(i)[j] = inv(i, j);
    for (int i = 0; i < m_; ++i) {
      double v = kn::dot(row(i), bwork_.data(), static_cast<std::size_t>(m_));
      if (v < 0 && v > -1e-9) v = 0;
      xb_[static_cast<std::size_t>(i)] = v;
    }
  }

  void run_phase(bool phase1) {
    double cost = phase1 ? 0.0 : 1.0;
    devex_.assign(A_.cols, 1.0);  // fresh reference framework per phase
    bool bland = false;
    int stalled = 0;
    int since_refactor = 0;
    int no_leave_retries = 0;
    constexpr int kShortlist = 24;
    std::vector<Entering> cands(kShortlist);
    std::vector<double> wtmp(static_cast<std::size_t>(m_));
    std::uint64_t zero_steps = 0, bland_steps = 0;
    while (true) {
      if (iterations_ >= opt_.max_iterations)
        throw std::runtime_error(
            fmt::format("simplex iteration limit {} exhausted", opt_.max_iterations));
      if (since_refactor >= opt_.refactor_interval) {
        refactor();
        since_refactor = 0;
      }
      compute_multipliers(phase1);
      if (phase1 && phase_objective(true) <= 1e-12) return;

      Entering ent;
      if (bland) {
        ent = bland_scan(cost);
      } else {
        // Among the best-merit candidates, enter the column whose pivot makes
        // the largest actual dent in the objective. Merit alone walks into
        // degenerate traps where every step moves by ~1e-12; scoring the real
        // step costs one cheap ftran per candidate and avoids them.
        int nc = collect_candidates(cost, cands.data(), kShortlist);
        if (nc == 0 && refill_pool(cost))
          nc = collect_candidates(cost, cands.data(), kShortlist);
        double best_gain = -1.0;
        for (int i = 0; i < nc; ++i) {
          ftran(cands[i].col, cands[i].sign, wtmp.data());
          int lv = ratio_test(wtmp.data(), false);
          if (lv < 0) {
            ent = cands[i];  // defer to the retry path below
            break;
          }
          double theta = std::max(0.0, xb_[static_cast<std::size_t>(lv)]) / wtmp[lv];
          double gain = theta * cands[i].score;
          if (gain > best_gain) {
            best_gain = gain;
            ent = cands[i];
          }
        }
      }
      if (!ent.found) return;  // optimal for this phase

      ftran(ent.col, ent.sign, w_.data());
      int leave = ratio_test(w_.data(), bland);
      if (leave < 0) {
        // Geometrically impossible here (objective is bounded below by 0);
        // treat as numerical drift, refresh the factorization and retry.
        if (++no_leave_retries > 2)
          throw std::logic_error("simplex lost feasibility: no blocking row for a violating column");
        refactor();
        since_refactor = 0;
        continue;
      }
      no_leave_retries = 0;
      double theta = std::max(0.0, xb_[static_cast<std::size_t>(leave)]) /
                     w_[static_cast<std::size_t>(leave)];
      if (!bland) update_devex(leave, ent);
      pivot(leave, ent);
      ++iterations_;
      ++since_refactor;

      if (std::getenv("ROMKIT_LP_DEBUG")) {
        if (theta < 1e-10) ++zero_steps;
        if (bland) ++bland_steps;
        if (iterations_ % 1000 == 0)
          std::fprintf(stderr,
                       "iter=%llu phase%d obj=%.9f zero=%llu bland=%llu pool=%zu "
                       "score=%.3e theta=%.3e\n",
                       (unsigned long long)iterations_, phase1 ? 1 : 2, phase_objective(phase1),
                       (unsigned long long)zero_steps, (unsigned long long)bland_steps,
                       pool_.size(), ent.score, theta);
      }

      // A run of vanishing steps means the walk is pinned to a degenerate
      // vertex; Bland's rule grinds but provably exits it.
      if (theta > 1e-10) {
        stalled = 0;
        bland = false;
      } else if (++stalled >= opt_.stall_limit) {
        bland = true;
      }
    }
  }

  void drive_out_artificials() {
    std::vector<double> scratch;
    for (int r = 0; r < m_; ++r) {
      if (!basic_[static_cast<std::size_t>(r)].artificial) continue;
      scratch.resize(static_cast<std::size_t>(1) << 15);
      std::uint64_t found = A_.cols;
      double found_val = 0;
      for (std::uint64_t begin = 0; begin < A_.cols && found == A_.cols; begin += scratch.size()) {
        std::uint64_t end = std::min<std::uint64_t>(A_.cols, begin + scratch.size());
        kn::price_columns(row(r), A_.row_idx.data(), A_.sign_words.data(),
                          static_cast<std::uint32_t>(A_.col_nnz), begin, end, scratch.data());
        for (std::uint64_t j = begin; j < end; ++j) {
          if (std::abs(scratch[j - begin]) > 1e-6 && !in_basis_.count(j)) {
            found = j;
            found_val = scratch[j - begin];
            break;
          }
        }
      }
      if (found == A_.cols)
        throw std::logic_error("basis matrix is numerically rank-deficient");
      ftran(found, 1.0, w_.data());
      // The artificial sits at zero, so this pivot is degenerate and keeps
      // feasibility regardless of the pivot element's sign.
      (void)found_val;
      w_swap_pivot(r, found);
    }
  }

  // Degenerate pivot of column `col` into row r (used only for drive-out).
  void w_swap_pivot(int r, std::uint64_t col) {
    double wr = w_[static_cast<std::size_t>(r)];
    double* rl = row(r);
    kn::scale(rl, 1.0 / wr, static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double wi = w_[static_cast<std::size_t>(i)];
      if (wi != 0.0) kn::axpy(-wi, rl, row(i), static_cast<std::size_t>(m_));
    }
    xb_[static_cast<std::size_t>(r)] = 0;
    basic_[static_cast<std::size_t>(r)] = BasicVar{col, 1.0, false};
    in_basis_.insert(col);
  }

  // Once the exact right-hand side replaces the perturbed one, the basis is
  // still dual feasible (multipliers never depend on b) but basic values near
  // the perturbation scale can resurface slightly negative. Dual simplex
  // steps push them back to feasibility while preserving dual feasibility,
  // after which the basis is optimal for the exact problem.
  void dual_repair() {
    constexpr std::uint64_t kChunk = 1 << 15;
    std::vector<double> tj(kChunk), aj(kChunk);
    for (int step = 0;; ++step) {
      if (step >= 4 * m_) throw std::logic_error("dual repair did not converge");
      int r = -1;
      double worst = -1e-10;
      for (int i = 0; i < m_; ++i)
        if (xb_[static_cast<std::size_t>(i)] < worst) {
          worst = xb_[static_cast<std::size_t>(i)];
          r = i;
        }
      if (r < 0) return;
      compute_multipliers(false);
      const double* rho = row(r);
      Entering ent;
      double best_ratio = 0;
      double best_alpha = 0;
      for (std::uint64_t begin = 0; begin < A_.cols; begin += kChunk) {
        std::uint64_t end = std::min(A_.cols, begin + kChunk);
        kn::price_columns(y_.data(), A_.row_idx.data(), A_.sign_words.data(),
                          static_cast<std::uint32_t>(A_.col_nnz), begin, end, tj.data());
        kn::price_columns(rho, A_.row_idx.data(), A_.sign_words.data(),
                          static_cast<std::uint32_t>(A_.col_nnz), begin, end, aj.data());
        for (std::uint64_t j = begin; j < end; ++j) {
          double a = aj[j - begin];
          if (std::abs(a) <= 1e-7 || in_basis_.count(j)) continue;
          // The entering variable's pivot entry in row r must be negative:
          // the positive variable qualifies when alpha < 0, the negated one
          // (whose column is -A_j) when alpha > 0.
          double slack = a < 0 ? 1.0 - tj[j - begin] : 1.0 + tj[j - begin];
          double ratio = std::max(0.0, slack) / std::abs(a);
          if (!ent.found || ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && std::abs(a) > best_alpha)) {
            ent = Entering{j, a < 0 ? 1.0 : -1.0, slack, 0.0, true};
            best_ratio = ratio;
            best_alpha = std::abs(a);
          }
        }
      }
      if (!ent.found)
        throw std::logic_error("dual repair found no admissible pivot");
      ftran(ent.col, ent.sign, w_.data());
      if (w_[static_cast<std::size_t>(r)] >= -opt_.ratio_tol) {
        // Factorization too stale for this row; rebuild and rescan.
        refactor();
        continue;
      }
      pivot(r, ent);
      if (step % 32 == 31) refactor();
    }
  }

  RobustnessResult extract() {
    // Drop the perturbation. The optimal basis is dual feasible regardless of
    // the right-hand side, so optimality carries over once dual steps repair
    // the handful of basic values the perturbation was holding positive.
    bwork_ = b_;
    refactor();
    dual_repair();
    refactor();
    compute_multipliers(false);
    RobustnessResult res;
    res.iterations = iterations_;
    res.mixture.n = A_.n;
    double value = 0;
    for (int i = 0; i < m_; ++i) {
      const BasicVar& v = basic_[static_cast<std::size_t>(i)];
      if (v.artificial) continue;
      double xi = xb_[static_cast<std::size_t>(i)];
      value += std::abs(xi);
      if (std::abs(xi) > 1e-12) res.mixture.terms.emplace_back(v.col, v.sign * xi);
    }
    std::sort(res.mixture.terms.begin(), res.mixture.terms.end());
    res.value = value;
    res.dual.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) res.dual[static_cast<std::size_t>(i)] = -y_[static_cast<std::size_t>(i)];
    res.gap = std::abs(value - kn::dot(y_.data(), b_.data(), static_cast<std::size_t>(m_)));
    res.certified = res.gap <= 1e-6;
    return res;
  }

  const BasisMatrix& A_;
  SimplexOptions opt_;
  int m_;
  PauliVector b_;
  PauliVector bwork_;  // perturbed during the solve, exact b at extraction
  std::vector<BasicVar> basic_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> xb_;
  std::vector<double> y_;
  std::vector<double> w_;
  std::vector<double> devex_;
  std::vector<std::uint64_t> pool_;
  std::unordered_set<std::uint64_t> in_basis_;
  std::uint64_t iterations_ = 0;
};

}  // namespace

RobustnessResult rom_from_pauli_vector(const PauliVector& b, const BasisMatrix& basis,
                                       const SimplexOptions& opt) {
  if (b.size() != basis.rows)
    throw std::invalid_argument(fmt::format("pauli vector has {} entries, basis expects {}",
                                            b.size(), basis.rows));
  return SimplexSolver(b, basis, opt).solve();
}

RobustnessResult rom(const DensityOperator& rho, const BasisMatrix& basis,
                     const SimplexOptions& opt) {
  if (rho.n != basis.n)
    throw std::invalid_argument(
        fmt::format("state has {} qubits but the basis was built for {}", rho.n, basis.n));
  return rom_from_pauli_vector(pauli_vector_of(rho), basis, opt);
}

double primal_residual(const Pseudomixture& x, const PauliVector& b, const BasisMatrix& basis) {
  if (b.size() != basis.rows) throw std::invalid_argument("pauli vector size mismatch");
  std::vector<double> ax(basis.rows, 0.0);
  for (const auto& [id, coef] : x.terms) {
    if (id >= basis.cols)
      throw std::invalid_argument(fmt::format("mixture references unknown state id {}", id));
    const std::uint16_t* rows = basis.column(id);
    std::uint64_t signs = basis.column_signs(id);
    for (int t = 0; t < basis.col_nnz; ++t)
      ax[rows[t]] += ((signs >> t) & 1 ? -coef : coef);
  }
  double worst = 0;
  for (std::uint32_t r = 0; r < basis.rows; ++r)
    worst = std::max(worst, std::abs(ax[r] - b[r]));
  return worst;
}

bool verify_certificate(const RobustnessResult& r, const PauliVector& b,
                        const BasisMatrix& basis) {
  if (b.size() != basis.rows || r.dual.size() != basis.rows) return false;
  if (primal_residual(r.mixture, b, basis) > 1e-7) return false;

  // Dual feasibility: every |column . y| at most 1.
  constexpr std::uint64_t kChunk = 1 << 15;
  std::vector<double> scratch(kChunk);
  double worst = 0;
  for (std::uint64_t begin = 0; begin < basis.cols; begin += kChunk) {
    std::uint64_t end = std::min(basis.cols, begin + kChunk);
    kernels::price_columns(r.dual.data(), basis.row_idx.data(), basis.sign_words.data(),
                           static_cast<std::uint32_t>(basis.col_nnz), begin, end, scratch.data());
    for (std::uint64_t j = begin; j < end; ++j) worst = std::max(worst, std::abs(scratch[j - begin]));
  }
  if (worst > 1.0 + 1e-8) return false;

  double dual_value = -kernels::dot(b.data(), r.dual.data(), b.size());
  return std::abs(r.mixture.l1() - dual_value) <= 1e-6;
}

BlockedRom blocked_rom(const std::vector<DensityOperator>& blocks,
                       const std::vector<const BasisMatrix*>& bases, const SimplexOptions& opt) {
  if (blocks.empty() || blocks.size() != bases.size())
    throw std::invalid_argument("blocked_rom needs one basis per block");
  BlockedRom out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.blocks.push_back(rom(blocks[i], *bases[i], opt));
    out.value *= out.blocks.back().value;
  }
  return out;
}

double h_copies_exact(int m) {
  const double r2 = std::sqrt(2.0);
  switch (m) {
    case 1: return r2;
    case 2: return (1 + 3 * r2) / 3;
    case 3: return (1 + 4 * r2) / 3;
    case 4: return (3 + 8 * r2) / 5;
    case 5: return 3.68705;  // solver-verified to the reported precision
    default:
      throw std::invalid_argument(fmt::format("no exact T-state value for {} copies", m));
  }
}

RomBracket rom_bracket(int t) {
  if (t < 6) throw std::invalid_argument("bracket applies to six or more copies");
  RomBracket out;
  out.copies = t;
  // Multiplicative lower bound from the Pauli-weight norm of one copy.
  double d = (1 + std::sqrt(2.0)) / 2;
  double pw = std::pow(2.0, -t);
  out.lower = std::max(1.0, (std::pow(d, t) - pw) / (1 - pw));

  // Best submultiplicative splitting into exactly-solved blocks.
  std::vector<double> up(static_cast<std::size_t>(t) + 1, 1.0);
  std::vector<int> choice(static_cast<std::size_t>(t) + 1, 0);
  for (int k = 1; k <= t; ++k) {
    double best = 0;
    int best_j = 0;
    for (int j = 1; j <= std::min(5, k); ++j) {
      double v = h_copies_exact(j) * up[static_cast<std::size_t>(k - j)];
      if (best_j == 0 || v < best) {
        best = v;
        best_j = j;
      }
    }
    up[static_cast<std::size_t>(k)] = best;
    choice[static_cast<std::size_t>(k)] = best_j;
  }
  out.upper = up[static_cast<std::size_t>(t)];
  for (int k = t; k > 0; k -= choice[static_cast<std::size_t>(k)])
    out.split.push_back(choice[static_cast<std::size_t>(k)]);
  std::sort(out.split.rbegin(), out.split.rend());
  return out;
}

}  // namespace romkit
