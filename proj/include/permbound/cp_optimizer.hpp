#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "permbound/bounds.hpp"
#include "permbound/matrix.hpp"

namespace permbound {

struct OptimizationConfig {
  std::size_t num_starts = 16;
  std::size_t max_iters = 2000;
  double step_init = 0.5;
  double step_shrink = 0.5;
  double tol = 1e-12;
  RngSeed seed{0};
  std::size_t threads = 1;

  void validate() const;
};

struct OptimizationResult {
  std::size_t n = 0;
  double p = 1.0;
  double best_ratio = 0.0;
  ColumnMatrix best_matrix{1, 1};
  std::size_t starts_converged_to_best = 0;
  std::size_t iterations = 0;
  double bound_gap_lower = 0.0;  // best_ratio - cp_lower_bound
  double bound_gap_upper = 0.0;  // cp_upper_bound - best_ratio; NaN for p > 2
};

/// |perm F| / prod_j |f_j|_p. Throws on a zero column.
double ratio(const ColumnMatrix& f, double p);

/// A single projected ascent run.
struct AscentResult {
  ColumnMatrix matrix{1, 1};
  double ratio = 0.0;
  std::size_t iterations = 0;
  std::vector<double> objective_history;  // log-ratio after each accepted step
};

/// Maximizes log ratio over entrywise nonnegative matrices with unit
/// p-norm columns. The step follows the gradient of
///   log perm(F) - sum_j log |f_j|_p,
/// is clipped at zero and renormalized per column; the step length is cut
/// by step_shrink until the objective improves. Stops when the relative
/// improvement falls below tol, the step underflows, or max_iters is hit.
AscentResult ascend_ratio(const ColumnMatrix& start, double p, const OptimizationConfig& config);

/// Lower estimate of C(p) for N x N matrices. Starts are, in order: the
/// identity, a cyclic permuted diagonal, the all-ones matrix, then
/// config.num_starts random nonnegative matrices. Ties go to the earliest
/// start, so the result does not depend on config.threads.
OptimizationResult estimate_cp(std::size_t n, double p, const OptimizationConfig& config);

/// 1 + xy <= (1 + x^p)^(1/p) (1 + y^p)^(1/p) for x, y >= 0, 1 <= p <= 2.
/// The class is the structural classification of [[1, y], [x, 1]].
RatioReport n2_closed_form_check(double x, double y, double p);

struct SweepRow {
  std::size_t n = 0;
  double p = 1.0;
  double best_ratio = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double conjecture_gap = 0.0;  // best_ratio - lower_bound
  std::size_t starts_to_best = 0;
  std::size_t iters = 0;
};

/// estimate_cp at every p of the grid, which must lie in [1, 2].
std::vector<SweepRow> sweep_p(std::size_t n, const std::vector<double>& p_grid,
                              const OptimizationConfig& config);

std::string sweep_csv_header();
std::string to_csv_row(const SweepRow& row);
std::string to_json(const SweepRow& row);

}  // namespace permbound
