#include "permbound/cp_optimizer.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "format.hpp"
#include "parallel.hpp"
#include "permbound/permanent.hpp"

namespace permbound {

void OptimizationConfig::validate() const {
  if (num_starts < 1) throw std::invalid_argument("OptimizationConfig: num_starts must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("OptimizationConfig: tol must be positive");
  if (!(step_init > 0.0)) throw std::invalid_argument("OptimizationConfig: step_init must be positive");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
    throw std::invalid_argument("OptimizationConfig: step_shrink must lie in (0,1)");
  }
}

double ratio(const ColumnMatrix& f, double p) {
  if (!f.is_square()) throw std::invalid_argument("ratio: matrix must be square");
  double denominator = 1.0;
  for (std::size_t k = 0; k < f.cols(); ++k) {
    const double norm = p_norm(f.column(k), p);
    if (norm == 0.0) throw std::invalid_argument("ratio: zero column");
    denominator *= norm;
  }
  return std::abs(perm_fast(f).value) / denominator;
}

namespace {

// Nonnegative real matrix kept as plain doubles during the ascent.
struct Point {
  std::size_t n;
  std::vector<double> entries;  // row-major

  double& at(std::size_t j, std::size_t k) { return entries[j * n + k]; }
  double at(std::size_t j, std::size_t k) const { return entries[j * n + k]; }

  ColumnMatrix matrix() const {
    return ColumnMatrix::from_real(n, n, entries);
  }
};

// Rescales each column to unit p-norm; false if some column vanished.
bool normalize_columns(Point& x, double p) {
  for (std::size_t k = 0; k < x.n; ++k) {
    double scale = 0.0;
    for (std::size_t j = 0; j < x.n; ++j) scale = std::max(scale, x.at(j, k));
    if (scale == 0.0) return false;
    double sum = 0.0;
    for (std::size_t j = 0; j < x.n; ++j) sum += std::pow(x.at(j, k) / scale, p);
    const double norm = scale * std::pow(sum, 1.0 / p);
    for (std::size_t j = 0; j < x.n; ++j) x.at(j, k) /= norm;
  }
  return true;
}

// log perm on the unit-column manifold; -inf when the permanent vanishes.
double log_objective(const Point& x) {
  const double perm = perm_fast(x.matrix()).value.real();
  return perm > 0.0 ? std::log(perm) : -std::numeric_limits<double>::infinity();
}

Point to_point(const ColumnMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("ascend_ratio: matrix must be square");
  Point x{m.rows(), std::vector<double>(m.rows() * m.rows())};
  for (std::size_t j = 0; j < x.n; ++j)
    for (std::size_t k = 0; k < x.n; ++k) x.at(j, k) = std::abs(m(j, k));
  return x;
}

std::vector<ColumnMatrix> starting_points(std::size_t n, const OptimizationConfig& config) {
  std::vector<ColumnMatrix> starts;
  starts.push_back(ColumnMatrix::identity(n));
  if (n > 1) {
    ColumnMatrix shifted(n, n);
    for (std::size_t k = 0; k < n; ++k) shifted((k + 1) % n, k) = 1.0;
    starts.push_back(std::move(shifted));
  }
  starts.push_back(ColumnMatrix::ones(n, n));
  for (std::size_t i = 0; i < config.num_starts; ++i) {
    starts.push_back(random_matrix(n, n, RandomMode::kNonnegUniform, derive_seed(config.seed, i)));
  }
  return starts;
}

}  // namespace

AscentResult ascend_ratio(const ColumnMatrix& start, double p, const OptimizationConfig& config) {
  config.validate();
  PExponent checked(p);
  Point x = to_point(start);
  if (!normalize_columns(x, checked.value())) throw std::invalid_argument("ascend_ratio: zero column");
  const std::size_t n = x.n;

  AscentResult out;
  double objective = log_objective(x);
  double step = config.step_init;
  std::size_t iter = 0;
  for (; iter < config.max_iters && std::isfinite(objective); ++iter) {
    const ColumnMatrix grad_perm = perm_minor_gradient(x.matrix());
    const double perm = std::exp(objective);
    Point direction{n, std::vector<double>(n * n)};
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        direction.at(j, k) = grad_perm(j, k).real() / perm - std::pow(x.at(j, k), p - 1.0);
      }

    bool accepted = false;
    double gain = 0.0;
    while (step > 1e-16) {
      Point trial = x;
      for (std::size_t i = 0; i < trial.entries.size(); ++i) {
        trial.entries[i] = std::max(0.0, trial.entries[i] + step * direction.entries[i]);
      }
      if (normalize_columns(trial, p)) {
        const double value = log_objective(trial);
        if (value > objective) {
          gain = value - objective;
          x = std::move(trial);
          objective = value;
          accepted = true;
          break;
        }
      }
      step *= config.step_shrink;
    }
    if (!accepted) break;
    out.objective_history.push_back(objective);
    step = std::min(step * 2.0, config.step_init * 64.0);
    // gain is the log of the ratio improvement, i.e. its relative size.
    if (gain < config.tol) {
      ++iter;
      break;
    }
  }

  out.matrix = x.matrix();
  out.ratio = std::isfinite(objective) ? std::exp(objective) : 0.0;
  out.iterations = iter;
  return out;
}

OptimizationResult estimate_cp(std::size_t n, double p, const OptimizationConfig& config) {
  config.validate();
  if (n < 1) throw std::invalid_argument("estimate_cp: N must be >= 1");
  PExponent checked(p);

  const std::vector<ColumnMatrix> starts = starting_points(n, config);
  std::vector<AscentResult> runs(starts.size());
  run_indexed(starts.size(), config.threads,
              [&](std::size_t i) { runs[i] = ascend_ratio(starts[i], p, config); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].ratio > runs[best].ratio) best = i;
  }
  OptimizationResult result;
  result.n = n;
  result.p = checked.value();
  result.best_ratio = runs[best].ratio;
  result.best_matrix = runs[best].matrix;
  result.iterations = runs[best].iterations;
  for (const auto& run : runs) {
    if (run.ratio >= result.best_ratio * (1.0 - 1e-6)) ++result.starts_converged_to_best;
  }
  result.bound_gap_lower = result.best_ratio - cp_lower_bound(n, p);
  result.bound_gap_upper = p <= 2.0 ? cp_upper_bound(n, p) - result.best_ratio
                                    : std::numeric_limits<double>::quiet_NaN();
  return result;
}

RatioReport n2_closed_form_check(double x, double y, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("n2_closed_form_check: p must lie in [1,2]");
  if (!(x >= 0.0) || !(y >= 0.0)) throw std::invalid_argument("n2_closed_form_check: x, y must be >= 0");
  const double lhs = 1.0 + x * y;
  const double rhs = std::pow(1.0 + std::pow(x, p), 1.0 / p) * std::pow(1.0 + std::pow(y, p), 1.0 / p);
  const ColumnMatrix f = ColumnMatrix::from_real(2, 2, {1.0, y, x, 1.0});
  return make_report(2, 2, p, lhs, rhs, classify_equality(f));
}

std::vector<SweepRow> sweep_p(std::size_t n, const std::vector<double>& p_grid,
                              const OptimizationConfig& config) {
  for (double p : p_grid) {
    if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("sweep_p: grid must lie in [1,2]");
  }
  std::vector<SweepRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    const OptimizationResult r = estimate_cp(n, p, config);
    SweepRow row;
    row.n = n;
    row.p = p;
    row.best_ratio = r.best_ratio;
    row.lower_bound = cp_lower_bound(n, p);
    row.upper_bound = cp_upper_bound(n, p);
    row.conjecture_gap = r.best_ratio - row.lower_bound;
    row.starts_to_best = r.starts_converged_to_best;
    row.iters = r.iterations;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv_header() {
  return "n,p,best_ratio,lower_bound,upper_bound,conjecture_gap,starts_to_best,iters";
}

std::string to_csv_row(const SweepRow& row) {
  std::ostringstream os;
  os << row.n << ',' << fmt_double(row.p) << ',' << fmt_double(row.best_ratio) << ','
     << fmt_double(row.lower_bound) << ',' << fmt_double(row.upper_bound) << ','
     << fmt_double(row.conjecture_gap) << ',' << row.starts_to_best << ',' << row.iters;
  return os.str();
}

std::string to_json(const SweepRow& row) {
  nlohmann::json doc = {{"n", row.n},
                        {"p", row.p},
                        {"best_ratio", row.best_ratio},
                        {"lower_bound", row.lower_bound},
                        {"upper_bound", row.upper_bound},
                        {"conjecture_gap", row.conjecture_gap},
                        {"starts_to_best", row.starts_to_best},
                        {"iters", row.iters}};
  return doc.dump();
}

}  // namespace permbound
