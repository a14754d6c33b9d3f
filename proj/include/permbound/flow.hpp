#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permbound/matrix.hpp"
#include "permbound/symgroup.hpp"

namespace permbound {

/// How a column is evolved under the heat flow.
///
/// kBruteForce lifts f^p to S_N, runs heat_semigroup and projects back.
/// kReduced uses the closed form on {0..N-1}: for g = h o pi_j the Laplacian
/// acts as Delta g = 2N (mean(h) - h) o pi_j, so f^p relaxes to its mean at
/// rate 2N. The reduced path has no degree ceiling.
enum class FlowPath { kReduced, kBruteForce };

/// Decay rate of the single-coordinate projection of Delta: 2N.
double reduced_flow_rate(std::size_t n);

/// f(t, .) = (e^{t Delta} (f o pi_j)^p)^{1/p} read back on {0..N-1}.
/// f must be entrywise nonnegative, p >= 1, t >= 0.
std::vector<double> flow_column(std::span<const double> f, std::size_t j, double p, double t,
                                FlowPath path = FlowPath::kReduced);
std::vector<double> flow_column(const SymmetricGroup& group, std::span<const double> f,
                                std::size_t j, double p, double t);

/// Matrix whose column j is flow_column(f_j, j, p, t).
ColumnMatrix evolved_columns(const ColumnMatrix& f, double p, double t,
                             FlowPath path = FlowPath::kReduced);

/// eta_p(t) = average over S_N of prod_j f_j(t, sigma(j)) = perm(evolved)/N!.
/// kBruteForce integrates the product over the group instead.
double eta(const ColumnMatrix& f, double p, double t, FlowPath path = FlowPath::kReduced);

/// d/dt eta_2 at t = 0 from the sum of squares
///   1/2 sum_{i != j} avg[(D_ij g_j / g_j - D_ij g_i / g_i)^2 rho],
/// with g_j = f_j o pi_j and rho = prod_j g_j. F must be strictly positive.
double eta2_derivative_at_zero(const ColumnMatrix& f);
double eta2_derivative_at_zero(const SymmetricGroup& group, const ColumnMatrix& f);

/// Circulant section of a trace: the evolved matrix stays circulant, and
/// (x(t), y(t)) are read off the first column normalized to leading entry 1.
struct CirculantPath {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> phi;
};

struct FlowTrace {
  double p = 2.0;
  std::vector<double> times;
  std::vector<double> eta;
  std::vector<ColumnMatrix> column_states;
  std::optional<CirculantPath> circulant;
};

FlowTrace flow_trace(const ColumnMatrix& f, double p, std::span<const double> times,
                     FlowPath path = FlowPath::kReduced);

/// (1 + x^3 + y^3 + 3xy) / (1 + x^p + y^p)^(3/p).
double circulant_phi(double x, double y, double p);

/// Heat flow started from make_circulant3(x0, y0).
FlowTrace circulant_flow(double x0, double y0, double p, std::span<const double> times);

/// One-sided slope (v(h) - v(0)) / h; the flow is only defined for t >= 0.
double initial_slope(const std::function<double(double)>& value_at, double h = 1e-7);

/// 0 followed by points-1 geometrically spaced times from t_min to t_max.
std::vector<double> geometric_time_grid(double t_min, double t_max, std::size_t points);

/// Largest drop v[i] - v[i+1] over consecutive samples (0 if nondecreasing).
double max_decrease(std::span<const double> values);

std::string to_csv(const FlowTrace& trace);
std::string to_json(const FlowTrace& trace);

}  // namespace permbound
