#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "permbound/cp_optimizer.hpp"
#include "permbound/matrix.hpp"

namespace permbound {

/// Multilinear functional of M vectors in C^N,
///   J(f_1..f_M) = sum_{k_1..k_M} J[k_1..k_M] prod_j f_j[k_j],
/// with a dense coefficient tensor stored with k_1 most significant.
class MultilinearForm {
 public:
  MultilinearForm(std::size_t arity, std::size_t dim, ComplexVector coeffs);

  /// J = 1 on tuples that are permutations of {0..N-1}, else 0; arity N.
  /// J(f_1..f_N) is then perm of the matrix with columns f_j.
  static MultilinearForm permanent_tensor(std::size_t n);
  static MultilinearForm single_term(std::size_t arity, std::size_t dim, Complex c);
  static MultilinearForm random_nonnegative(std::size_t arity, std::size_t dim, RngSeed seed);

  std::size_t arity() const { return arity_; }
  std::size_t dim() const { return dim_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  MultilinearForm scaled(Complex c) const;

 private:
  std::size_t arity_;
  std::size_t dim_;
  ComplexVector coeffs_;
};

/// Reciprocal exponents (1/p_1, ..., 1/p_M), each in [0, 1]; 0 is the max-norm.
class PVector {
 public:
  explicit PVector(std::vector<double> reciprocals);
  static PVector uniform(std::size_t m, double reciprocal);

  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t j) const { return r_[j]; }
  std::span<const double> reciprocals() const { return r_; }

  /// t * q + (1 - t) * r.
  static PVector blend(const PVector& q, const PVector& r, double t);

 private:
  std::vector<double> r_;
};

/// |v|_p with p = 1/reciprocal; reciprocal 0 gives max |v_k|.
double norm_for_reciprocal(std::span<const Complex> v, double reciprocal);

Complex evaluate_form(const MultilinearForm& form, std::span<const ComplexVector> vectors);

/// Lower estimate of sup |J(f)| / prod_j |f_j|_{p_j}.
///
/// Block-coordinate ascent: with every slot but one fixed, J is linear in the
/// free vector, and its maximum over the unit p_j-sphere is the dual norm of
/// the coefficient vector, attained in closed form. Sweeps repeat until the
/// relative gain drops below config.tol. Starts are all-ones vectors, the
/// standard-basis assignment f_j = e_{j mod N}, then config.num_starts random
/// complex starts; deterministic in config.seed.
double norm_constant(const MultilinearForm& form, const PVector& pvec,
                     const OptimizationConfig& config);

struct LogConvexityRow {
  double t = 0.0;
  std::vector<double> pvec;
  double midpoint_estimate = 0.0;
  double endpoint_bound = 0.0;  // C(q)^t C(r)^(1-t) from the endpoint estimates
  bool violation = false;
};

struct LogConvexityReport {
  double estimate_q = 0.0;
  double estimate_r = 0.0;
  std::vector<LogConvexityRow> rows;

  bool passed() const;
};

inline constexpr double kLogConvexityRelTol = 1e-4;

/// Checks C(t q + (1-t) r) <= C(q)^t C(r)^(1-t) at every t of the grid.
/// All three constants are optimization estimates, so a row is a violation
/// only when the interior estimate exceeds the endpoint bound by more than
/// rel_tol relative.
LogConvexityReport logconvexity_check(const MultilinearForm& form, const PVector& q,
                                      const PVector& r, std::span<const double> t_grid,
                                      const OptimizationConfig& config,
                                      double rel_tol = kLogConvexityRelTol);

/// c_q^t c_r^(1-t).
double interpolated_constant(double c_q, double c_r, double t);

/// t in [0,1] with t + (1 - t)/2 = 1/p, i.e. the weight on the p = 1 end of
/// the segment from p = 1 to p = 2.
double segment_weight_for_p(double p);

std::string logconvexity_csv(const LogConvexityReport& report);
std::string to_json(const LogConvexityReport& report);

}  // namespace permbound
