#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "permbound/matrix.hpp"

namespace permbound {

enum class EqualityTag { kZeroColumn, kRankOneConstantModulus, kStrict };

std::string to_string(EqualityTag tag);

/// F[j][k] = xi_j * zeta_k * r_k with |xi_j| = |zeta_k| = 1 and r_k > 0.
struct EqualityWitness {
  ComplexVector xi;
  ComplexVector zeta;
  std::vector<double> r;

  ColumnMatrix reconstruct() const;
};

struct EqualityClass {
  EqualityTag tag = EqualityTag::kStrict;
  std::optional<EqualityWitness> witness;
};

/// One instance of an inequality lhs <= rhs.
struct RatioReport {
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 2.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs; 0 when both sides vanish
  double slack = 0.0;  // rhs - lhs
  EqualityClass equality_class;

  /// True unless slack < -tol * rhs (and slack < -tol when rhs is 0).
  bool holds(double tol = 1e-9) const;
};

RatioReport make_report(std::size_t n, std::size_t k, double p, double lhs, double rhs,
                        EqualityClass cls);

/// Relative cutoff for a column to count as zero, against the largest column.
inline constexpr double kZeroColumnCutoff = 1e-12;
inline constexpr double kEqualityTolerance = 1e-9;

/// Classifies F (N x K, K >= 1) by the structure that forces equality in the
/// permanent bounds: a zero column, or a rank-one matrix with constant-modulus
/// columns. The quartet identity F_jk F_lm = F_jm F_lk is tested on the phase
/// matrix; the witness is built from the first row and column.
EqualityClass classify_equality(const ColumnMatrix& f, double tol = kEqualityTolerance);

/// N! / N^(N/2).
double sharp_constant_p2(std::size_t n);

/// |perm F| <= N!/N^(N/2) prod_k |f_k|_2.
RatioReport theorem1_check(const ColumnMatrix& f);

/// |det F| <= prod_k |f_k|_2. The class records only zero columns; column
/// orthogonality (the determinant's own equality case) is not classified.
RatioReport hadamard_determinant_check(const ColumnMatrix& f);

/// Sub-permanent bound over K vectors held as the columns of an N x K matrix:
/// sqrt(sum of squared K x K permanents) <= sqrt(C(N,K)) K!/N^(K/2) prod |f_j|_2.
RatioReport theorem4_check(const ColumnMatrix& columns);

struct Corollary1Report {
  RatioReport bound;         // subperm_p <= C(N,K)^(1/p) K!/N^(K/2) prod |f_j|_2
  RatioReport holder_step;   // subperm_p <= C(N,K)^(1/p - 1/2) subperm_quadratic
};

/// Requires 1 <= p <= 2.
Corollary1Report corollary1_check(const ColumnMatrix& columns, double p);

/// max{1, N!/N^(N/p)}, attained by permuted diagonals and constant columns.
double cp_lower_bound(std::size_t n, double p);
/// (N!/N^(N/2))^(2 - 2/p), valid for 1 <= p <= 2.
double cp_upper_bound(std::size_t n, double p);

/// CSV columns: n,k,p,lhs,rhs,ratio,slack,class
std::string ratio_csv_header();
std::string to_csv_row(const RatioReport& r);
std::string to_json(const RatioReport& r);

}  // namespace permbound
