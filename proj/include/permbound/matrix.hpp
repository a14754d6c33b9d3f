#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace permbound {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Exponent of an l^p length, 1 <= p < infinity.
class PExponent {
 public:
  explicit PExponent(double p);
  double value() const { return p_; }

 private:
  double p_;
};

/// 64-bit seed for the deterministic generators.
struct RngSeed {
  std::uint64_t value = 0;
};

/// Independent per-item seed for item `index` of a seeded batch (splitmix64).
RngSeed derive_seed(RngSeed base, std::uint64_t index);

/// Dense N x K complex matrix whose column k is the vector f_k.
///
/// Entries are stored row-major. 1 <= K <= N and every entry is finite.
/// Row-vector conventions (K vectors laid out as the rows of a K x N array)
/// are converted with from_rows(), which places them in the columns.
class ColumnMatrix {
 public:
  ColumnMatrix(std::size_t n_rows, std::size_t n_cols);
  ColumnMatrix(std::size_t n_rows, std::size_t n_cols, ComplexVector entries);

  static ColumnMatrix identity(std::size_t n);
  static ColumnMatrix ones(std::size_t n, std::size_t k);
  static ColumnMatrix from_columns(const std::vector<ComplexVector>& columns);
  /// K vectors given as rows of length N become the N x K matrix of columns.
  static ColumnMatrix from_rows(const std::vector<ComplexVector>& rows);
  static ColumnMatrix from_real(std::size_t n_rows, std::size_t n_cols,
                                const std::vector<double>& row_major);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  bool is_square() const { return n_rows_ == n_cols_; }

  Complex operator()(std::size_t row, std::size_t col) const {
    return entries_[row * n_cols_ + col];
  }
  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * n_cols_ + col];
  }

  ComplexVector column(std::size_t col) const;
  void set_column(std::size_t col, std::span<const Complex> values);
  std::span<const Complex> data() const { return entries_; }

  ColumnMatrix transpose() const;
  ColumnMatrix abs() const;
  /// Copy with the given rows and all columns kept, in the given order.
  ColumnMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Copy with row `row` and column `col` removed (square input only).
  ColumnMatrix minor(std::size_t row, std::size_t col) const;

  bool is_entrywise_nonnegative() const;
  bool is_entrywise_positive() const;
  double max_abs() const;

  friend bool operator==(const ColumnMatrix&, const ColumnMatrix&) = default;

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  ComplexVector entries_;
};

/// (sum_k |v_k|^p)^(1/p). Throws on an empty vector or non-finite entries.
double p_norm(std::span<const Complex> v, PExponent p);
double p_norm(std::span<const Complex> v, double p);
/// max_k |v_k|; the p = infinity end of the scale.
double max_norm(std::span<const Complex> v);

/// Product over columns of the column p-norms.
double column_norm_product(const ColumnMatrix& m, double p);

/// F[j][k] = xi_j * zeta_k * r_k, an N x K rank-one matrix whose columns have
/// constant modulus r_k (xi has length N; zeta and r have length K <= N).
/// xi and zeta must be unit modulus within 1e-12, r strictly positive.
ColumnMatrix make_rank_one_constant_modulus(std::span<const Complex> xi,
                                            std::span<const Complex> zeta,
                                            std::span<const double> r);

/// The 3x3 circulant with columns (1,x,y), (y,1,x), (x,y,1).
ColumnMatrix make_circulant3(double x, double y);

enum class RandomMode { kComplexGaussian, kNonnegUniform };

/// Deterministic in (n, k, mode, seed). Nonneg-uniform entries lie in [0,1].
ColumnMatrix random_matrix(std::size_t n, std::size_t k, RandomMode mode,
                           RngSeed seed);

/// Matrix exchange format {"n","k","re","im"}, row-major.
std::string to_json(const ColumnMatrix& m);
ColumnMatrix matrix_from_json(const std::string& text);
ColumnMatrix load_matrix(const std::string& path);
void save_matrix(const ColumnMatrix& m, const std::string& path);

}  // namespace permbound
