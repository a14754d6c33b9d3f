#include "permbound/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace permbound {

namespace {

void check_shape(std::size_t n_rows, std::size_t n_cols) {
  if (n_rows == 0 || n_cols == 0) {
    throw std::invalid_argument("ColumnMatrix: dimensions must be positive");
  }
  if (n_cols > n_rows) {
    throw std::invalid_argument("ColumnMatrix: more columns than rows (K > N)");
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

PExponent::PExponent(double p) : p_(p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("PExponent: p must satisfy 1 <= p < inf");
  }
}

RngSeed derive_seed(RngSeed base, std::uint64_t index) {
  std::uint64_t z = base.value + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return RngSeed{z ^ (z >> 31)};
}

ColumnMatrix::ColumnMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols) {
  check_shape(n_rows, n_cols);
  entries_.assign(n_rows * n_cols, Complex{});
}

ColumnMatrix::ColumnMatrix(std::size_t n_rows, std::size_t n_cols, ComplexVector entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  check_shape(n_rows, n_cols);
  if (entries_.size() != n_rows * n_cols) {
    throw std::invalid_argument("ColumnMatrix: entry count does not match shape");
  }
  if (!std::all_of(entries_.begin(), entries_.end(), finite)) {
    throw std::invalid_argument("ColumnMatrix: non-finite entry");
  }
}

ColumnMatrix ColumnMatrix::identity(std::size_t n) {
  ColumnMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ColumnMatrix ColumnMatrix::ones(std::size_t n, std::size_t k) {
  return ColumnMatrix(n, k, ComplexVector(n * k, Complex(1.0)));
}

ColumnMatrix ColumnMatrix::from_columns(const std::vector<ComplexVector>& columns) {
  if (columns.empty()) throw std::invalid_argument("from_columns: no columns");
  const std::size_t n = columns.front().size();
  ComplexVector entries(n * columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k].size() != n) throw std::invalid_argument("from_columns: ragged input");
    for (std::size_t j = 0; j < n; ++j) entries[j * columns.size() + k] = columns[k][j];
  }
  return ColumnMatrix(n, columns.size(), std::move(entries));
}

ColumnMatrix ColumnMatrix::from_rows(const std::vector<ComplexVector>& rows) {
  return from_columns(rows);
}

ColumnMatrix ColumnMatrix::from_real(std::size_t n_rows, std::size_t n_cols,
                                     const std::vector<double>& row_major) {
  return ColumnMatrix(n_rows, n_cols, ComplexVector(row_major.begin(), row_major.end()));
}

ComplexVector ColumnMatrix::column(std::size_t col) const {
  ComplexVector v(n_rows_);
  for (std::size_t j = 0; j < n_rows_; ++j) v[j] = (*this)(j, col);
  return v;
}

void ColumnMatrix::set_column(std::size_t col, std::span<const Complex> values) {
  if (values.size() != n_rows_) throw std::invalid_argument("set_column: length mismatch");
  for (std::size_t j = 0; j < n_rows_; ++j) {
    if (!finite(values[j])) throw std::invalid_argument("set_column: non-finite entry");
    (*this)(j, col) = values[j];
  }
}

ColumnMatrix ColumnMatrix::transpose() const {
  ColumnMatrix t(n_cols_, n_rows_);
  for (std::size_t j = 0; j < n_rows_; ++j)
    for (std::size_t k = 0; k < n_cols_; ++k) t(k, j) = (*this)(j, k);
  return t;
}

ColumnMatrix ColumnMatrix::abs() const {
  ColumnMatrix a = *this;
  for (auto& z : a.entries_) z = std::abs(z);
  return a;
}

ColumnMatrix ColumnMatrix::select_rows(std::span<const std::size_t> rows) const {
  ColumnMatrix s(rows.size(), n_cols_);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t k = 0; k < n_cols_; ++k) s(r, k) = (*this)(rows[r], k);
  return s;
}

ColumnMatrix ColumnMatrix::minor(std::size_t row, std::size_t col) const {
  if (!is_square() || n_rows_ < 2) throw std::invalid_argument("minor: need square N >= 2");
  ColumnMatrix m(n_rows_ - 1, n_cols_ - 1);
  for (std::size_t j = 0, mj = 0; j < n_rows_; ++j) {
    if (j == row) continue;
    for (std::size_t k = 0, mk = 0; k < n_cols_; ++k) {
      if (k == col) continue;
      m(mj, mk++) = (*this)(j, k);
    }
    ++mj;
  }
  return m;
}

bool ColumnMatrix::is_entrywise_nonnegative() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Complex z) { return z.imag() == 0.0 && z.real() >= 0.0; });
}

bool ColumnMatrix::is_entrywise_positive() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](Complex z) { return z.imag() == 0.0 && z.real() > 0.0; });
}

double ColumnMatrix::max_abs() const {
  double m = 0.0;
  for (auto z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double p_norm(std::span<const Complex> v, PExponent p) {
  if (v.empty()) throw std::invalid_argument("p_norm: empty vector");
  double scale = 0.0;
  for (auto z : v) {
    if (!finite(z)) throw std::invalid_argument("p_norm: non-finite entry");
    scale = std::max(scale, std::abs(z));
  }
  if (scale == 0.0) return 0.0;
  // Scaling by the largest modulus keeps |v_k|^p in range for large p.
  const double exponent = p.value();
  double sum = 0.0;
  for (auto z : v) sum += std::pow(std::abs(z) / scale, exponent);
  return scale * std::pow(sum, 1.0 / exponent);
}

double p_norm(std::span<const Complex> v, double p) { return p_norm(v, PExponent(p)); }

double max_norm(std::span<const Complex> v) {
  if (v.empty()) throw std::invalid_argument("max_norm: empty vector");
  double m = 0.0;
  for (auto z : v) {
    if (!finite(z)) throw std::invalid_argument("max_norm: non-finite entry");
    m = std::max(m, std::abs(z));
  }
  return m;
}

double column_norm_product(const ColumnMatrix& m, double p) {
  double prod = 1.0;
  for (std::size_t k = 0; k < m.cols(); ++k) prod *= p_norm(m.column(k), p);
  return prod;
}

ColumnMatrix make_rank_one_constant_modulus(std::span<const Complex> xi,
                                            std::span<const Complex> zeta,
                                            std::span<const double> r) {
  const std::size_t n = xi.size();
  const std::size_t k = zeta.size();
  if (k == 0 || k > n || r.size() != k) {
    throw std::invalid_argument("make_rank_one_constant_modulus: length mismatch");
  }
  auto unit = [](Complex z) { return std::abs(std::abs(z) - 1.0) <= 1e-12; };
  if (!std::all_of(xi.begin(), xi.end(), unit) || !std::all_of(zeta.begin(), zeta.end(), unit)) {
    throw std::invalid_argument("make_rank_one_constant_modulus: xi, zeta must be unit modulus");
  }
  if (!std::all_of(r.begin(), r.end(), [](double x) { return x > 0.0 && std::isfinite(x); })) {
    throw std::invalid_argument("make_rank_one_constant_modulus: r must be positive");
  }
  ColumnMatrix m(n, k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < k; ++c) m(j, c) = xi[j] * zeta[c] * r[c];
  return m;
}

ColumnMatrix make_circulant3(double x, double y) {
  return ColumnMatrix::from_real(3, 3, {1.0, y, x,
                                        x, 1.0, y,
                                        y, x, 1.0});
}

ColumnMatrix random_matrix(std::size_t n, std::size_t k, RandomMode mode, RngSeed seed) {
  check_shape(n, k);
  std::mt19937_64 engine(seed.value);
  ComplexVector entries(n * k);
  if (mode == RandomMode::kComplexGaussian) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& z : entries) {
      const double re = normal(engine);
      const double im = normal(engine);
      z = Complex(re, im);
    }
  } else {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (auto& z : entries) z = uniform(engine);
  }
  return ColumnMatrix(n, k, std::move(entries));
}

std::string to_json(const ColumnMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t j = 0; j < m.rows(); ++j) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) {
      re_row.push_back(m(j, k).real());
      im_row.push_back(m(j, k).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json doc = {{"n", m.rows()}, {"k", m.cols()}, {"re", re}, {"im", im}};
  return doc.dump();
}

ColumnMatrix matrix_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  const auto n = doc.at("n").get<std::size_t>();
  const auto k = doc.at("k").get<std::size_t>();
  const auto& re = doc.at("re");
  if (re.size() != n) throw std::invalid_argument("matrix json: 're' row count mismatch");
  const bool has_im = doc.contains("im");
  if (has_im && doc.at("im").size() != n) {
    throw std::invalid_argument("matrix json: 'im' row count mismatch");
  }
  ComplexVector entries(n * k);
  for (std::size_t j = 0; j < n; ++j) {
    if (re[j].size() != k || (has_im && doc["im"][j].size() != k)) {
      throw std::invalid_argument("matrix json: column count mismatch");
    }
    for (std::size_t c = 0; c < k; ++c) {
      const double imag = has_im ? doc["im"][j][c].get<double>() : 0.0;
      entries[j * k + c] = Complex(re[j][c].get<double>(), imag);
    }
  }
  return ColumnMatrix(n, k, std::move(entries));
}

ColumnMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return matrix_from_json(buffer.str());
}

void save_matrix(const ColumnMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out << to_json(m) << '\n';
}

}  // namespace permbound
