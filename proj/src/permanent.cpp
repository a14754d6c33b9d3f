#include "permbound/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "combinations.hpp"

namespace permbound {

namespace {

void require_square(const ColumnMatrix& m, const char* who) {
  if (!m.is_square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

bool has_zero_line(const ColumnMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t a = 0; a < n; ++a) {
    bool row_zero = true;
    bool col_zero = true;
    for (std::size_t b = 0; b < n; ++b) {
      row_zero = row_zero && m(a, b) == Complex{};
      col_zero = col_zero && m(b, a) == Complex{};
    }
    if (row_zero || col_zero) return true;
  }
  return false;
}

}  // namespace

PermanentValue perm_naive(const ColumnMatrix& m) {
  require_square(m, "perm_naive");
  const std::size_t n = m.rows();
  if (n > kNaivePermanentMaxOrder) throw std::invalid_argument("perm_naive: N > 9");
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex sum{};
  do {
    Complex term(1.0);
    for (std::size_t j = 0; j < n; ++j) term *= m(j, sigma[j]);
    sum += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return {sum, n};
}

PermanentValue perm_fast(const ColumnMatrix& m, std::size_t max_order) {
  require_square(m, "perm_fast");
  const std::size_t n = m.rows();
  if (n > max_order || n > 62) throw std::invalid_argument("perm_fast: N exceeds configured cap");
  if (has_zero_line(m)) return {Complex{}, n};

  // perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_j sum_{k in S} a_{jk}.
  // Subsets are visited in Gray-code order so each step toggles one column.
  std::vector<Complex> row_sums(n, Complex{});
  Complex total{};
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < count; ++i) {
    const auto col = static_cast<std::size_t>(std::countr_zero(i));
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    if (gray & bit) {
      for (std::size_t j = 0; j < n; ++j) row_sums[j] += m(j, col);
    } else {
      for (std::size_t j = 0; j < n; ++j) row_sums[j] -= m(j, col);
    }
    Complex prod(1.0);
    for (std::size_t j = 0; j < n; ++j) prod *= row_sums[j];
    if ((std::popcount(gray) & 1) != 0) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  if (n % 2 == 1) total = -total;
  return {total, n};
}

ColumnMatrix perm_minor_gradient(const ColumnMatrix& m) {
  require_square(m, "perm_minor_gradient");
  const std::size_t n = m.rows();
  ColumnMatrix grad(n, n);
  if (n == 1) {
    grad(0, 0) = 1.0;
    return grad;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) grad(j, k) = perm_fast(m.minor(j, k)).value;
  return grad;
}

namespace {

// Sum over K-subsets of rows of |perm(block)|^p, with Kahan compensation.
double subset_power_sum(const ColumnMatrix& columns, double p) {
  const std::size_t n = columns.rows();
  const std::size_t k = columns.cols();
  const ColumnMatrix moduli = columns.abs();
  double sum = 0.0;
  double carry = 0.0;
  for_each_combination(n, k, [&](std::span<const std::size_t> rows) {
    const double perm = perm_fast(moduli.select_rows(rows)).value.real();
    const double term = (p == 2.0) ? perm * perm : std::pow(perm, p);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  });
  return sum;
}

}  // namespace

SubpermFunctionalValue subperm_quadratic(const ColumnMatrix& columns) {
  return {std::sqrt(subset_power_sum(columns, 2.0)), columns.cols(), columns.rows(), 2.0};
}

SubpermFunctionalValue subperm_p(const ColumnMatrix& columns, PExponent p) {
  const double exponent = p.value();
  const double sum = subset_power_sum(columns, exponent);
  const double value = exponent == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / exponent);
  return {value, columns.cols(), columns.rows(), exponent};
}

}  // namespace permbound
