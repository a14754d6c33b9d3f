#include "permbound/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <json.hpp>

#include "combinations.hpp"
#include "format.hpp"
#include "permbound/permanent.hpp"

namespace permbound {

std::string to_string(EqualityTag tag) {
  switch (tag) {
    case EqualityTag::kZeroColumn:
      return "ZeroColumn";
    case EqualityTag::kRankOneConstantModulus:
      return "RankOneConstantModulus";
    case EqualityTag::kStrict:
      return "Strict";
  }
  return "Strict";
}

ColumnMatrix EqualityWitness::reconstruct() const {
  const std::size_t n = xi.size();
  const std::size_t k = zeta.size();
  ColumnMatrix m(n, k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < k; ++c) m(j, c) = xi[j] * zeta[c] * r[c];
  return m;
}

bool RatioReport::holds(double tol) const { return slack >= -tol * rhs; }

RatioReport make_report(std::size_t n, std::size_t k, double p, double lhs, double rhs,
                        EqualityClass cls) {
  RatioReport r;
  r.n = n;
  r.k = k;
  r.p = p;
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs > 0.0) {
    r.ratio = lhs / rhs;
  } else {
    r.ratio = lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.slack = rhs - lhs;
  r.equality_class = std::move(cls);
  return r;
}

EqualityClass classify_equality(const ColumnMatrix& f, double tol) {
  const std::size_t n = f.rows();
  const std::size_t k = f.cols();

  std::vector<double> norms(k);
  double largest = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    norms[c] = p_norm(f.column(c), 2.0);
    largest = std::max(largest, norms[c]);
  }
  for (double nrm : norms) {
    if (nrm <= kZeroColumnCutoff * largest || largest == 0.0) {
      return {EqualityTag::kZeroColumn, std::nullopt};
    }
  }

  std::vector<double> modulus(k);
  for (std::size_t c = 0; c < k; ++c) {
    modulus[c] = norms[c] / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(std::abs(f(j, c)) - modulus[c]) > tol * modulus[c]) {
        return {EqualityTag::kStrict, std::nullopt};
      }
    }
  }

  std::vector<Complex> phase(n * k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t c = 0; c < k; ++c) phase[j * k + c] = f(j, c) / std::abs(f(j, c));
  auto z = [&](std::size_t j, std::size_t c) { return phase[j * k + c]; };

  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j + 1; l < n; ++l)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t m = c + 1; m < k; ++m)
          if (std::abs(z(j, c) * z(l, m) - z(j, m) * z(l, c)) > tol) {
            return {EqualityTag::kStrict, std::nullopt};
          }

  EqualityWitness w;
  w.xi.resize(n);
  w.zeta.resize(k);
  w.r = modulus;
  for (std::size_t j = 0; j < n; ++j) w.xi[j] = z(j, 0);
  for (std::size_t c = 0; c < k; ++c) w.zeta[c] = z(0, c) / z(0, 0);
  return {EqualityTag::kRankOneConstantModulus, std::move(w)};
}

double sharp_constant_p2(std::size_t n) {
  const double dn = static_cast<double>(n);
  return factorial(n) / std::pow(dn, dn / 2.0);
}

RatioReport theorem1_check(const ColumnMatrix& f) {
  if (!f.is_square()) throw std::invalid_argument("theorem1_check: matrix must be square");
  const std::size_t n = f.rows();
  const double lhs = std::abs(perm_fast(f).value);
  const double rhs = sharp_constant_p2(n) * column_norm_product(f, 2.0);
  return make_report(n, n, 2.0, lhs, rhs, classify_equality(f));
}

RatioReport hadamard_determinant_check(const ColumnMatrix& f) {
  if (!f.is_square()) {
    throw std::invalid_argument("hadamard_determinant_check: matrix must be square");
  }
  const std::size_t n = f.rows();
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> view(f.data().data(), static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
  const double lhs = std::abs(view.partialPivLu().determinant());
  const double rhs = column_norm_product(f, 2.0);
  EqualityClass cls;
  if (classify_equality(f).tag == EqualityTag::kZeroColumn) cls.tag = EqualityTag::kZeroColumn;
  return make_report(n, n, 2.0, lhs, rhs, std::move(cls));
}

namespace {

double subperm_constant(std::size_t n, std::size_t k) {
  return factorial(k) / std::pow(static_cast<double>(n), static_cast<double>(k) / 2.0);
}

}  // namespace

RatioReport theorem4_check(const ColumnMatrix& columns) {
  const std::size_t n = columns.rows();
  const std::size_t k = columns.cols();
  const double lhs = subperm_quadratic(columns).value;
  const double rhs = std::sqrt(binomial(n, k)) * subperm_constant(n, k) *
                     column_norm_product(columns, 2.0);
  return make_report(n, k, 2.0, lhs, rhs, classify_equality(columns));
}

Corollary1Report corollary1_check(const ColumnMatrix& columns, double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("corollary1_check: p must lie in [1,2]");
  const std::size_t n = columns.rows();
  const std::size_t k = columns.cols();
  const double choose = binomial(n, k);
  const double lhs = subperm_p(columns, PExponent(p)).value;
  const double rhs = std::pow(choose, 1.0 / p) * subperm_constant(n, k) *
                     column_norm_product(columns, 2.0);
  const double holder_rhs =
      std::pow(choose, 1.0 / p - 0.5) * subperm_quadratic(columns).value;
  EqualityClass cls = classify_equality(columns);
  Corollary1Report out;
  out.holder_step = make_report(n, k, p, lhs, holder_rhs, cls);
  out.bound = make_report(n, k, p, lhs, rhs, std::move(cls));
  return out;
}

double cp_lower_bound(std::size_t n, double p) {
  if (n == 0) throw std::invalid_argument("cp_lower_bound: N must be positive");
  PExponent checked(p);
  const double dn = static_cast<double>(n);
  return std::max(1.0, factorial(n) / std::pow(dn, dn / checked.value()));
}

double cp_upper_bound(std::size_t n, double p) {
  if (n == 0) throw std::invalid_argument("cp_upper_bound: N must be positive");
  if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("cp_upper_bound: p must lie in [1,2]");
  return std::pow(sharp_constant_p2(n), 2.0 - 2.0 / p);
}

std::string ratio_csv_header() { return "n,k,p,lhs,rhs,ratio,slack,class"; }

std::string to_csv_row(const RatioReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.k << ',' << fmt_double(r.p) << ',' << fmt_double(r.lhs) << ','
     << fmt_double(r.rhs) << ',' << fmt_double(r.ratio) << ',' << fmt_double(r.slack) << ','
     << to_string(r.equality_class.tag);
  return os.str();
}

std::string to_json(const RatioReport& r) {
  nlohmann::json doc = {{"n", r.n},         {"k", r.k},         {"p", r.p},
                        {"lhs", r.lhs},     {"rhs", r.rhs},     {"ratio", r.ratio},
                        {"slack", r.slack}, {"class", to_string(r.equality_class.tag)}};
  if (std::isinf(r.ratio)) doc["ratio"] = "inf";
  return doc.dump();
}

}  // namespace permbound
