#include "permbound/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "format.hpp"
#include "parallel.hpp"

namespace permbound {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// Advances a mixed-radix counter of `arity` digits in base `dim`.
bool next_tuple(std::vector<std::size_t>& idx, std::size_t dim) {
  for (std::size_t s = idx.size(); s-- > 0;) {
    if (++idx[s] < dim) return true;
    idx[s] = 0;
  }
  return false;
}

}  // namespace

MultilinearForm::MultilinearForm(std::size_t arity, std::size_t dim, ComplexVector coeffs)
    : arity_(arity), dim_(dim), coeffs_(std::move(coeffs)) {
  if (arity == 0 || dim == 0) throw std::invalid_argument("MultilinearForm: arity and dim must be positive");
  if (coeffs_.size() != power(dim, arity)) {
    throw std::invalid_argument("MultilinearForm: coefficient count must be dim^arity");
  }
  for (auto z : coeffs_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("MultilinearForm: non-finite coefficient");
    }
  }
}

MultilinearForm MultilinearForm::permanent_tensor(std::size_t n) {
  ComplexVector coeffs(power(n, n), Complex{});
  std::vector<std::size_t> idx(n, 0);
  std::size_t flat = 0;
  do {
    std::vector<bool> seen(n, false);
    bool bijective = true;
    for (auto k : idx) {
      if (seen[k]) {
        bijective = false;
        break;
      }
      seen[k] = true;
    }
    if (bijective) coeffs[flat] = 1.0;
    ++flat;
  } while (next_tuple(idx, n));
  return MultilinearForm(n, n, std::move(coeffs));
}

MultilinearForm MultilinearForm::single_term(std::size_t arity, std::size_t dim, Complex c) {
  ComplexVector coeffs(power(dim, arity), Complex{});
  coeffs[0] = c;
  return MultilinearForm(arity, dim, std::move(coeffs));
}

MultilinearForm MultilinearForm::random_nonnegative(std::size_t arity, std::size_t dim, RngSeed seed) {
  std::mt19937_64 engine(seed.value);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  ComplexVector coeffs(power(dim, arity));
  for (auto& z : coeffs) z = uniform(engine);
  return MultilinearForm(arity, dim, std::move(coeffs));
}

MultilinearForm MultilinearForm::scaled(Complex c) const {
  ComplexVector coeffs = coeffs_;
  for (auto& z : coeffs) z *= c;
  return MultilinearForm(arity_, dim_, std::move(coeffs));
}

PVector::PVector(std::vector<double> reciprocals) : r_(std::move(reciprocals)) {
  if (r_.empty()) throw std::invalid_argument("PVector: empty");
  for (double v : r_) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("PVector: reciprocals must lie in [0,1]");
  }
}

PVector PVector::uniform(std::size_t m, double reciprocal) {
  return PVector(std::vector<double>(m, reciprocal));
}

PVector PVector::blend(const PVector& q, const PVector& r, double t) {
  if (q.size() != r.size()) throw std::invalid_argument("PVector::blend: size mismatch");
  std::vector<double> out(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    out[j] = std::clamp(t * q[j] + (1.0 - t) * r[j], 0.0, 1.0);
  }
  return PVector(std::move(out));
}

double norm_for_reciprocal(std::span<const Complex> v, double reciprocal) {
  if (reciprocal == 0.0) return max_norm(v);
  return p_norm(v, 1.0 / reciprocal);
}

Complex evaluate_form(const MultilinearForm& form, std::span<const ComplexVector> vectors) {
  if (vectors.size() != form.arity()) throw std::invalid_argument("evaluate_form: arity mismatch");
  for (const auto& v : vectors) {
    if (v.size() != form.dim()) throw std::invalid_argument("evaluate_form: dimension mismatch");
  }
  std::vector<std::size_t> idx(form.arity(), 0);
  const auto coeffs = form.coeffs();
  Complex sum{};
  std::size_t flat = 0;
  do {
    const Complex c = coeffs[flat++];
    if (c == Complex{}) continue;
    Complex term = c;
    for (std::size_t j = 0; j < idx.size(); ++j) term *= vectors[j][idx[j]];
    sum += term;
  } while (next_tuple(idx, form.dim()));
  return sum;
}

namespace {

// c with J(f) = sum_k c_k f_slot[k] when every other slot is held fixed.
ComplexVector contraction(const MultilinearForm& form, const std::vector<ComplexVector>& vectors,
                          std::size_t slot) {
  ComplexVector c(form.dim(), Complex{});
  std::vector<std::size_t> idx(form.arity(), 0);
  const auto coeffs = form.coeffs();
  std::size_t flat = 0;
  do {
    const Complex coeff = coeffs[flat++];
    if (coeff == Complex{}) continue;
    Complex term = coeff;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (j != slot) term *= vectors[j][idx[j]];
    }
    c[idx[slot]] += term;
  } while (next_tuple(idx, form.dim()));
  return c;
}

Complex unit_conj_phase(Complex z) {
  const double m = std::abs(z);
  return m > 0.0 ? std::conj(z) / m : Complex(1.0);
}

// Unit vector in the 1/reciprocal norm maximizing |sum_k c_k f_k|. Leaves
// `f` untouched when c vanishes.
void best_response(const ComplexVector& c, double reciprocal, ComplexVector& f) {
  const double scale = max_norm(c);
  if (scale == 0.0) return;
  const std::size_t n = c.size();
  if (reciprocal == 1.0) {
    // l^1 ball: all mass on the largest coefficient.
    const auto it = std::max_element(c.begin(), c.end(),
                                     [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    const auto k = static_cast<std::size_t>(it - c.begin());
    std::fill(f.begin(), f.end(), Complex{});
    f[k] = unit_conj_phase(c[k]);
    return;
  }
  if (reciprocal == 0.0) {
    for (std::size_t k = 0; k < n; ++k) f[k] = unit_conj_phase(c[k]);
    return;
  }
  // Equality case of Hoelder: |f_k| proportional to |c_k|^(q-1), q the dual exponent.
  const double p = 1.0 / reciprocal;
  const double q_minus_1 = 1.0 / (p - 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    f[k] = unit_conj_phase(c[k]) * std::pow(std::abs(c[k]) / scale, q_minus_1);
  }
  const double norm = p_norm(f, p);
  for (auto& z : f) z /= norm;
}

void normalize(ComplexVector& f, double reciprocal) {
  const double norm = norm_for_reciprocal(f, reciprocal);
  if (norm == 0.0) throw std::invalid_argument("norm_constant: zero start vector");
  for (auto& z : f) z /= norm;
}

double ascend_form(const MultilinearForm& form, const PVector& pvec,
                   std::vector<ComplexVector> vectors, const OptimizationConfig& config) {
  for (std::size_t j = 0; j < vectors.size(); ++j) normalize(vectors[j], pvec[j]);
  double value = std::abs(evaluate_form(form, vectors));
  for (std::size_t sweep = 0; sweep < config.max_iters; ++sweep) {
    for (std::size_t j = 0; j < form.arity(); ++j) {
      best_response(contraction(form, vectors, j), pvec[j], vectors[j]);
    }
    const double next = std::abs(evaluate_form(form, vectors));
    const double gain = next - value;
    value = std::max(value, next);
    if (gain <= config.tol * std::max(value, 1e-300)) break;
  }
  return value;
}

std::vector<std::vector<ComplexVector>> form_starts(const MultilinearForm& form,
                                                    const OptimizationConfig& config) {
  const std::size_t m = form.arity();
  const std::size_t n = form.dim();
  std::vector<std::vector<ComplexVector>> starts;
  starts.emplace_back(m, ComplexVector(n, Complex(1.0)));
  std::vector<ComplexVector> basis(m, ComplexVector(n, Complex{}));
  for (std::size_t j = 0; j < m; ++j) basis[j][j % n] = 1.0;
  starts.push_back(std::move(basis));

  std::mt19937_64 engine(config.seed.value);
  std::uniform_real_distribution<double> modulus(0.05, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t s = 0; s < config.num_starts; ++s) {
    std::vector<ComplexVector> start(m, ComplexVector(n));
    for (auto& v : start)
      for (auto& z : v) z = std::polar(modulus(engine), angle(engine));
    starts.push_back(std::move(start));
  }
  return starts;
}

}  // namespace

double norm_constant(const MultilinearForm& form, const PVector& pvec,
                     const OptimizationConfig& config) {
  config.validate();
  if (pvec.size() != form.arity()) throw std::invalid_argument("norm_constant: pvec size must equal arity");
  const auto starts = form_starts(form, config);
  std::vector<double> values(starts.size(), 0.0);
  run_indexed(starts.size(), config.threads,
              [&](std::size_t i) { values[i] = ascend_form(form, pvec, starts[i], config); });
  return *std::max_element(values.begin(), values.end());
}

bool LogConvexityReport::passed() const {
  return std::none_of(rows.begin(), rows.end(), [](const auto& r) { return r.violation; });
}

LogConvexityReport logconvexity_check(const MultilinearForm& form, const PVector& q,
                                      const PVector& r, std::span<const double> t_grid,
                                      const OptimizationConfig& config, double rel_tol) {
  LogConvexityReport report;
  report.estimate_q = norm_constant(form, q, config);
  report.estimate_r = norm_constant(form, r, config);
  for (double t : t_grid) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("logconvexity_check: t must lie in (0,1)");
    const PVector mid = PVector::blend(q, r, t);
    LogConvexityRow row;
    row.t = t;
    row.pvec.assign(mid.reciprocals().begin(), mid.reciprocals().end());
    row.midpoint_estimate = norm_constant(form, mid, config);
    row.endpoint_bound = interpolated_constant(report.estimate_q, report.estimate_r, t);
    row.violation = row.midpoint_estimate > row.endpoint_bound * (1.0 + rel_tol);
    report.rows.push_back(std::move(row));
  }
  return report;
}

double interpolated_constant(double c_q, double c_r, double t) {
  return std::pow(c_q, t) * std::pow(c_r, 1.0 - t);
}

double segment_weight_for_p(double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw std::invalid_argument("segment_weight_for_p: p must lie in [1,2]");
  return 2.0 / p - 1.0;
}

std::string logconvexity_csv(const LogConvexityReport& report) {
  std::ostringstream os;
  os << "# permbound interp report v1 estimate_q=" << fmt_double(report.estimate_q)
     << " estimate_r=" << fmt_double(report.estimate_r) << '\n';
  os << 't';
  const std::size_t m = report.rows.empty() ? 0 : report.rows.front().pvec.size();
  for (std::size_t j = 0; j < m; ++j) os << ",pvec_" << j;
  os << ",midpoint_estimate,endpoint_bound,violation\n";
  for (const auto& row : report.rows) {
    os << fmt_double(row.t);
    for (double v : row.pvec) os << ',' << fmt_double(v);
    os << ',' << fmt_double(row.midpoint_estimate) << ',' << fmt_double(row.endpoint_bound) << ','
       << (row.violation ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string to_json(const LogConvexityReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"t", row.t},
                    {"pvec", row.pvec},
                    {"midpoint_estimate", row.midpoint_estimate},
                    {"endpoint_bound", row.endpoint_bound},
                    {"violation", row.violation}});
  }
  nlohmann::json doc = {{"schema", "permbound.interp.v1"},
                        {"estimate_q", report.estimate_q},
                        {"estimate_r", report.estimate_r},
                        {"rows", rows}};
  return doc.dump();
}

}  // namespace permbound
