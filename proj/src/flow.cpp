#include "permbound/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "combinations.hpp"
#include "format.hpp"
#include "permbound/permanent.hpp"

namespace permbound {

namespace {

void check_flow_args(std::span<const double> f, double p, double t) {
  PExponent checked(p);
  (void)checked;
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("flow: t must be >= 0");
  if (f.empty()) throw std::invalid_argument("flow: empty vector");
  for (double v : f) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("flow: entries must be finite and nonnegative");
    }
  }
}

std::vector<double> powers(std::span<const double> f, double p) {
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = std::pow(f[k], p);
  return out;
}

std::vector<double> real_column(const ColumnMatrix& f, std::size_t col) {
  std::vector<double> out(f.rows());
  for (std::size_t j = 0; j < f.rows(); ++j) out[j] = f(j, col).real();
  return out;
}

void require_nonnegative_square(const ColumnMatrix& f, const char* who) {
  if (!f.is_square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
  if (!f.is_entrywise_nonnegative()) {
    throw std::invalid_argument(std::string(who) + ": entries must be nonnegative reals");
  }
}

}  // namespace

double reduced_flow_rate(std::size_t n) { return 2.0 * static_cast<double>(n); }

std::vector<double> flow_column(std::span<const double> f, std::size_t j, double p, double t,
                                FlowPath path) {
  check_flow_args(f, p, t);
  if (j >= f.size()) throw std::invalid_argument("flow_column: slot out of range");
  if (t == 0.0) return {f.begin(), f.end()};
  if (path == FlowPath::kBruteForce) {
    const SymmetricGroup group(f.size());
    return flow_column(group, f, j, p, t);
  }
  const std::vector<double> fp = powers(f, p);
  double mean = 0.0;
  for (double v : fp) mean += v;
  mean /= static_cast<double>(fp.size());
  const double decay = std::exp(-reduced_flow_rate(f.size()) * t);
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    out[k] = std::pow(std::max(0.0, mean + decay * (fp[k] - mean)), 1.0 / p);
  }
  return out;
}

std::vector<double> flow_column(const SymmetricGroup& group, std::span<const double> f,
                                std::size_t j, double p, double t) {
  check_flow_args(f, p, t);
  const std::vector<double> fp = powers(f, p);
  const GroupFunction evolved = heat_semigroup(group, lift(group, fp, j), t);
  std::vector<double> out = project(group, evolved, j);
  for (double& v : out) v = std::pow(std::max(0.0, v), 1.0 / p);
  return out;
}

ColumnMatrix evolved_columns(const ColumnMatrix& f, double p, double t, FlowPath path) {
  require_nonnegative_square(f, "evolved_columns");
  std::optional<SymmetricGroup> group;
  if (path == FlowPath::kBruteForce) group.emplace(f.rows());
  ColumnMatrix out(f.rows(), f.cols());
  for (std::size_t j = 0; j < f.cols(); ++j) {
    const std::vector<double> col = real_column(f, j);
    const std::vector<double> next =
        group ? flow_column(*group, col, j, p, t) : flow_column(col, j, p, t);
    for (std::size_t k = 0; k < f.rows(); ++k) out(k, j) = next[k];
  }
  return out;
}

double eta(const ColumnMatrix& f, double p, double t, FlowPath path) {
  require_nonnegative_square(f, "eta");
  const std::size_t n = f.rows();
  if (path == FlowPath::kReduced) {
    return perm_fast(evolved_columns(f, p, t)).value.real() / factorial(n);
  }
  const SymmetricGroup group(n);
  GroupFunction product = constant_function(group, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    GroupFunction evolved = heat_semigroup(group, lift(group, powers(real_column(f, j), p), j), t);
    for (double& v : evolved.values) v = std::pow(std::max(0.0, v), 1.0 / p);
    product = pointwise_product(product, evolved);
  }
  return integrate(product);
}

double eta2_derivative_at_zero(const ColumnMatrix& f) {
  const SymmetricGroup group(f.rows());
  return eta2_derivative_at_zero(group, f);
}

double eta2_derivative_at_zero(const SymmetricGroup& group, const ColumnMatrix& f) {
  if (!f.is_square() || f.rows() != group.degree()) {
    throw std::invalid_argument("eta2_derivative_at_zero: matrix must be N x N for S_N");
  }
  if (!f.is_entrywise_positive()) {
    throw std::invalid_argument("eta2_derivative_at_zero: entries must be strictly positive");
  }
  const std::size_t n = f.rows();
  std::vector<GroupFunction> lifted;
  lifted.reserve(n);
  for (std::size_t j = 0; j < n; ++j) lifted.push_back(lift(group, real_column(f, j), j));

  GroupFunction rho = constant_function(group, 1.0);
  for (const auto& g : lifted) rho = pointwise_product(rho, g);

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t q = group.pair_index(i, j);
      const auto& gi = lifted[i].values;
      const auto& gj = lifted[j].values;
      for (std::size_t r = 0; r < group.order(); ++r) {
        const std::size_t s = group.times_transposition(r, q);
        const double quotient_j = (gj[s] - gj[r]) / gj[r];
        const double quotient_i = (gi[s] - gi[r]) / gi[r];
        const double diff = quotient_j - quotient_i;
        total += diff * diff * rho.values[r];
      }
    }
  return total / static_cast<double>(group.order());
}

FlowTrace flow_trace(const ColumnMatrix& f, double p, std::span<const double> times, FlowPath path) {
  require_nonnegative_square(f, "flow_trace");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("flow_trace: times must increase");
  }
  FlowTrace trace;
  trace.p = p;
  trace.times.assign(times.begin(), times.end());
  const double norm = factorial(f.rows());
  for (double t : times) {
    ColumnMatrix state = evolved_columns(f, p, t, path);
    trace.eta.push_back(perm_fast(state).value.real() / norm);
    trace.column_states.push_back(std::move(state));
  }
  return trace;
}

double circulant_phi(double x, double y, double p) {
  PExponent checked(p);
  const double numerator = 1.0 + x * x * x + y * y * y + 3.0 * x * y;
  const double denominator =
      std::pow(1.0 + std::pow(x, checked.value()) + std::pow(y, checked.value()), 3.0 / p);
  return numerator / denominator;
}

FlowTrace circulant_flow(double x0, double y0, double p, std::span<const double> times) {
  if (x0 < 0.0 || y0 < 0.0) throw std::invalid_argument("circulant_flow: x, y must be >= 0");
  FlowTrace trace = flow_trace(make_circulant3(x0, y0), p, times);
  CirculantPath path;
  for (const auto& state : trace.column_states) {
    const double lead = state(0, 0).real();
    const double x = state(1, 0).real() / lead;
    const double y = state(2, 0).real() / lead;
    path.x.push_back(x);
    path.y.push_back(y);
    path.phi.push_back(circulant_phi(x, y, p));
  }
  trace.circulant = std::move(path);
  return trace;
}

double initial_slope(const std::function<double(double)>& value_at, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("initial_slope: step must be positive");
  return (value_at(h) - value_at(0.0)) / h;
}

std::vector<double> geometric_time_grid(double t_min, double t_max, std::size_t points) {
  if (points < 2 || !(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max)) {
    throw std::invalid_argument("geometric_time_grid: need points >= 2 and 0 < t_min < t_max");
  }
  std::vector<double> grid{0.0};
  const std::size_t geometric = points - 1;
  if (geometric == 1) {
    grid.push_back(t_max);
    return grid;
  }
  const double ratio = std::pow(t_max / t_min, 1.0 / static_cast<double>(geometric - 1));
  for (std::size_t i = 0; i < geometric; ++i) {
    grid.push_back(i + 1 == geometric ? t_max : t_min * std::pow(ratio, static_cast<double>(i)));
  }
  return grid;
}

double max_decrease(std::span<const double> values) {
  double worst = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) worst = std::max(worst, values[i - 1] - values[i]);
  return worst;
}

std::string to_csv(const FlowTrace& trace) {
  std::ostringstream os;
  os << "# permbound flow trace v1 p=" << fmt_double(trace.p) << '\n';
  os << "t,eta";
  const std::size_t n = trace.column_states.empty() ? 0 : trace.column_states.front().rows();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t j = 0; j < n; ++j) os << ",f" << c << '_' << j;
  if (trace.circulant) os << ",x,y,phi";
  os << '\n';
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << fmt_double(trace.times[i]) << ',' << fmt_double(trace.eta[i]);
    const auto& state = trace.column_states[i];
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t j = 0; j < n; ++j) os << ',' << fmt_double(state(j, c).real());
    if (trace.circulant) {
      os << ',' << fmt_double(trace.circulant->x[i]) << ',' << fmt_double(trace.circulant->y[i])
         << ',' << fmt_double(trace.circulant->phi[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const FlowTrace& trace) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& state : trace.column_states) {
    nlohmann::json cols = nlohmann::json::array();
    for (std::size_t c = 0; c < state.cols(); ++c) {
      nlohmann::json col = nlohmann::json::array();
      for (std::size_t j = 0; j < state.rows(); ++j) col.push_back(state(j, c).real());
      cols.push_back(std::move(col));
    }
    states.push_back(std::move(cols));
  }
  nlohmann::json doc = {{"schema", "permbound.flow.v1"},
                        {"p", trace.p},
                        {"times", trace.times},
                        {"eta", trace.eta},
                        {"column_states", states}};
  if (trace.circulant) {
    doc["circulant"] = {{"x", trace.circulant->x},
                        {"y", trace.circulant->y},
                        {"phi", trace.circulant->phi}};
  }
  return doc.dump();
}

}  // namespace permbound
