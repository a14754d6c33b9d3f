#include "permbound/symgroup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace permbound {

Permutation::Permutation(std::vector<std::uint8_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint8_t> images(n);
  std::iota(images.begin(), images.end(), std::uint8_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::transposition(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n || i == j) throw std::invalid_argument("transposition: need distinct i, j < n");
  Permutation t = identity(n);
  std::swap(t.images_[i], t.images_[j]);
  return t;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Permutation product: degree mismatch");
  std::vector<std::uint8_t> images(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) images[k] = a.images_[b.images_[k]];
  return Permutation(std::move(images));
}

std::size_t lehmer_rank(const Permutation& sigma) {
  const std::size_t n = sigma.size();
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t smaller = 0;
    for (std::size_t l = k + 1; l < n; ++l) smaller += sigma(l) < sigma(k) ? 1 : 0;
    rank = rank * (n - k) + smaller;
  }
  return rank;
}

Permutation lehmer_unrank(std::size_t n, std::size_t rank) {
  std::vector<std::size_t> code(n);
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t radix = n - k;
    code[k] = rank % radix;
    rank /= radix;
  }
  if (rank != 0) throw std::invalid_argument("lehmer_unrank: rank out of range");
  std::vector<std::uint8_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::uint8_t{0});
  std::vector<std::uint8_t> images(n);
  for (std::size_t k = 0; k < n; ++k) {
    images[k] = pool[code[k]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(code[k]));
  }
  return Permutation(std::move(images));
}

SymmetricGroup::SymmetricGroup(std::size_t n, bool allow_degree_seven) : n_(n) {
  const std::size_t ceiling = allow_degree_seven ? kMaxDegreeOptIn : kMaxDegree;
  if (n == 0 || n > ceiling) {
    throw std::invalid_argument("SymmetricGroup: degree must lie in [1, " +
                                std::to_string(ceiling) + "]");
  }
  order_ = 1;
  for (std::size_t k = 2; k <= n; ++k) order_ *= k;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);

  images_.resize(order_ * n);
  std::vector<std::uint8_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::uint8_t{0});
  std::size_t rank = 0;
  do {
    std::copy(sigma.begin(), sigma.end(), images_.begin() + static_cast<std::ptrdiff_t>(rank * n));
    ++rank;
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  right_mult_.resize(pairs_.size() * order_);
  for (std::size_t r = 0; r < order_; ++r) {
    std::vector<std::uint8_t> img(images_.begin() + static_cast<std::ptrdiff_t>(r * n),
                                  images_.begin() + static_cast<std::ptrdiff_t>((r + 1) * n));
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
      auto swapped = img;
      std::swap(swapped[pairs_[q].first], swapped[pairs_[q].second]);
      right_mult_[q * order_ + r] =
          static_cast<std::uint32_t>(lehmer_rank(Permutation(std::move(swapped))));
    }
  }
}

std::size_t SymmetricGroup::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw std::invalid_argument("pair_index: need distinct i, j < N");
  if (i > j) std::swap(i, j);
  // Pairs are laid out row by row: (0,1),(0,2),...,(1,2),...
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

namespace {

void require_match(const SymmetricGroup& group, const GroupFunction& g) {
  if (g.n != group.degree() || g.values.size() != group.order()) {
    throw std::invalid_argument("GroupFunction does not match the group");
  }
}

}  // namespace

GroupFunction constant_function(const SymmetricGroup& group, double c) {
  return {group.degree(), std::vector<double>(group.order(), c)};
}

GroupFunction lift(const SymmetricGroup& group, std::span<const double> f, std::size_t j) {
  if (f.size() != group.degree() || j >= group.degree()) {
    throw std::invalid_argument("lift: vector length or slot mismatch");
  }
  GroupFunction g{group.degree(), std::vector<double>(group.order())};
  for (std::size_t r = 0; r < group.order(); ++r) g.values[r] = f[group.image(r, j)];
  return g;
}

std::vector<double> project(const SymmetricGroup& group, const GroupFunction& g, std::size_t j) {
  require_match(group, g);
  if (j >= group.degree()) throw std::invalid_argument("project: slot out of range");
  std::vector<double> out(group.degree(), 0.0);
  std::vector<bool> filled(group.degree(), false);
  for (std::size_t r = 0; r < group.order(); ++r) {
    const std::size_t k = group.image(r, j);
    if (!filled[k]) {
      out[k] = g.values[r];
      filled[k] = true;
    }
  }
  return out;
}

double integrate(const GroupFunction& g) {
  if (g.values.empty()) throw std::invalid_argument("integrate: empty function");
  double sum = 0.0;
  for (double v : g.values) sum += v;
  return sum / static_cast<double>(g.values.size());
}

double inner(const GroupFunction& g, const GroupFunction& h) {
  return integrate(pointwise_product(g, h));
}

GroupFunction pointwise_product(const GroupFunction& g, const GroupFunction& h) {
  if (g.n != h.n || g.values.size() != h.values.size()) {
    throw std::invalid_argument("pointwise_product: degree mismatch");
  }
  GroupFunction out{g.n, g.values};
  for (std::size_t r = 0; r < out.values.size(); ++r) out.values[r] *= h.values[r];
  return out;
}

GroupFunction apply_D(const SymmetricGroup& group, std::size_t i, std::size_t j,
                      const GroupFunction& g) {
  require_match(group, g);
  if (i == j) throw std::invalid_argument("apply_D: i must differ from j");
  const std::size_t q = group.pair_index(i, j);
  GroupFunction out{g.n, std::vector<double>(group.order())};
  for (std::size_t r = 0; r < group.order(); ++r) {
    out.values[r] = g.values[group.times_transposition(r, q)] - g.values[r];
  }
  return out;
}

GroupFunction laplacian(const SymmetricGroup& group, const GroupFunction& g) {
  require_match(group, g);
  GroupFunction out{g.n, std::vector<double>(group.order(), 0.0)};
  for (std::size_t q = 0; q < group.pair_count(); ++q)
    for (std::size_t r = 0; r < group.order(); ++r)
      out.values[r] += 2.0 * (g.values[group.times_transposition(r, q)] - g.values[r]);
  return out;
}

GroupFunction grad_sq(const SymmetricGroup& group, const GroupFunction& g) {
  require_match(group, g);
  GroupFunction out{g.n, std::vector<double>(group.order(), 0.0)};
  for (std::size_t q = 0; q < group.pair_count(); ++q)
    for (std::size_t r = 0; r < group.order(); ++r) {
      const double d = g.values[group.times_transposition(r, q)] - g.values[r];
      out.values[r] += d * d;
    }
  return out;
}

namespace {

// P g = average over pairs of g(sigma sigma_{i,j}).
void apply_transition(const SymmetricGroup& group, const std::vector<double>& in,
                      std::vector<double>& out) {
  const double weight = 1.0 / static_cast<double>(group.pair_count());
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t q = 0; q < group.pair_count(); ++q)
    for (std::size_t r = 0; r < group.order(); ++r)
      out[r] += in[group.times_transposition(r, q)];
  for (double& v : out) v *= weight;
}

// Poisson mixture of P^m for a rate small enough that e^{-rate} is normal.
std::vector<double> uniformized_step(const SymmetricGroup& group, std::vector<double> g,
                                     double rate) {
  constexpr double kTailMass = 1e-14;
  std::vector<double> acc(g.size(), 0.0);
  std::vector<double> next(g.size());
  double weight = std::exp(-rate);
  double cumulative = 0.0;
  for (std::size_t m = 0;; ++m) {
    for (std::size_t r = 0; r < g.size(); ++r) acc[r] += weight * g[r];
    cumulative += weight;
    const double next_index = static_cast<double>(m + 1);
    // Past the mode, the tail after m is bounded by a geometric series.
    if (next_index > rate && weight * next_index / (next_index - rate) < kTailMass) {
      const double remaining = std::max(0.0, 1.0 - cumulative);
      for (std::size_t r = 0; r < g.size(); ++r) acc[r] += remaining * g[r];
      break;
    }
    apply_transition(group, g, next);
    g.swap(next);
    weight *= rate / static_cast<double>(m + 1);
  }
  return acc;
}

}  // namespace

GroupFunction heat_semigroup(const SymmetricGroup& group, const GroupFunction& g, double t) {
  require_match(group, g);
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("heat_semigroup: t must be >= 0");
  if (t == 0.0 || group.pair_count() == 0) return g;
  constexpr double kMaxRatePerStep = 30.0;
  const double uniform_rate = static_cast<double>(group.degree() * (group.degree() - 1));
  const double total = uniform_rate * t;
  const auto steps = static_cast<std::size_t>(std::ceil(total / kMaxRatePerStep));
  const double rate = total / static_cast<double>(steps);
  std::vector<double> values = g.values;
  for (std::size_t s = 0; s < steps; ++s) values = uniformized_step(group, std::move(values), rate);
  return {g.n, std::move(values)};
}

}  // namespace permbound
