#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace permbound {

/// A bijection of {0..N-1}, stored as its image array sigma(0..N-1).
/// Composition is right-to-left: (a * b)(k) = a(b(k)).
class Permutation {
 public:
  explicit Permutation(std::vector<std::uint8_t> images);
  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t i, std::size_t j);

  std::size_t size() const { return images_.size(); }
  std::size_t operator()(std::size_t k) const { return images_[k]; }
  std::span<const std::uint8_t> images() const { return images_; }

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint8_t> images_;
};

/// Position of sigma in the lexicographic order of S_N (Lehmer code).
std::size_t lehmer_rank(const Permutation& sigma);
Permutation lehmer_unrank(std::size_t n, std::size_t rank);

/// Lookup tables for S_N: every element by Lehmer rank, and the rank of
/// sigma * sigma_{i,j} for every element and every pair i < j.
///
/// Degree 6 (720 elements) is the default ceiling; degree 7 (5040) needs
/// allow_degree_seven. Tables are immutable after construction.
class SymmetricGroup {
 public:
  static constexpr std::size_t kMaxDegree = 6;
  static constexpr std::size_t kMaxDegreeOptIn = 7;

  explicit SymmetricGroup(std::size_t n, bool allow_degree_seven = false);

  std::size_t degree() const { return n_; }
  std::size_t order() const { return order_; }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  /// sigma(k) for the element of rank `rank`.
  std::size_t image(std::size_t rank, std::size_t k) const { return images_[rank * n_ + k]; }
  /// Rank of sigma * sigma_{i,j}, i.e. sigma with entries i and j swapped.
  std::size_t times_transposition(std::size_t rank, std::size_t pair) const {
    return right_mult_[pair * order_ + rank];
  }

 private:
  std::size_t n_;
  std::size_t order_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::uint8_t> images_;
  std::vector<std::uint32_t> right_mult_;
};

/// Real function on S_N, indexed by Lehmer rank.
struct GroupFunction {
  std::size_t n = 0;
  std::vector<double> values;
};

GroupFunction constant_function(const SymmetricGroup& group, double c);
/// sigma -> f(sigma(j)).
GroupFunction lift(const SymmetricGroup& group, std::span<const double> f, std::size_t j);
/// Inverse of lift: reads g at one element with sigma(j) = k, for each k.
std::vector<double> project(const SymmetricGroup& group, const GroupFunction& g, std::size_t j);

/// Uniform average over S_N.
double integrate(const GroupFunction& g);
/// Uniform average of the pointwise product.
double inner(const GroupFunction& g, const GroupFunction& h);

/// (D_{i,j} g)(sigma) = g(sigma sigma_{i,j}) - g(sigma); i != j, 0-based.
GroupFunction apply_D(const SymmetricGroup& group, std::size_t i, std::size_t j,
                      const GroupFunction& g);
/// Delta = -sum_{i<j} D_{i,j}^2 = 2 sum_{i<j} D_{i,j}.
GroupFunction laplacian(const SymmetricGroup& group, const GroupFunction& g);
/// |grad g|^2 = sum_{i<j} (D_{i,j} g)^2.
GroupFunction grad_sq(const SymmetricGroup& group, const GroupFunction& g);

/// e^{t Delta} g by uniformization: Delta = c (P - I) with c = N(N-1) and
/// P the random-transposition transition operator, so
/// e^{t Delta} = sum_m Poisson(ct; m) P^m. The series is cut once the
/// remaining Poisson mass drops below 1e-14 and that mass is folded into
/// the last retained power, which keeps the result exactly averaging.
GroupFunction heat_semigroup(const SymmetricGroup& group, const GroupFunction& g, double t);

GroupFunction pointwise_product(const GroupFunction& g, const GroupFunction& h);

}  // namespace permbound
