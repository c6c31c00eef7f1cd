#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "prism/hypergraph.hpp"
#include "prism/walks.hpp"

namespace prism {

/// t with P(T > t) = p for a Student-t with `df` degrees of freedom,
/// p in (0, 1/2]. Bisection on the regularized incomplete beta function.
double t_inverse_survival(double p, double df);

/// Largest hitting-time difference still accepted as distance-symmetric at
/// level alpha: (L-1)/sqrt(2N) * t_{alpha/2, N-1}.
double theta_sym(double alpha, std::size_t length, std::uint64_t num_walks);

inline bool distance_symmetric(double tht_j, double tht_k, double theta) {
  return (tht_j > tht_k ? tht_j - tht_k : tht_k - tht_j) <= theta;
}

/// Per-member counts over categories 0..Lambda for one exact path length.
/// Category 0 is the null category: walks that did not hit the member with
/// a signature of this length.
class ClusterCounts {
 public:
  /// `rows[j]` holds the non-null category counts of member j. Throws
  /// std::invalid_argument on ragged rows or when a row sums past N.
  ClusterCounts(std::uint64_t num_walks, std::vector<std::vector<std::uint64_t>> rows);

  std::size_t members() const { return counts_.size(); }
  /// Number of categories including the null category.
  std::size_t categories() const { return means_.size(); }
  std::uint64_t num_walks() const { return num_walks_; }
  /// c_lambda^(j); category 0 is N minus the row sum.
  double count(std::size_t member, std::size_t category) const { return counts_[member][category]; }
  /// Cluster mean c_lambda.
  double mean(std::size_t category) const { return means_[category]; }

 private:
  std::uint64_t num_walks_;
  std::vector<std::vector<double>> counts_;
  std::vector<double> means_;
};

/// Q = sum over categories and members of (c_lambda - c_lambda^(j))^2.
double q_statistic(const ClusterCounts& cc);

/// Moment-matched gamma approximation of the null distribution of Q.
struct GammaApprox {
  double mu = 0.0;
  double sigma2 = 0.0;

  bool degenerate() const { return !(mu > 0.0) || !(sigma2 > 0.0); }
  double shape() const { return mu * mu / sigma2; }
  double rate() const { return mu / sigma2; }
};

/// Mean and variance of Q under H0 from the count covariance
/// Sigma = N diag(pi) - N pi pi^T with pi estimated by c_lambda / N:
/// mu = (|B|-1) tr(Sigma), sigma^2 = 2 (|B|-1) sum Sigma^2.
GammaApprox gamma_approx_params(const ClusterCounts& cc);

/// x with P(Gamma > x) = alpha. Throws std::invalid_argument for a
/// degenerate approximation or alpha outside (0, 1).
double gamma_critical_value(const GammaApprox& g, double alpha);

struct PathTestOptions {
  /// Categories whose cluster-mean count is below this are folded into the
  /// null category.
  double min_mean_count = 5.0;
};

/// Outcome of the exact order-l test at one length.
struct LengthTest {
  std::size_t length = 0;
  double q = 0.0;
  double critical = 0.0;  // 0 when the test passed without a usable null distribution
  std::size_t categories = 0;
  bool passed = true;

  bool operator==(const LengthTest&) const = default;
};

struct PathTestResult {
  bool passed = true;
  /// Lengths tested, from L downward; stops after the first failure.
  std::vector<LengthTest> per_length;
};

/// Counts of `members` restricted to signatures of exactly `length`. The
/// category universe is the union of signatures the members observed at
/// that length, with low-count categories folded into the null category.
ClusterCounts marginal_cluster_counts(const WalkStats& stats, std::span<const NodeId> members,
                                      std::size_t length, const PathTestOptions& opts = {});

/// Path-symmetry test of `members` for every length L, L-1, ..., 1.
/// Singletons and clusters without spread pass.
PathTestResult path_symmetry_test(const WalkStats& stats, std::span<const NodeId> members, double alpha,
                                  const PathTestOptions& opts = {});

inline bool path_symmetric(const WalkStats& stats, std::span<const NodeId> members, double alpha,
                           const PathTestOptions& opts = {}) {
  return path_symmetry_test(stats, members, alpha, opts).passed;
}

}  // namespace prism
