#include "prism/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace prism {

namespace {

// Shrinks [lo, hi] around the root of a decreasing `survival` - target.
template <typename F>
double bisect_decreasing(F survival, double target, double lo, double hi) {
  for (int iter = 0; iter < 400 && hi - lo > 1e-10 * std::max(1.0, hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double t_inverse_survival(double p, double df) {
  if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("t_inverse_survival needs p in (0, 1/2]");
  if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
  if (p == 0.5) return 0.0;
  const auto survival = [df](double t) {
    return 0.5 * boost::math::ibeta(df / 2.0, 0.5, df / (df + t * t));
  };
  double hi = 1.0;
  while (survival(hi) > p) hi *= 2.0;
  return bisect_decreasing(survival, p, 0.0, hi);
}

double theta_sym(double alpha, std::size_t length, std::uint64_t num_walks) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (num_walks < 2) throw std::invalid_argument("theta_sym needs at least two walks");
  if (length <= 1) return 0.0;
  const double n = static_cast<double>(num_walks);
  return (static_cast<double>(length) - 1.0) / std::sqrt(2.0 * n) * t_inverse_survival(alpha / 2.0, n - 1.0);
}

ClusterCounts::ClusterCounts(std::uint64_t num_walks, std::vector<std::vector<std::uint64_t>> rows)
    : num_walks_(num_walks) {
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  means_.assign(width + 1, 0.0);
  counts_.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != width) throw std::invalid_argument("cluster count rows must have equal length");
    std::uint64_t total = 0;
    for (auto c : row) total += c;
    if (total > num_walks) throw std::invalid_argument("category counts exceed the number of walks");
    std::vector<double> full(width + 1);
    full[0] = static_cast<double>(num_walks - total);
    for (std::size_t k = 0; k < width; ++k) full[k + 1] = static_cast<double>(row[k]);
    for (std::size_t k = 0; k <= width; ++k) means_[k] += full[k];
    counts_.push_back(std::move(full));
  }
  if (!counts_.empty())
    for (double& m : means_) m /= static_cast<double>(counts_.size());
}

double q_statistic(const ClusterCounts& cc) {
  double q = 0.0;
  for (std::size_t j = 0; j < cc.members(); ++j) {
    for (std::size_t k = 0; k < cc.categories(); ++k) {
      const double d = cc.mean(k) - cc.count(j, k);
      q += d * d;
    }
  }
  return q;
}

GammaApprox gamma_approx_params(const ClusterCounts& cc) {
  if (cc.members() < 2 || cc.num_walks() == 0) return {};
  const double n = static_cast<double>(cc.num_walks());
  const double blocks = static_cast<double>(cc.members() - 1);
  // Sigma_ll = N p (1 - p), Sigma_lm = -N p_l p_m.
  double trace = 0.0, diag_sq = 0.0, sum_p2 = 0.0, sum_p4 = 0.0;
  for (std::size_t k = 0; k < cc.categories(); ++k) {
    const double p = cc.mean(k) / n;
    const double d = n * p * (1.0 - p);
    trace += d;
    diag_sq += d * d;
    sum_p2 += p * p;
    sum_p4 += p * p * p * p;
  }
  const double off_sq = n * n * (sum_p2 * sum_p2 - sum_p4);
  return GammaApprox{blocks * trace, 2.0 * blocks * (diag_sq + off_sq)};
}

double gamma_critical_value(const GammaApprox& g, double alpha) {
  if (g.degenerate()) throw std::invalid_argument("gamma approximation is degenerate");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const double shape = g.shape();
  const double rate = g.rate();
  const auto survival = [&](double x) { return boost::math::gamma_q(shape, rate * x); };
  double hi = std::max(1.0, g.mu + 4.0 * std::sqrt(g.sigma2));
  while (survival(hi) > alpha) hi *= 2.0;
  return bisect_decreasing(survival, alpha, 0.0, hi);
}

ClusterCounts marginal_cluster_counts(const WalkStats& stats, std::span<const NodeId> members,
                                      std::size_t length, const PathTestOptions& opts) {
  // Category universe: signatures of this length seen by any member, in id order.
  std::map<SignatureId, std::uint64_t> totals;
  for (NodeId v : members)
    for (const auto& c : stats.target(v).counts)
      if (stats.signature(c.signature).length() == length) totals[c.signature] += c.count;

  const double floor_total = opts.min_mean_count * static_cast<double>(members.size());
  std::vector<SignatureId> kept;
  for (const auto& [sig, total] : totals)
    if (static_cast<double>(total) >= floor_total) kept.push_back(sig);

  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(members.size());
  for (NodeId v : members) {
    const auto& counts = stats.target(v).counts;
    std::vector<std::uint64_t> row(kept.size(), 0);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      auto it = std::lower_bound(counts.begin(), counts.end(), kept[k],
                                 [](const SignatureCount& c, SignatureId s) { return c.signature < s; });
      if (it != counts.end() && it->signature == kept[k]) row[k] = it->count;
    }
    rows.push_back(std::move(row));
  }
  return ClusterCounts(stats.num_walks(), std::move(rows));
}

PathTestResult path_symmetry_test(const WalkStats& stats, std::span<const NodeId> members, double alpha,
                                  const PathTestOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  PathTestResult result;
  if (members.size() < 2) return result;
  for (std::size_t length = stats.length(); length >= 1; --length) {
    const auto cc = marginal_cluster_counts(stats, members, length, opts);
    LengthTest test;
    test.length = length;
    test.categories = cc.categories();
    test.q = q_statistic(cc);
    const auto g = gamma_approx_params(cc);
    if (!g.degenerate()) {
      test.critical = gamma_critical_value(g, alpha);
      test.passed = test.q <= test.critical;
    }
    result.per_length.push_back(test);
    if (!test.passed) {
      result.passed = false;
      break;
    }
  }
  return result;
}

}  // namespace prism
