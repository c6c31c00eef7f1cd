#include "prism/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "prism/rng.hpp"

namespace prism {

DistancePartition partition_distance_symmetric(const WalkStats& stats, double alpha) {
  return partition_distance_symmetric_at(stats, theta_sym(alpha, stats.length(), stats.num_walks()));
}

DistancePartition partition_distance_symmetric_at(const WalkStats& stats, double theta) {
  DistancePartition out;
  out.theta = theta;
  out.unreached = stats.unreached();
  auto order = stats.reached();
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return stats.target(a).tht_estimate < stats.target(b).tht_estimate;
  });

  double prev = 0.0;
  for (NodeId v : order) {
    const double h = stats.target(v).tht_estimate;
    if (out.sets.empty() || h - prev > theta) out.sets.emplace_back();
    out.sets.back().members.push_back(v);
    prev = h;
  }
  for (auto& set : out.sets) {
    double sum = 0.0;
    for (NodeId v : set.members) sum += stats.target(v).tht_estimate;
    set.representative_tht = sum / static_cast<double>(set.members.size());
    std::sort(set.members.begin(), set.members.end());
  }
  return out;
}

namespace {

using Matrix = std::vector<std::vector<double>>;

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Leading eigenvectors of a symmetric PSD matrix by power iteration with
// deflation against the vectors already found. Near-degenerate eigenspaces
// may not converge to a particular vector; any vector from them serves PCA,
// so the iteration just stops at its cap.
std::vector<std::pair<double, std::vector<double>>> top_eigenpairs(const Matrix& m, std::size_t count) {
  const std::size_t n = m.size();
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += m[i][i];
  std::vector<std::pair<double, std::vector<double>>> found;
  if (!(trace > 0.0)) return found;

  const auto orthogonalize = [&](std::vector<double>& x) {
    for (const auto& [value, vec] : found) {
      const double c = dot(x, vec);
      for (std::size_t i = 0; i < n; ++i) x[i] -= c * vec[i];
    }
  };
  const auto normalize = [](std::vector<double>& x) {
    const double norm = std::sqrt(dot(x, x));
    if (norm == 0.0) return false;
    for (double& xi : x) xi /= norm;
    return true;
  };

  for (std::size_t k = 0; k < count && k < n; ++k) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i)
      x[i] = static_cast<double>(splitmix64(0x5bd1e995ULL * (k + 1) + i) >> 11) * 0x1.0p-53 - 0.5;
    orthogonalize(x);
    if (!normalize(x)) break;
    double value = 0.0;
    for (int iter = 0; iter < 5000; ++iter) {
      for (std::size_t i = 0; i < n; ++i) y[i] = dot(m[i], x);
      orthogonalize(y);
      value = dot(x, y);
      double residual2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) residual2 += (y[i] - value * x[i]) * (y[i] - value * x[i]);
      if (!normalize(y)) {
        value = 0.0;
        break;
      }
      x.swap(y);
      if (std::sqrt(residual2) <= 1e-10 * trace) break;
    }
    if (value <= 1e-12 * trace) break;
    for (double xi : x) {
      if (std::abs(xi) > 1e-12) {
        if (xi < 0.0)
          for (double& v : x) v = -v;
        break;
      }
    }
    found.emplace_back(value, std::move(x));
  }
  return found;
}

}  // namespace

PointMatrix standardize_and_project(const std::vector<std::vector<double>>& rows, std::size_t dim) {
  const std::size_t n = rows.size();
  PointMatrix out(n, std::vector<double>(dim, 0.0));
  if (n < 2 || dim == 0) return out;
  const std::size_t p = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != p) throw std::invalid_argument("count rows must have equal length");

  // Standardized columns, stored column-major.
  Matrix cols;
  for (std::size_t c = 0; c < p; ++c) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r[c];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const auto& r : rows) var += (r[c] - mean) * (r[c] - mean);
    var /= static_cast<double>(n - 1);
    if (var < 1e-12) continue;
    const double sd = std::sqrt(var);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = (rows[i][c] - mean) / sd;
    cols.push_back(std::move(col));
  }
  const std::size_t q = cols.size();
  if (q == 0) return out;

  if (q <= n) {
    Matrix cov(q, std::vector<double>(q));
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = a; b < q; ++b) cov[a][b] = cov[b][a] = dot(cols[a], cols[b]) / static_cast<double>(n - 1);
    const auto pairs = top_eigenpairs(cov, dim);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& v = pairs[k].second;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t a = 0; a < q; ++a) s += cols[a][i] * v[a];
        out[i][k] = s;
      }
    }
  } else {
    // Wide data: eigenvectors u of Z Z^T give scores u * sqrt(eigenvalue).
    Matrix gram(n, std::vector<double>(n, 0.0));
    for (const auto& col : cols)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram[i][j] += col[i] * col[j];
    const auto pairs = top_eigenpairs(gram, dim);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double scale = std::sqrt(pairs[k].first);
      for (std::size_t i = 0; i < n; ++i) out[i][k] = pairs[k].second[i] * scale;
    }
  }
  return out;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::size_t farthest_from(const PointMatrix& points, std::span<const std::size_t> subset,
                          std::span<const double> from) {
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    const double d = sq_dist(points[subset[k]], from);
    if (d > best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> binary_split(
    const PointMatrix& points, std::span<const std::size_t> subset) {
  const std::size_t n = subset.size();
  if (n < 2) throw std::invalid_argument("binary_split needs at least two points");
  const std::size_t d = points[subset[0]].size();

  std::vector<double> centroid(d, 0.0);
  for (std::size_t k : subset)
    for (std::size_t j = 0; j < d; ++j) centroid[j] += points[k][j];
  for (double& c : centroid) c /= static_cast<double>(n);

  const std::size_t a = farthest_from(points, subset, centroid);
  const std::size_t b = farthest_from(points, subset, points[subset[a]]);

  std::vector<char> side(n, 0);
  if (sq_dist(points[subset[a]], points[subset[b]]) == 0.0) {
    for (std::size_t k = n / 2; k < n; ++k) side[k] = 1;
  } else {
    std::vector<double> c0 = points[subset[a]], c1 = points[subset[b]];
    for (int iter = 0; iter < 100; ++iter) {
      bool changed = iter == 0;
      std::size_t count1 = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const char s = sq_dist(points[subset[k]], c1) < sq_dist(points[subset[k]], c0) ? 1 : 0;
        if (s != side[k]) changed = true;
        side[k] = s;
        count1 += static_cast<std::size_t>(s);
      }
      if (count1 == 0 || count1 == n) {
        // Lloyd cannot empty a side from a farthest-pair start unless the
        // centers coincide; fall back to the seeds themselves.
        std::fill(side.begin(), side.end(), 0);
        side[b] = 1;
        break;
      }
      if (!changed) break;
      std::fill(c0.begin(), c0.end(), 0.0);
      std::fill(c1.begin(), c1.end(), 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        auto& c = side[k] ? c1 : c0;
        for (std::size_t j = 0; j < d; ++j) c[j] += points[subset[k]][j];
      }
      for (double& v : c0) v /= static_cast<double>(n - count1);
      for (double& v : c1) v /= static_cast<double>(count1);
    }
  }

  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < n; ++k) (side[k] == side[0] ? out.first : out.second).push_back(k);
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> binary_split(const PointMatrix& points) {
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return binary_split(points, all);
}

namespace {

// Dense member x signature count matrix over every signature any member saw.
std::vector<std::vector<double>> count_rows(const WalkStats& stats, std::span<const NodeId> members) {
  std::vector<SignatureId> universe;
  for (NodeId v : members)
    for (const auto& c : stats.target(v).counts) universe.push_back(c.signature);
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  std::vector<std::vector<double>> rows(members.size(), std::vector<double>(universe.size(), 0.0));
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& c : stats.target(members[i]).counts) {
      const auto col = std::lower_bound(universe.begin(), universe.end(), c.signature) - universe.begin();
      rows[i][static_cast<std::size_t>(col)] = static_cast<double>(c.count);
    }
  }
  return rows;
}

}  // namespace

std::vector<std::vector<NodeId>> prism_paths(std::span<const NodeId> members, const WalkStats& stats,
                                             double alpha, const SymmetryOptions& opts) {
  for (NodeId v : members)
    if (v == stats.source()) throw std::invalid_argument("the source cannot be a member of its own concept");

  std::vector<std::vector<NodeId>> partition;
  std::vector<NodeId> whole(members.begin(), members.end());
  std::sort(whole.begin(), whole.end());
  if (whole.empty()) return partition;
  if (whole.size() == 1 || path_symmetric(stats, whole, alpha, opts.path_test)) {
    partition.push_back(std::move(whole));
    return partition;
  }

  const auto points = standardize_and_project(count_rows(stats, whole), std::max<std::size_t>(opts.proj_dim, 1));

  // Worklist of positions into `whole`; each popped set failed the test.
  std::deque<std::vector<std::size_t>> work;
  work.emplace_back(whole.size());
  std::iota(work.front().begin(), work.front().end(), std::size_t{0});
  std::vector<NodeId> nodes;
  while (!work.empty()) {
    const auto set = std::move(work.front());
    work.pop_front();
    auto [first, second] = binary_split(points, set);
    for (auto* part : {&first, &second}) {
      std::vector<std::size_t> positions;
      positions.reserve(part->size());
      nodes.clear();
      for (std::size_t k : *part) {
        positions.push_back(set[k]);
        nodes.push_back(whole[set[k]]);
      }
      if (nodes.size() == 1 || path_symmetric(stats, nodes, alpha, opts.path_test))
        partition.push_back(nodes);
      else
        work.push_back(std::move(positions));
    }
  }
  for (auto& p : partition) std::sort(p.begin(), p.end());
  std::sort(partition.begin(), partition.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return partition;
}

SymmetryPartition symmetry_cluster(const WalkStats& stats, double alpha, const SymmetryOptions& opts) {
  SymmetryPartition out;
  out.source = stats.source();
  out.distance = partition_distance_symmetric(stats, alpha);
  for (std::size_t s = 0; s < out.distance.sets.size(); ++s) {
    for (auto& members : prism_paths(out.distance.sets[s].members, stats, alpha, opts)) {
      Concept c;
      if (members.size() > 1) c.tests = path_symmetry_test(stats, members, alpha, opts.path_test).per_length;
      c.members = std::move(members);
      c.parent = s;
      out.concepts.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace prism
