#include "ptutor/analytics/cluster.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "ptutor/analytics/stats.hpp"
#include "ptutor/error.hpp"

namespace ptutor::analytics {

namespace {

std::size_t columns_of(const Matrix& m) {
  const std::size_t d = m.empty() ? 0 : m.front().size();
  for (const auto& row : m) {
    if (row.size() != d) throw InvalidRequest("ragged feature matrix");
  }
  return d;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) s += (a[f] - b[f]) * (a[f] - b[f]);
  return std::sqrt(s);
}

}  // namespace

Matrix standardize(const Matrix& raw, std::vector<double>* means, std::vector<double>* sds) {
  const std::size_t d = columns_of(raw);
  Matrix z(raw.size(), std::vector<double>(d, 0.0));
  std::vector<double> mu(d);
  std::vector<double> sd(d);
  for (std::size_t f = 0; f < d; ++f) {
    std::vector<double> col;
    for (const auto& row : raw) col.push_back(row[f]);
    mu[f] = mean(col);
    sd[f] = population_sd(col);
    if (sd[f] == 0.0) continue;
    for (std::size_t i = 0; i < raw.size(); ++i) z[i][f] = (raw[i][f] - mu[f]) / sd[f];
  }
  if (means != nullptr) *means = std::move(mu);
  if (sds != nullptr) *sds = std::move(sd);
  return z;
}

std::vector<Merge> ward_linkage(const Matrix& points, const simd::Kernels& kernels) {
  const std::size_t n = points.size();
  const std::size_t d = columns_of(points);
  std::vector<Merge> merges;
  if (n < 2) return merges;

  // Feature-major copy for the distance kernel.
  std::vector<double> cols(d * n);
  for (std::size_t f = 0; f < d; ++f) {
    for (std::size_t i = 0; i < n; ++i) cols[f * n + i] = points[i][f];
  }
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) kernels.sq_dist_row(cols.data(), n, d, n, i, dist.data() + i * n);

  std::vector<double> size(n, 1.0);
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::vector<bool> active(n, true);
  std::vector<double> da(n), db(n), out(n);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (active[j] && dist[i * n + j] < best) {
          best = dist[i * n + j];
          bi = i;
          bj = j;
        }
      }
    }
    // Lance-Williams over every slot; inactive slots are never read again.
    for (std::size_t k = 0; k < n; ++k) {
      da[k] = dist[bi * n + k];
      db[k] = dist[bj * n + k];
    }
    kernels.ward_row(da.data(), db.data(), size.data(), size[bi], size[bj], best, n, out.data());
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      dist[bi * n + k] = out[k];
      dist[k * n + bi] = out[k];
    }

    Merge m;
    m.a = std::min(label[bi], label[bj]);
    m.b = std::max(label[bi], label[bj]);
    m.height = std::sqrt(std::max(best, 0.0));
    m.size = static_cast<int>(size[bi] + size[bj]);
    merges.push_back(m);

    size[bi] += size[bj];
    label[bi] = static_cast<int>(n + step);
    active[bj] = false;
  }
  return merges;
}

std::vector<int> cut_tree(std::span<const Merge> merges, int n, int k) {
  if (k < 1 || k > n) throw InvalidRequest("cannot cut into " + std::to_string(k) + " clusters");
  std::vector<int> parent(static_cast<std::size_t>(2 * n), -1);
  auto root = [&](int x) {
    while (parent[x] >= 0) x = parent[x];
    return x;
  };
  for (int m = 0; m < n - k; ++m) {
    parent[merges[m].a] = n + m;
    parent[merges[m].b] = n + m;
  }
  std::vector<int> labels(n);
  std::map<int, int> relabel;
  for (int i = 0; i < n; ++i) {
    const int r = root(i);
    auto [it, fresh] = relabel.emplace(r, static_cast<int>(relabel.size()));
    labels[i] = it->second;
  }
  return labels;
}

IndexRow cluster_indices(const Matrix& points, std::span<const int> labels) {
  const std::size_t n = points.size();
  const std::size_t d = columns_of(points);
  if (labels.size() != n) throw InvalidRequest("one label per point required");
  int k = 0;
  for (int l : labels) {
    if (l < 0) throw InvalidRequest("negative cluster label");
    k = std::max(k, l + 1);
  }
  if (k < 2) throw InvalidRequest("cluster indices need at least two clusters");
  std::vector<int> count(k, 0);
  for (int l : labels) ++count[l];
  for (int c : count) {
    if (c == 0) throw InvalidRequest("empty cluster label");
  }

  Matrix centroid(k, std::vector<double>(d, 0.0));
  std::vector<double> overall(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < d; ++f) {
      centroid[labels[i]][f] += points[i][f];
      overall[f] += points[i][f];
    }
  }
  for (int c = 0; c < k; ++c) {
    for (auto& v : centroid[c]) v /= count[c];
  }
  for (auto& v : overall) v /= static_cast<double>(n);

  IndexRow row;
  row.k = k;

  double s_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[labels[i]] == 1) continue;
    std::vector<double> sum(k, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sum[labels[j]] += distance(points[i], points[j]);
    }
    const double a = sum[labels[i]] / (count[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c != labels[i]) b = std::min(b, sum[c] / count[c]);
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) s_total += (b - a) / denom;
  }
  row.silhouette = s_total / static_cast<double>(n);

  std::vector<double> scatter(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) scatter[labels[i]] += distance(points[i], centroid[labels[i]]);
  for (int c = 0; c < k; ++c) scatter[c] /= count[c];
  double db = 0.0;
  for (int i = 0; i < k; ++i) {
    double worst = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const double sep = distance(centroid[i], centroid[j]);
      const double r = sep > 0.0 ? (scatter[i] + scatter[j]) / sep : std::numeric_limits<double>::infinity();
      worst = std::max(worst, r);
    }
    db += worst;
  }
  row.davies_bouldin = db / k;

  double between = 0.0;
  double within = 0.0;
  for (int c = 0; c < k; ++c) {
    const double dc = distance(centroid[c], overall);
    between += count[c] * dc * dc;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double di = distance(points[i], centroid[labels[i]]);
    within += di * di;
  }
  if (within == 0.0) {
    row.calinski_harabasz = std::numeric_limits<double>::infinity();
  } else {
    row.calinski_harabasz = (between / (k - 1)) / (within / (static_cast<double>(n) - k));
  }
  return row;
}

int vote_k(std::span<const IndexRow> rows) {
  if (rows.empty()) throw InvalidRequest("no candidate cluster counts");
  const IndexRow* sil = &rows.front();
  const IndexRow* dbi = &rows.front();
  const IndexRow* chi = &rows.front();
  for (const auto& r : rows) {
    if (r.silhouette > sil->silhouette) sil = &r;
    if (r.davies_bouldin < dbi->davies_bouldin) dbi = &r;
    if (r.calinski_harabasz > chi->calinski_harabasz) chi = &r;
  }
  if (dbi->k == chi->k) return dbi->k;
  return sil->k;
}

ClusterModel ward_cluster(const Matrix& features, int k_min, int k_max) {
  if (k_min < 2 || k_max < k_min) throw InvalidRequest("bad cluster range");
  if (static_cast<int>(features.size()) < k_max + 1) {
    throw InsufficientData("clustering needs at least " + std::to_string(k_max + 1) + " students, got " +
                           std::to_string(features.size()));
  }
  ClusterModel m;
  m.raw = features;
  m.standardized = standardize(features, &m.means, &m.sds);
  m.merges = ward_linkage(m.standardized);
  const int n = static_cast<int>(features.size());
  for (int k = k_min; k <= k_max; ++k) {
    m.indices.push_back(cluster_indices(m.standardized, cut_tree(m.merges, n, k)));
  }
  m.chosen_k = vote_k(m.indices);
  m.assignments = cut_tree(m.merges, n, m.chosen_k);
  const std::size_t d = columns_of(features);
  m.centroids.assign(m.chosen_k, std::vector<double>(d, 0.0));
  std::vector<int> count(m.chosen_k, 0);
  for (int i = 0; i < n; ++i) {
    ++count[m.assignments[i]];
    for (std::size_t f = 0; f < d; ++f) m.centroids[m.assignments[i]][f] += features[i][f];
  }
  for (int c = 0; c < m.chosen_k; ++c) {
    for (auto& v : m.centroids[c]) v /= count[c];
  }
  return m;
}

}  // namespace ptutor::analytics
