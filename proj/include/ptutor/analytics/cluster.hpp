#pragma once

#include <span>
#include <vector>

#include "ptutor/simd/kernels.hpp"

namespace ptutor::analytics {

/// Row-major: one row per student.
using Matrix = std::vector<std::vector<double>>;

/// Per-column z-scores with the population sd. A constant column becomes 0.
Matrix standardize(const Matrix& raw, std::vector<double>* means = nullptr, std::vector<double>* sds = nullptr);

/// One agglomeration step. Clusters are numbered like scipy's linkage: leaves
/// 0..n-1, the cluster made by merge m is n+m. `height` is the Ward distance
/// sqrt(2*na*nb/(na+nb)) * |centroid_a - centroid_b|.
struct Merge {
  int a = 0;
  int b = 0;
  double height = 0.0;
  int size = 0;
};

/// Ward agglomeration via the Lance-Williams update on squared distances.
/// Ties go to the pair found first scanning rows then columns.
std::vector<Merge> ward_linkage(const Matrix& points, const simd::Kernels& kernels = simd::active_kernels());

/// Labels after undoing all but the first n-k merges. Labels are 0..k-1 in
/// order of each cluster's lowest-index member.
std::vector<int> cut_tree(std::span<const Merge> merges, int n, int k);

struct IndexRow {
  int k = 0;
  double silhouette = 0.0;
  double davies_bouldin = 0.0;
  double calinski_harabasz = 0.0;
};

/// Euclidean throughout. Singletons contribute 0 to the silhouette mean;
/// Calinski-Harabasz is +inf when every cluster is a single point in space.
/// Throws InvalidRequest for fewer than two clusters or an empty label.
IndexRow cluster_indices(const Matrix& points, std::span<const int> labels);

/// Each index nominates a k (highest silhouette, lowest Davies-Bouldin,
/// highest Calinski-Harabasz); the most nominated k wins, and with no
/// majority the silhouette's pick stands.
int vote_k(std::span<const IndexRow> rows);

struct ClusterModel {
  Matrix raw;
  std::vector<double> means;
  std::vector<double> sds;
  Matrix standardized;
  std::vector<Merge> merges;
  std::vector<IndexRow> indices;
  int chosen_k = 0;
  std::vector<int> assignments;
  Matrix centroids;  ///< raw units, one row per cluster
};

/// Throws InsufficientData with fewer than k_max+1 rows.
ClusterModel ward_cluster(const Matrix& features, int k_min = 2, int k_max = 5);

}  // namespace ptutor::analytics
