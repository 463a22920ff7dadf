#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptutor/analytics/cluster.hpp"
#include "ptutor/analytics/metrics.hpp"
#include "ptutor/analytics/proficiency.hpp"

namespace ptutor::analytics {

struct StudentMetrics {
  std::string session;
  std::string student;
  policy::Condition condition = policy::Condition::Assertions;
  HintMetrics hints;
  std::optional<PerformanceMetrics> pretest;
  std::optional<PerformanceMetrics> posttest;
  std::optional<double> proficiency_score;
  std::optional<ProficiencyClass> proficiency;
  EffortMetrics effort;
};

StudentMetrics student_metrics(const StudentLog& log);

/// Clustering features, in column order.
inline constexpr std::array<std::string_view, 5> kFeatureNames = {
    "posttest_time_min", "posttest_avg_length", "unsolved_time_min", "restarts", "hjr"};

/// Nullopt when the student lacks a posttest or received no unsolicited hint.
std::optional<std::array<double, 5>> cluster_features(const StudentMetrics& m);

struct CorrelationRow {
  std::string group;  ///< All, Low, High
  std::string x;
  std::string y;
  int n = 0;
  std::optional<double> r;  ///< nullopt when undefined for this group
};

struct CohortAnalysis {
  std::vector<StudentMetrics> students;
  std::vector<std::size_t> clustered;  ///< indices into students, in feature-row order
  std::optional<ClusterModel> clusters;
  std::string cluster_note;  ///< why clustering was skipped, if it was
  std::vector<CorrelationRow> correlations;
};

CohortAnalysis analyze_cohort(std::span<const StudentLog> logs);

/// Tab-separated sections: students, indices, centroids, correlations.
void write_report(std::ostream& out, const CohortAnalysis& a);

}  // namespace ptutor::analytics
