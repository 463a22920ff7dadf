#include "ptutor/analytics/report.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "ptutor/analytics/stats.hpp"
#include "ptutor/error.hpp"

namespace ptutor::analytics {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

}  // namespace

StudentMetrics student_metrics(const StudentLog& log) {
  StudentMetrics m;
  m.session = log.session;
  m.student = log.student;
  m.condition = log.condition;
  m.hints = compute_hint_metrics(log);
  try {
    m.pretest = performance_metrics(log, Phase::Pretest);
  } catch (const IncompletePhase&) {
  }
  try {
    m.posttest = performance_metrics(log, Phase::Posttest);
  } catch (const IncompletePhase&) {
  }
  m.effort = effort_metrics(log);
  return m;
}

std::optional<std::array<double, 5>> cluster_features(const StudentMetrics& m) {
  const auto hjr = m.hints.unsolicited.hjr();
  if (!m.posttest || !hjr) return std::nullopt;
  return std::array<double, 5>{m.posttest->minutes, m.posttest->avg_length, m.effort.unsolved_minutes,
                               static_cast<double>(m.effort.restarts), *hjr};
}

CohortAnalysis analyze_cohort(std::span<const StudentLog> logs) {
  CohortAnalysis a;
  for (const auto& log : logs) a.students.push_back(student_metrics(log));

  std::vector<std::size_t> with_pretest;
  std::vector<ProficiencyInput> inputs;
  for (std::size_t i = 0; i < a.students.size(); ++i) {
    const auto& pre = a.students[i].pretest;
    if (!pre) continue;
    with_pretest.push_back(i);
    inputs.push_back({static_cast<double>(pre->valid_steps), pre->minutes_per_step(), pre->accuracy});
  }
  if (inputs.size() >= 2) {
    const auto split = proficiency_split(inputs);
    for (std::size_t j = 0; j < with_pretest.size(); ++j) {
      a.students[with_pretest[j]].proficiency_score = split.scores[j];
      a.students[with_pretest[j]].proficiency = split.classes[j];
    }
  }

  Matrix features;
  for (std::size_t i = 0; i < a.students.size(); ++i) {
    if (auto f = cluster_features(a.students[i])) {
      a.clustered.push_back(i);
      features.emplace_back(f->begin(), f->end());
    }
  }
  try {
    a.clusters = ward_cluster(features);
  } catch (const InsufficientData& e) {
    a.clustered.clear();
    a.cluster_note = e.what();
  }

  using Getter = std::function<std::optional<double>(const StudentMetrics&)>;
  const std::vector<std::pair<std::string, Getter>> outcomes = {
      {"posttest_avg_length", [](const StudentMetrics& m) -> std::optional<double> {
         return m.posttest ? std::optional(m.posttest->avg_length) : std::nullopt;
       }},
      {"posttest_time_min", [](const StudentMetrics& m) -> std::optional<double> {
         return m.posttest ? std::optional(m.posttest->minutes) : std::nullopt;
       }},
  };
  const std::vector<std::pair<std::string, Getter>> predictors = {
      {"unsolicited_given", [](const StudentMetrics& m) -> std::optional<double> {
         return static_cast<double>(m.hints.unsolicited.given);
       }},
      {"hjr", [](const StudentMetrics& m) { return m.hints.unsolicited.hjr(); }},
      {"hnr", [](const StudentMetrics& m) { return m.hints.unsolicited.hnr(); }},
      {"posttest_time_min", outcomes[1].second},
  };
  for (const std::string group : {"All", "Low", "High"}) {
    for (const auto& [yname, yget] : outcomes) {
      for (const auto& [xname, xget] : predictors) {
        if (xname == yname) continue;
        CorrelationRow row{group, xname, yname, 0, std::nullopt};
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto& s : a.students) {
          if (group != "All" && (!s.proficiency || proficiency_name(*s.proficiency) != group)) continue;
          const auto x = xget(s);
          const auto y = yget(s);
          if (!x || !y) continue;
          xs.push_back(*x);
          ys.push_back(*y);
        }
        row.n = static_cast<int>(xs.size());
        try {
          row.r = pearson_corr(xs, ys);
        } catch (const Error&) {
        }
        a.correlations.push_back(std::move(row));
      }
    }
  }
  return a;
}

void write_report(std::ostream& out, const CohortAnalysis& a) {
  out << "# students\n";
  out << "session\tstudent\tcondition\tgiven\tjustified\tneeded\tHJR\tHNR"
         "\tunsolicited_given\tunsolicited_justified\tunsolicited_needed\tunsolicited_HJR\tunsolicited_HNR"
         "\tpre_length\tpre_time_min\tpre_accuracy\tpost_length\tpost_time_min\tpost_accuracy"
         "\tproficiency\tclass\tunsolved_time_min\trestarts\tcluster\n";
  std::vector<std::optional<int>> cluster_of(a.students.size());
  if (a.clusters) {
    for (std::size_t j = 0; j < a.clustered.size(); ++j) cluster_of[a.clustered[j]] = a.clusters->assignments[j] + 1;
  }
  for (std::size_t i = 0; i < a.students.size(); ++i) {
    const auto& s = a.students[i];
    const auto& t = s.hints.total;
    const auto& u = s.hints.unsolicited;
    out << s.session << '\t' << s.student << '\t' << policy::condition_name(s.condition) << '\t' << t.given << '\t'
        << t.justified << '\t' << t.needed << '\t' << opt(t.hjr()) << '\t' << opt(t.hnr()) << '\t' << u.given << '\t'
        << u.justified << '\t' << u.needed << '\t' << opt(u.hjr()) << '\t' << opt(u.hnr());
    for (const auto& p : {s.pretest, s.posttest}) {
      if (p) out << '\t' << num(p->avg_length) << '\t' << num(p->minutes) << '\t' << num(p->accuracy);
      else out << "\tNA\tNA\tNA";
    }
    out << '\t' << opt(s.proficiency_score) << '\t' << (s.proficiency ? proficiency_name(*s.proficiency) : "NA")
        << '\t' << num(s.effort.unsolved_minutes) << '\t' << s.effort.restarts << '\t'
        << (cluster_of[i] ? std::to_string(*cluster_of[i]) : "NA") << '\n';
  }

  out << "\n# cluster_indices\n";
  if (!a.clusters) {
    out << "skipped\t" << a.cluster_note << '\n';
  } else {
    out << "index";
    for (const auto& r : a.clusters->indices) out << "\tk=" << r.k;
    out << '\n';
    out << "silhouette";
    for (const auto& r : a.clusters->indices) out << '\t' << num(r.silhouette);
    out << "\ndavies_bouldin";
    for (const auto& r : a.clusters->indices) out << '\t' << num(r.davies_bouldin);
    out << "\ncalinski_harabasz";
    for (const auto& r : a.clusters->indices) out << '\t' << num(r.calinski_harabasz);
    out << "\nchosen_k\t" << a.clusters->chosen_k << '\n';

    out << "\n# cluster_centroids\n";
    out << "feature\tclass_average";
    for (int c = 1; c <= a.clusters->chosen_k; ++c) out << "\tcluster_" << c;
    out << '\n';
    out << "students\t" << a.clustered.size();
    std::vector<int> sizes(a.clusters->chosen_k, 0);
    for (int l : a.clusters->assignments) ++sizes[l];
    for (int c : sizes) out << '\t' << c;
    out << '\n';
    for (std::size_t f = 0; f < kFeatureNames.size(); ++f) {
      out << kFeatureNames[f] << '\t' << num(a.clusters->means[f]);
      for (const auto& c : a.clusters->centroids) out << '\t' << num(c[f]);
      out << '\n';
    }
  }

  out << "\n# correlations\n";
  out << "group\tx\ty\tn\tr\n";
  for (const auto& r : a.correlations) {
    out << r.group << '\t' << r.x << '\t' << r.y << '\t' << r.n << '\t' << opt(r.r) << '\n';
  }
}

}  // namespace ptutor::analytics
