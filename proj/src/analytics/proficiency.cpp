#include "ptutor/analytics/proficiency.hpp"

#include <algorithm>

#include "ptutor/error.hpp"

namespace ptutor::analytics {

std::string_view proficiency_name(ProficiencyClass c) { return c == ProficiencyClass::High ? "High" : "Low"; }

std::vector<double> min_max(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.5);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (range == 0.0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

ProficiencyResult proficiency_split(std::span<const ProficiencyInput> cohort) {
  if (cohort.size() < 2) throw InsufficientData("proficiency needs at least two students");
  std::vector<double> steps;
  std::vector<double> pace;
  std::vector<double> accuracy;
  for (const auto& s : cohort) {
    steps.push_back(s.steps);
    pace.push_back(s.minutes_per_step);
    accuracy.push_back(s.accuracy);
  }
  const auto n_steps = min_max(steps);
  const auto n_pace = min_max(pace);
  const auto n_acc = min_max(accuracy);
  std::vector<double> combined(cohort.size());
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    combined[i] = ((1.0 - n_steps[i]) + (1.0 - n_pace[i]) + n_acc[i]) / 3.0;
  }
  ProficiencyResult r;
  r.scores = min_max(combined);
  for (double s : r.scores) r.classes.push_back(s > 0.5 ? ProficiencyClass::High : ProficiencyClass::Low);
  return r;
}

}  // namespace ptutor::analytics
