#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace ptutor::analytics {

enum class ProficiencyClass { Low, High };
std::string_view proficiency_name(ProficiencyClass c);

struct ProficiencyInput {
  double steps = 0;             ///< fewer is better
  double minutes_per_step = 0;  ///< fewer is better
  double accuracy = 0;          ///< more is better
};

struct ProficiencyResult {
  std::vector<double> scores;
  std::vector<ProficiencyClass> classes;
};

/// Min-max normalizes each measure over the cohort (a constant measure gives
/// everyone 0.5), averages them, and min-max normalizes the average again.
/// High iff the final score exceeds 0.5. Throws InsufficientData below two
/// students.
ProficiencyResult proficiency_split(std::span<const ProficiencyInput> cohort);

/// Min-max scaling to [0, 1]; 0.5 everywhere when the values are all equal.
std::vector<double> min_max(std::span<const double> values);

}  // namespace ptutor::analytics
