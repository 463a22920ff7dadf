#pragma once

#include <map>
#include <optional>

#include "ptutor/analytics/log_model.hpp"

namespace ptutor::analytics {

struct HintCounts {
  int given = 0;
  int justified = 0;
  int needed = 0;

  /// Undefined (nullopt) when no hints were given.
  std::optional<double> hjr() const;
  std::optional<double> hnr() const;

  HintCounts& operator+=(const HintCounts& o);
  friend bool operator==(const HintCounts&, const HintCounts&) = default;
};

struct HintMetrics {
  std::map<policy::HintKind, HintCounts> by_kind;
  HintCounts total;
  HintCounts unsolicited;  ///< Messages and Assertions pooled
};

/// A hint is justified when its statement is derived later in the same
/// attempt, and needed when that node also belongs to the needed set of the
/// attempt's completed solution. Hints from restarted or abandoned attempts
/// stay in the denominator.
HintMetrics compute_hint_metrics(const StudentLog& log);

struct PerformanceMetrics {
  int completed = 0;
  int valid_steps = 0;
  int error_steps = 0;
  double avg_length = 0.0;  ///< derived statements per completed problem
  double minutes = 0.0;     ///< capped
  double accuracy = 1.0;    ///< valid / all rule applications; 1 if none

  double minutes_per_step() const { return valid_steps > 0 ? minutes / valid_steps : 0.0; }
};

/// Pretest or posttest. Time sums capped gaps between consecutive events of
/// the phase. Throws IncompletePhase when fewer than the phase's problems
/// were completed, InvalidRequest for any other phase.
PerformanceMetrics performance_metrics(const StudentLog& log, Phase phase);

struct EffortMetrics {
  double unsolved_minutes = 0.0;  ///< on training problems skipped and never solved
  int restarts = 0;               ///< on training problems eventually solved
};

EffortMetrics effort_metrics(const StudentLog& log);

}  // namespace ptutor::analytics
