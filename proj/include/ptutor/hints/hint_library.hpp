#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ptutor/hints/network.hpp"
#include "ptutor/hints/node_stats.hpp"

namespace ptutor::hints {

/// Everything the tutor knows about one problem from prior data.
struct ProblemModel {
  logic::ProblemStatement problem;
  InteractionNetwork network;
  NodeStatistics stats;
  IterationReport iteration;
};

struct SeededProblem {
  logic::ProblemStatement problem;
  SolutionTrace expert;
};

/// Read-only collection of per-problem models; safe to share across sessions.
class HintLibrary {
 public:
  /// Builds one network per problem from its expert solution plus any corpus
  /// traces for that problem id, then runs value iteration.
  static HintLibrary build(std::span<const SeededProblem> problems,
                           const std::map<std::string, std::vector<SolutionTrace>>& corpus = {},
                           const ValueParams& params = {});

  const ProblemModel* find(const std::string& problem_id) const;
  std::size_t size() const noexcept { return models_.size(); }

 private:
  std::map<std::string, ProblemModel> models_;
};

}  // namespace ptutor::hints
