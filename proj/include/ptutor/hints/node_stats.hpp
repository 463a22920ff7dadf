#pragma once

#include <map>
#include <string>

#include "ptutor/hints/network.hpp"
#include "ptutor/logic/proof_graph.hpp"

namespace ptutor::hints {

/// Per-problem record of how often each statement was needed in prior
/// complete solutions.
class NodeStatistics {
 public:
  void add_solution(const logic::ProofGraph& complete_graph);

  int solutions() const noexcept { return solutions_; }
  double needed_fraction(const logic::Formula& statement) const;

 private:
  int solutions_ = 0;
  std::map<std::string, int> needed_counts_;
};

/// Green when needed in at least this share of prior solutions.
inline constexpr double kFrequentShare = 0.2;

/// Gray: never needed; Yellow: needed in under 20% of solutions; Green otherwise.
logic::NodeColor node_color(const NodeStatistics& stats, const logic::Formula& statement);

/// Rebuilds the proof graph a trace produces. Throws InvalidTrace on a step
/// whose sources are missing or that does not verify.
logic::ProofGraph graph_from_trace(const logic::ProblemStatement& problem, const SolutionTrace& trace);

}  // namespace ptutor::hints
