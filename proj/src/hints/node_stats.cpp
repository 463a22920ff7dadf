#include "ptutor/hints/node_stats.hpp"

#include "ptutor/error.hpp"

namespace ptutor::hints {

void NodeStatistics::add_solution(const logic::ProofGraph& g) {
  ++solutions_;
  std::set<std::string> seen;
  for (int id : logic::needed_set(g)) {
    const logic::ProofNode* n = g.find(id);
    if (n != nullptr) seen.insert(logic::render(n->statement));
  }
  for (const std::string& s : seen) ++needed_counts_[s];
}

double NodeStatistics::needed_fraction(const logic::Formula& statement) const {
  if (solutions_ == 0) return 0.0;
  auto it = needed_counts_.find(logic::render(statement));
  if (it == needed_counts_.end()) return 0.0;
  return static_cast<double>(it->second) / solutions_;
}

logic::NodeColor node_color(const NodeStatistics& stats, const logic::Formula& statement) {
  const double share = stats.needed_fraction(statement);
  if (share <= 0.0) return logic::NodeColor::Gray;
  if (share >= kFrequentShare) return logic::NodeColor::Green;
  return logic::NodeColor::Yellow;
}

logic::ProofGraph graph_from_trace(const logic::ProblemStatement& problem, const SolutionTrace& trace) {
  logic::ProofGraph g(problem);
  for (const TraceStep& step : trace) {
    const std::string where = "problem " + problem.id + " step " + std::to_string(step.ordinal);
    logic::Justification why{step.rule, {}};
    for (const logic::Formula& src : step.sources) {
      int found = -1;
      for (const logic::ProofNode& n : g.nodes()) {
        if (n.id > 0 && n.statement == src) {
          found = n.id;
          break;
        }
      }
      if (found < 0) throw InvalidTrace(where + ": source " + logic::render(src) + " is not in the workspace");
      why.sources.push_back(found);
    }
    if (!logic::verify_step(step.rule, step.sources, step.derived).valid()) {
      throw InvalidTrace(where + ": step does not verify");
    }
    if (g.complete()) throw InvalidTrace(where + ": step after the conclusion was derived");
    g.add_derived(step.derived, std::move(why));
  }
  return g;
}

}  // namespace ptutor::hints
