#include "ptutor/hints/hint_library.hpp"

namespace ptutor::hints {

HintLibrary HintLibrary::build(std::span<const SeededProblem> problems,
                               const std::map<std::string, std::vector<SolutionTrace>>& corpus,
                               const ValueParams& params) {
  HintLibrary lib;
  static const std::vector<SolutionTrace> kNone;
  for (const SeededProblem& seed : problems) {
    auto it = corpus.find(seed.problem.id);
    const std::vector<SolutionTrace>& traces = it == corpus.end() ? kNone : it->second;

    ProblemModel model{seed.problem, build_network(seed.problem, traces, seed.expert), {}, {}};
    model.iteration = value_iterate(model.network, params);
    model.stats.add_solution(graph_from_trace(seed.problem, seed.expert));
    for (const SolutionTrace& t : traces) model.stats.add_solution(graph_from_trace(seed.problem, t));
    lib.models_.insert_or_assign(seed.problem.id, std::move(model));
  }
  return lib;
}

const ProblemModel* HintLibrary::find(const std::string& problem_id) const {
  auto it = models_.find(problem_id);
  return it == models_.end() ? nullptr : &it->second;
}

}  // namespace ptutor::hints
