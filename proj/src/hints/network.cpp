#include "ptutor/hints/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptutor/error.hpp"

namespace ptutor::hints {

using logic::Formula;

std::optional<std::size_t> InteractionNetwork::find(const StateKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t InteractionNetwork::add_state(const StateKey& key, bool goal) {
  if (auto existing = find(key)) return *existing;
  const std::size_t i = states_.size();
  states_.push_back({key, goal, 0.0, 0, {}});
  index_.emplace(key, i);
  return i;
}

void InteractionNetwork::add_edge(std::size_t from, std::size_t to, const Formula& derived) {
  auto& succ = states_.at(from).successors;
  auto it = std::find_if(succ.begin(), succ.end(), [to](const Edge& e) { return e.target == to; });
  if (it != succ.end()) {
    ++it->observations;
    return;
  }
  succ.push_back({to, derived, 1});
}

std::size_t InteractionNetwork::edge_count() const {
  std::size_t n = 0;
  for (const State& s : states_) n += s.successors.size();
  return n;
}

std::string InteractionNetwork::dump() const {
  std::ostringstream os;
  os.precision(12);
  os << "network " << problem_id_ << " states " << states_.size() << " edges " << edge_count() << "\n";
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const State& s = states_[i];
    os << "state " << i << " value " << s.value << " goal " << (s.goal ? 1 : 0) << " visits "
       << s.visits << " key " << s.key.str() << "\n";
    for (const Edge& e : s.successors) {
      os << "  -> " << e.target << " via " << logic::render(e.derived) << " x" << e.observations << "\n";
    }
  }
  return os.str();
}

namespace {

void replay_trace(InteractionNetwork& net, const logic::ProblemStatement& problem,
                  const SolutionTrace& trace) {
  std::vector<Formula> present = problem.premises;
  std::size_t current = net.add_state(make_state(present, false), false);
  ++net.state(current).visits;
  bool complete = false;

  for (const TraceStep& step : trace) {
    const std::string where = "problem " + problem.id + " step " + std::to_string(step.ordinal);
    if (complete) throw InvalidTrace(where + ": step after the conclusion was derived");
    for (const Formula& src : step.sources) {
      if (std::find(present.begin(), present.end(), src) == present.end()) {
        throw InvalidTrace(where + ": source " + logic::render(src) + " is not in the workspace");
      }
    }
    const logic::Verdict v = logic::verify_step(step.rule, step.sources, step.derived);
    if (!v.valid()) throw InvalidTrace(where + ": " + v.feedback);

    if (std::find(present.begin(), present.end(), step.derived) != present.end()) continue;
    present.push_back(step.derived);
    complete = step.derived == problem.conclusion;
    const std::size_t next = net.add_state(make_state(present, complete), complete);
    ++net.state(next).visits;
    net.add_edge(current, next, step.derived);
    current = next;
  }
  if (!complete) throw InvalidTrace("problem " + problem.id + ": trace never derives the conclusion");
}

}  // namespace

InteractionNetwork build_network(const logic::ProblemStatement& problem,
                                 std::span<const SolutionTrace> traces,
                                 const SolutionTrace& expert) {
  InteractionNetwork net(problem.id);
  replay_trace(net, problem, expert);
  for (const SolutionTrace& t : traces) replay_trace(net, problem, t);
  return net;
}

IterationReport value_iterate(InteractionNetwork& net, const ValueParams& params) {
  const std::size_t n = net.size();
  std::vector<char> reaches_goal(n, 0);
  std::vector<std::vector<std::size_t>> predecessors(n);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : net.state(i).successors) predecessors[e.target].push_back(i);
    if (net.state(i).goal) {
      reaches_goal[i] = 1;
      frontier.push_back(i);
    }
  }
  if (frontier.empty()) throw NoGoalState("network " + net.problem_id() + " has no completed state");
  while (!frontier.empty()) {
    const std::size_t s = frontier.back();
    frontier.pop_back();
    for (std::size_t p : predecessors[s]) {
      if (!reaches_goal[p] && !net.state(p).goal) {
        reaches_goal[p] = 1;
        frontier.push_back(p);
      }
    }
  }

  std::vector<double> value(n);
  for (std::size_t i = 0; i < n; ++i) {
    value[i] = net.state(i).goal ? params.goal_reward : (reaches_goal[i] ? 0.0 : kDeadEnd);
  }

  IterationReport report;
  std::vector<double> next(value);
  while (report.sweeps < params.max_iterations) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = net.state(i);
      if (s.goal || !reaches_goal[i]) continue;
      double best = kDeadEnd;
      for (const auto& e : s.successors) {
        if (!reaches_goal[e.target]) continue;
        best = std::max(best, -params.step_cost + params.discount * value[e.target]);
      }
      next[i] = best;
      delta = std::max(delta, std::abs(best - value[i]));
    }
    value.swap(next);
    ++report.sweeps;
    report.deltas.push_back(delta);
    if (delta < params.epsilon) {
      report.converged = true;
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) net.state(i).value = value[i];
  return report;
}

std::optional<HintContent> hint_lookup(const InteractionNetwork& net,
                                       std::span<const StateKey> history, std::size_t current) {
  if (history.empty()) return std::nullopt;
  current = std::min(current, history.size() - 1);
  for (std::size_t i = current + 1; i-- > 0;) {
    auto idx = net.find(history[i]);
    if (!idx) continue;
    const auto& s = net.state(*idx);
    if (s.goal) continue;
    const InteractionNetwork::Edge* best = nullptr;
    double best_value = kDeadEnd;
    std::string best_text;
    for (const auto& e : s.successors) {
      const double v = net.state(e.target).value;
      if (!std::isfinite(v)) continue;
      std::string text = logic::render(e.derived);
      if (best == nullptr || v > best_value || (v == best_value && text < best_text)) {
        best = &e;
        best_value = v;
        best_text = std::move(text);
      }
    }
    if (best != nullptr) return HintContent{best->derived, net.state(best->target).key};
  }
  return std::nullopt;
}

}  // namespace ptutor::hints
