#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptutor/hints/state_key.hpp"
#include "ptutor/logic/formula.hpp"
#include "ptutor/logic/proof_graph.hpp"
#include "ptutor/logic/rules.hpp"

namespace ptutor::hints {

/// One verified step of a recorded solution attempt.
struct TraceStep {
  std::string problem;
  int ordinal = 0;
  logic::Rule rule = logic::Rule::MP;
  std::vector<logic::Formula> sources;
  logic::Formula derived;
};

using SolutionTrace = std::vector<TraceStep>;

/// Value assigned to states from which no goal is reachable.
inline constexpr double kDeadEnd = -std::numeric_limits<double>::infinity();

/// Markov decision process over observed problem-solving states. Each edge
/// adds exactly one statement, recorded as the edge's newest derived statement.
class InteractionNetwork {
 public:
  struct Edge {
    std::size_t target = 0;
    logic::Formula derived;
    int observations = 0;
  };

  struct State {
    StateKey key;
    bool goal = false;
    double value = 0.0;
    int visits = 0;
    std::vector<Edge> successors;
  };

  InteractionNetwork() = default;
  explicit InteractionNetwork(std::string problem_id) : problem_id_(std::move(problem_id)) {}

  const std::string& problem_id() const noexcept { return problem_id_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const State> states() const noexcept { return states_; }
  const State& state(std::size_t i) const { return states_.at(i); }
  State& state(std::size_t i) { return states_.at(i); }

  std::optional<std::size_t> find(const StateKey& key) const;

  /// Returns the index of the state with this key, creating it if needed.
  std::size_t add_state(const StateKey& key, bool goal);

  /// Records one observed transition; repeated observations bump the count.
  void add_edge(std::size_t from, std::size_t to, const logic::Formula& derived);

  std::size_t edge_count() const;

  /// Human-readable dump of states, values and edges.
  std::string dump() const;

 private:
  std::string problem_id_;
  std::vector<State> states_;
  std::map<StateKey, std::size_t> index_;
};

/// Builds a network from verified solution traces. The expert trace goes in
/// first so the initial state always exists and leads to a goal. Throws
/// InvalidTrace when a step does not verify against the statements present or
/// a trace never reaches the conclusion.
InteractionNetwork build_network(const logic::ProblemStatement& problem,
                                 std::span<const SolutionTrace> traces,
                                 const SolutionTrace& expert);

struct ValueParams {
  double goal_reward = 100.0;
  double step_cost = 1.0;
  double discount = 0.9;
  double epsilon = 1e-6;
  int max_iterations = 10000;
};

struct IterationReport {
  int sweeps = 0;
  bool converged = false;
  std::vector<double> deltas;  ///< max |V_new - V_old| per sweep
};

/// Synchronous Bellman backups until the largest change drops below epsilon.
/// Goals keep goal_reward; states that cannot reach a goal get kDeadEnd.
/// Throws NoGoalState when the network has no completed state.
IterationReport value_iterate(InteractionNetwork& net, const ValueParams& params = {});

struct HintContent {
  logic::Formula statement;
  StateKey source_state;
};

/// Next-step hint for `history[current]`, rolling back through the student's
/// earlier states until one is in the network with a viable successor. Among
/// successors the highest value wins; ties go to the lexicographically
/// smallest rendered statement.
std::optional<HintContent> hint_lookup(const InteractionNetwork& net,
                                       std::span<const StateKey> history, std::size_t current);

}  // namespace ptutor::hints
