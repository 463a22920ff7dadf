#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ptutor/logic/formula.hpp"
#include "ptutor/logic/rules.hpp"

namespace ptutor::logic {

/// Premises and goal of one problem.
struct ProblemStatement {
  std::string id;
  std::vector<Formula> premises;
  Formula conclusion;
};

enum class NodeKind { Premise, Derived, Conclusion, AssertionPending };
enum class NodeColor { None, Green, Yellow, Gray, Cyan };

std::string_view node_kind_name(NodeKind k);
std::string_view node_color_name(NodeColor c);

struct Justification {
  Rule rule;
  std::vector<int> sources;

  friend bool operator==(const Justification&, const Justification&) = default;
};

/// Node ids: premises and derived statements are numbered 1, 2, ... in
/// creation order (the numbers a student sees); the conclusion is 0; pending
/// assertions are numbered -1, -2, ... since they carry a "?" until justified.
inline constexpr int kConclusionId = 0;

struct ProofNode {
  int id = 0;
  Formula statement;
  NodeKind kind = NodeKind::Premise;
  std::optional<Justification> justification;
  NodeColor color = NodeColor::None;

  bool justified() const noexcept {
    return kind == NodeKind::Premise || justification.has_value();
  }
};

/// What an accepted step did to the workspace.
struct AddResult {
  int node = 0;                     ///< id of the node now holding the statement
  std::optional<int> converted;     ///< pending assertion id that the step justified
  bool completed = false;           ///< the step justified the conclusion
};

/// Append-only workspace for one attempt at a problem. Node ids strictly
/// increase and justification sources always point at earlier nodes.
class ProofGraph {
 public:
  explicit ProofGraph(ProblemStatement problem);

  const ProblemStatement& problem() const noexcept { return problem_; }
  const Formula& conclusion() const noexcept { return problem_.conclusion; }
  std::span<const ProofNode> nodes() const noexcept { return nodes_; }

  const ProofNode* find(int id) const;

  /// Adds a verified statement. Deriving the conclusion justifies the
  /// conclusion node; deriving a pending assertion's statement replaces the
  /// cyan node by a numbered one. Throws InvalidRequest if a source is not a
  /// justified node of this graph.
  AddResult add_derived(Formula statement, Justification why, NodeColor color = NodeColor::None);

  int add_pending_assertion(Formula statement);
  bool remove_pending_assertion(int id);
  std::optional<int> pending_with(const Formula& statement) const;

  /// Drops derived and pending nodes; premises and the conclusion remain.
  void clear_work();

  bool complete() const noexcept { return nodes_[conclusion_index_].justification.has_value(); }

  /// Statements usable as sources: premises, derived nodes and, once
  /// complete, the conclusion.
  std::vector<Formula> statements() const;

  std::size_t derived_count() const;

 private:
  ProblemStatement problem_;
  std::vector<ProofNode> nodes_;
  std::size_t conclusion_index_ = 0;
  int next_id_ = 1;
  int next_pending_id_ = -1;
};

/// The justified conclusion plus every node it transitively depends on.
/// Throws IncompleteProof on an incomplete graph.
std::set<int> needed_set(const ProofGraph& g);

struct SolutionSummary {
  bool complete = false;
  std::optional<std::size_t> length;  ///< derived statements, conclusion included
};

SolutionSummary solution_summary(const ProofGraph& g);

}  // namespace ptutor::logic
