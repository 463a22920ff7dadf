#include "ptutor/logic/proof_graph.hpp"

#include <algorithm>

#include "ptutor/error.hpp"

namespace ptutor::logic {

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Premise: return "premise";
    case NodeKind::Derived: return "derived";
    case NodeKind::Conclusion: return "conclusion";
    case NodeKind::AssertionPending: return "assertion";
  }
  return "?";
}

std::string_view node_color_name(NodeColor c) {
  switch (c) {
    case NodeColor::None: return "none";
    case NodeColor::Green: return "green";
    case NodeColor::Yellow: return "yellow";
    case NodeColor::Gray: return "gray";
    case NodeColor::Cyan: return "cyan";
  }
  return "?";
}

ProofGraph::ProofGraph(ProblemStatement problem) : problem_(std::move(problem)) {
  nodes_.reserve(problem_.premises.size() + 8);
  for (const Formula& p : problem_.premises) {
    nodes_.push_back({next_id_++, p, NodeKind::Premise, std::nullopt, NodeColor::None});
  }
  conclusion_index_ = nodes_.size();
  nodes_.push_back({kConclusionId, problem_.conclusion, NodeKind::Conclusion, std::nullopt,
                    NodeColor::None});
}

const ProofNode* ProofGraph::find(int id) const {
  auto it = std::find_if(nodes_.begin(), nodes_.end(), [id](const ProofNode& n) { return n.id == id; });
  return it == nodes_.end() ? nullptr : &*it;
}

AddResult ProofGraph::add_derived(Formula statement, Justification why, NodeColor color) {
  for (int src : why.sources) {
    const ProofNode* n = find(src);
    if (n == nullptr || src <= 0 || !n->justified()) {
      throw InvalidRequest("node " + std::to_string(src) + " cannot be used as a source");
    }
  }
  AddResult result;
  if (complete()) throw InvalidRequest("problem is already complete");

  if (statement == problem_.conclusion) {
    nodes_[conclusion_index_].justification = std::move(why);
    nodes_[conclusion_index_].color = color;
    result.node = kConclusionId;
    result.completed = true;
    // A subgoal that was the conclusion itself is satisfied too.
    if (auto pending = pending_with(statement)) {
      remove_pending_assertion(*pending);
      result.converted = pending;
    }
    return result;
  }

  if (auto pending = pending_with(statement)) {
    remove_pending_assertion(*pending);
    result.converted = pending;
  }
  result.node = next_id_++;
  nodes_.push_back({result.node, std::move(statement), NodeKind::Derived, std::move(why), color});
  return result;
}

int ProofGraph::add_pending_assertion(Formula statement) {
  const int id = next_pending_id_--;
  nodes_.push_back({id, std::move(statement), NodeKind::AssertionPending, std::nullopt, NodeColor::Cyan});
  return id;
}

bool ProofGraph::remove_pending_assertion(int id) {
  auto it = std::find_if(nodes_.begin(), nodes_.end(), [id](const ProofNode& n) {
    return n.id == id && n.kind == NodeKind::AssertionPending;
  });
  if (it == nodes_.end()) return false;
  nodes_.erase(it);
  return true;
}

std::optional<int> ProofGraph::pending_with(const Formula& statement) const {
  for (const ProofNode& n : nodes_) {
    if (n.kind == NodeKind::AssertionPending && n.statement == statement) return n.id;
  }
  return std::nullopt;
}

void ProofGraph::clear_work() {
  std::erase_if(nodes_, [](const ProofNode& n) {
    return n.kind == NodeKind::Derived || n.kind == NodeKind::AssertionPending;
  });
  nodes_[conclusion_index_].justification.reset();
  nodes_[conclusion_index_].color = NodeColor::None;
  next_id_ = static_cast<int>(problem_.premises.size()) + 1;
  next_pending_id_ = -1;
}

std::vector<Formula> ProofGraph::statements() const {
  std::vector<Formula> out;
  out.reserve(nodes_.size());
  for (const ProofNode& n : nodes_) {
    if (n.kind == NodeKind::AssertionPending) continue;
    if (n.kind == NodeKind::Conclusion && !n.justification) continue;
    out.push_back(n.statement);
  }
  return out;
}

std::size_t ProofGraph::derived_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const ProofNode& n) {
    return n.kind == NodeKind::Derived || (n.kind == NodeKind::Conclusion && n.justification);
  }));
}

std::set<int> needed_set(const ProofGraph& g) {
  if (!g.complete()) throw IncompleteProof("needed set is only defined for complete proofs");
  std::set<int> needed;
  std::vector<int> stack{kConclusionId};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (!needed.insert(id).second) continue;
    const ProofNode* n = g.find(id);
    if (n != nullptr && n->justification) {
      for (int src : n->justification->sources) stack.push_back(src);
    }
  }
  return needed;
}

SolutionSummary solution_summary(const ProofGraph& g) {
  SolutionSummary s;
  s.complete = g.complete();
  if (s.complete) s.length = g.derived_count();
  return s;
}

}  // namespace ptutor::logic
