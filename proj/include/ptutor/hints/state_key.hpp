#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "ptutor/logic/formula.hpp"
#include "ptutor/logic/proof_graph.hpp"

namespace ptutor::hints {

/// Order-independent snapshot of an attempt: the sorted, de-duplicated set of
/// rendered statements plus whether the conclusion has been justified.
struct StateKey {
  std::vector<std::string> statements;
  bool complete = false;

  /// `{s1; s2; ...}` with a trailing `!` for completed states.
  std::string str() const;

  friend bool operator==(const StateKey&, const StateKey&) = default;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

StateKey make_state(std::span<const logic::Formula> statements, bool complete);

/// Pending (unjustified) assertions never contribute to the key.
StateKey canonical_state(const logic::ProofGraph& g);

}  // namespace ptutor::hints
