#include "ptutor/hints/state_key.hpp"

#include <algorithm>

namespace ptutor::hints {

std::string StateKey::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (i != 0) out += "; ";
    out += statements[i];
  }
  out += "}";
  if (complete) out += "!";
  return out;
}

StateKey make_state(std::span<const logic::Formula> statements, bool complete) {
  StateKey key;
  key.complete = complete;
  key.statements.reserve(statements.size());
  for (const logic::Formula& f : statements) key.statements.push_back(logic::render(f));
  std::sort(key.statements.begin(), key.statements.end());
  key.statements.erase(std::unique(key.statements.begin(), key.statements.end()),
                       key.statements.end());
  return key;
}

StateKey canonical_state(const logic::ProofGraph& g) {
  const std::vector<logic::Formula> s = g.statements();
  return make_state(s, g.complete());
}

}  // namespace ptutor::hints
