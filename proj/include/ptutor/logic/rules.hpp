#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ptutor/logic/formula.hpp"

namespace ptutor::logic {

/// Rule buttons on the tutor's rule panel.
enum class Rule { MP, MT, HS, DS, Simp, Conj, Add, DN, DeM, Impl };

inline constexpr std::array<Rule, 10> kAllRules = {Rule::MP,   Rule::MT,  Rule::HS, Rule::DS,
                                                   Rule::Simp, Rule::Conj, Rule::Add, Rule::DN,
                                                   Rule::DeM,  Rule::Impl};

std::string_view rule_name(Rule r);
std::optional<Rule> parse_rule(std::string_view name);

/// Number of source statements the rule consumes.
int rule_arity(Rule r);

/// DN, DeM and Impl rewrite one subformula by a logical equivalence.
bool is_replacement(Rule r);

/// Every rule except Add has a finite set of possible conclusions.
bool is_finitely_productive(Rule r);

enum class Outcome { Valid, InvalidRuleApplication, MalformedDerivation };

struct Verdict {
  Outcome outcome = Outcome::Valid;
  std::string feedback;

  bool valid() const noexcept { return outcome == Outcome::Valid; }
};

/// Checks that `derived` follows from exactly `sources` by one application of
/// `rule`. Binary rules accept their sources in either order.
Verdict verify_step(Rule rule, std::span<const Formula> sources, const Formula& derived);

/// One concrete rule application.
struct Derivation {
  Rule rule;
  std::vector<Formula> sources;
  Formula derived;
};

/// Every statement obtainable from `sources` by `rule` (finitely productive
/// rules only; Add yields nothing). Generated constructively, independent of
/// verify_step.
std::vector<Formula> apply_rule(Rule rule, std::span<const Formula> sources);

/// Every single-position rewrite of `f` under a replacement rule, in both
/// directions of the equivalence.
std::vector<Formula> rewrites(Rule rule, const Formula& f);

/// All one-step applications of finitely productive rules over ordered tuples
/// of distinct statements.
std::vector<Derivation> enumerate_derivations(std::span<const Formula> statements);

using FormulaSet = std::unordered_set<Formula, FormulaHash>;

FormulaSet enumerate_one_step(std::span<const Formula> statements);

/// Searches for any rule (Add included) and source tuple from `statements`
/// that justifies `target`. Tries rules in panel order, unary before binary.
std::optional<Derivation> find_justification(std::span<const Formula> statements,
                                             const Formula& target);

}  // namespace ptutor::logic
