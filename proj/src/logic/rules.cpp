#include "ptutor/logic/rules.hpp"

#include <algorithm>

namespace ptutor::logic {

namespace {

bool is_negation_of(const Formula& neg, const Formula& f) {
  return neg.is(Connective::Not) && neg.operand() == f;
}

// True when `to` is `from` rewritten at the root by the rule's equivalence,
// in either direction.
bool root_equivalent(Rule rule, const Formula& from, const Formula& to) {
  auto directed = [rule](const Formula& x, const Formula& y) {
    switch (rule) {
      case Rule::DN:
        // x == ~~y
        return x.is(Connective::Not) && x.operand().is(Connective::Not) && x.operand().operand() == y;
      case Rule::DeM: {
        if (!x.is(Connective::Not) || !x.operand().is_binary()) return false;
        const Formula& inner = x.operand();
        Connective flipped;
        if (inner.is(Connective::And)) {
          flipped = Connective::Or;
        } else if (inner.is(Connective::Or)) {
          flipped = Connective::And;
        } else {
          return false;
        }
        return y.is(flipped) && is_negation_of(y.left(), inner.left()) &&
               is_negation_of(y.right(), inner.right());
      }
      case Rule::Impl:
        return x.is(Connective::Implies) && y.is(Connective::Or) &&
               is_negation_of(y.left(), x.left()) && y.right() == x.right();
      default:
        return false;
    }
  };
  return directed(from, to) || directed(to, from);
}

// `b` differs from `a` by exactly one equivalence rewrite somewhere in the tree.
bool one_rewrite_apart(Rule rule, const Formula& a, const Formula& b) {
  if (root_equivalent(rule, a, b)) return true;
  if (a.connective() != b.connective()) return false;
  switch (a.connective()) {
    case Connective::Atom:
      return false;
    case Connective::Not:
      return one_rewrite_apart(rule, a.operand(), b.operand());
    default:
      return (a.left() == b.left() && one_rewrite_apart(rule, a.right(), b.right())) ||
             (a.right() == b.right() && one_rewrite_apart(rule, a.left(), b.left()));
  }
}

std::vector<Formula> root_transforms(Rule rule, const Formula& f) {
  std::vector<Formula> out;
  switch (rule) {
    case Rule::DN:
      out.push_back(Not(Not(f)));
      if (f.is(Connective::Not) && f.operand().is(Connective::Not)) out.push_back(f.operand().operand());
      break;
    case Rule::DeM:
      if (f.is(Connective::Not) && f.operand().is(Connective::And)) {
        out.push_back(Or(Not(f.operand().left()), Not(f.operand().right())));
      } else if (f.is(Connective::Not) && f.operand().is(Connective::Or)) {
        out.push_back(And(Not(f.operand().left()), Not(f.operand().right())));
      }
      if ((f.is(Connective::Or) || f.is(Connective::And)) && f.left().is(Connective::Not) &&
          f.right().is(Connective::Not)) {
        const Formula inner = Formula::binary(
            f.is(Connective::Or) ? Connective::And : Connective::Or, f.left().operand(),
            f.right().operand());
        out.push_back(Not(inner));
      }
      break;
    case Rule::Impl:
      if (f.is(Connective::Implies)) out.push_back(Or(Not(f.left()), f.right()));
      if (f.is(Connective::Or) && f.left().is(Connective::Not)) {
        out.push_back(Implies(f.left().operand(), f.right()));
      }
      break;
    default:
      break;
  }
  return out;
}

Verdict valid() { return {Outcome::Valid, {}}; }

Verdict invalid(Rule rule) {
  std::string msg;
  switch (rule) {
    case Rule::MP:
      msg = "Modus Ponens needs an implication and its antecedent; the derived statement must be "
            "the consequent.";
      break;
    case Rule::MT:
      msg = "Modus Tollens needs an implication and the negation of its consequent; the derived "
            "statement must be the negation of the antecedent.";
      break;
    case Rule::HS:
      msg = "Hypothetical Syllogism needs two implications where the consequent of one is the "
            "antecedent of the other.";
      break;
    case Rule::DS:
      msg = "Disjunctive Syllogism needs a disjunction and the negation of one disjunct; the "
            "derived statement must be the other disjunct.";
      break;
    case Rule::Simp:
      msg = "Simplification needs a conjunction; the derived statement must be one of its "
            "conjuncts.";
      break;
    case Rule::Conj:
      msg = "Conjunction joins the two selected statements with '&'.";
      break;
    case Rule::Add:
      msg = "Addition derives a disjunction that has the selected statement as one side.";
      break;
    case Rule::DN:
      msg = "Double Negation adds or removes '~~' in exactly one place.";
      break;
    case Rule::DeM:
      msg = "De Morgan rewrites ~(P&Q) as ~P|~Q or ~(P|Q) as ~P&~Q (or back) in exactly one place.";
      break;
    case Rule::Impl:
      msg = "Implication rewrites P->Q as ~P|Q (or back) in exactly one place.";
      break;
  }
  return {Outcome::InvalidRuleApplication, std::move(msg)};
}

bool binary_holds(Rule rule, const Formula& a, const Formula& b, const Formula& d) {
  switch (rule) {
    case Rule::MP:
      return a.is(Connective::Implies) && a.left() == b && d == a.right();
    case Rule::MT:
      return a.is(Connective::Implies) && is_negation_of(b, a.right()) && is_negation_of(d, a.left());
    case Rule::HS:
      return a.is(Connective::Implies) && b.is(Connective::Implies) && a.right() == b.left() &&
             d.is(Connective::Implies) && d.left() == a.left() && d.right() == b.right();
    case Rule::DS:
      return a.is(Connective::Or) && ((is_negation_of(b, a.left()) && d == a.right()) ||
                                      (is_negation_of(b, a.right()) && d == a.left()));
    case Rule::Conj:
      return d.is(Connective::And) && d.left() == a && d.right() == b;
    default:
      return false;
  }
}

void apply_binary(Rule rule, const Formula& a, const Formula& b, std::vector<Formula>& out) {
  switch (rule) {
    case Rule::MP:
      if (a.is(Connective::Implies) && a.left() == b) out.push_back(a.right());
      break;
    case Rule::MT:
      if (a.is(Connective::Implies) && is_negation_of(b, a.right())) out.push_back(Not(a.left()));
      break;
    case Rule::HS:
      if (a.is(Connective::Implies) && b.is(Connective::Implies) && a.right() == b.left()) {
        out.push_back(Implies(a.left(), b.right()));
      }
      break;
    case Rule::DS:
      if (a.is(Connective::Or)) {
        if (is_negation_of(b, a.left())) out.push_back(a.right());
        if (is_negation_of(b, a.right())) out.push_back(a.left());
      }
      break;
    case Rule::Conj:
      out.push_back(And(a, b));
      break;
    default:
      break;
  }
}

void push_unique(std::vector<Formula>& out, Formula f) {
  if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(std::move(f));
}

}  // namespace

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::MP: return "MP";
    case Rule::MT: return "MT";
    case Rule::HS: return "HS";
    case Rule::DS: return "DS";
    case Rule::Simp: return "Simp";
    case Rule::Conj: return "Conj";
    case Rule::Add: return "Add";
    case Rule::DN: return "DN";
    case Rule::DeM: return "DeM";
    case Rule::Impl: return "Impl";
  }
  return "?";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (Rule r : kAllRules) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

int rule_arity(Rule r) {
  switch (r) {
    case Rule::MP:
    case Rule::MT:
    case Rule::HS:
    case Rule::DS:
    case Rule::Conj:
      return 2;
    default:
      return 1;
  }
}

bool is_replacement(Rule r) { return r == Rule::DN || r == Rule::DeM || r == Rule::Impl; }

bool is_finitely_productive(Rule r) { return r != Rule::Add; }

Verdict verify_step(Rule rule, std::span<const Formula> sources, const Formula& derived) {
  const int arity = rule_arity(rule);
  if (static_cast<int>(sources.size()) != arity) {
    return {Outcome::MalformedDerivation,
            std::string(rule_name(rule)) + " takes " + std::to_string(arity) + " source statement" +
                (arity == 1 ? "" : "s") + ", but " + std::to_string(sources.size()) +
                " were selected."};
  }
  if (arity == 2) {
    const Formula& a = sources[0];
    const Formula& b = sources[1];
    return binary_holds(rule, a, b, derived) || binary_holds(rule, b, a, derived) ? valid()
                                                                                  : invalid(rule);
  }
  const Formula& s = sources[0];
  bool ok = false;
  switch (rule) {
    case Rule::Simp:
      ok = s.is(Connective::And) && (derived == s.left() || derived == s.right());
      break;
    case Rule::Add:
      ok = derived.is(Connective::Or) && (derived.left() == s || derived.right() == s);
      break;
    default:
      ok = is_replacement(rule) && one_rewrite_apart(rule, s, derived);
      break;
  }
  return ok ? valid() : invalid(rule);
}

std::vector<Formula> rewrites(Rule rule, const Formula& f) {
  std::vector<Formula> out;
  if (!is_replacement(rule)) return out;
  for (Formula& g : root_transforms(rule, f)) push_unique(out, std::move(g));
  switch (f.connective()) {
    case Connective::Atom:
      break;
    case Connective::Not:
      for (Formula& g : rewrites(rule, f.operand())) push_unique(out, Not(std::move(g)));
      break;
    default:
      for (Formula& g : rewrites(rule, f.left())) {
        push_unique(out, Formula::binary(f.connective(), std::move(g), f.right()));
      }
      for (Formula& g : rewrites(rule, f.right())) {
        push_unique(out, Formula::binary(f.connective(), f.left(), std::move(g)));
      }
      break;
  }
  return out;
}

std::vector<Formula> apply_rule(Rule rule, std::span<const Formula> sources) {
  std::vector<Formula> out;
  if (static_cast<int>(sources.size()) != rule_arity(rule) || !is_finitely_productive(rule)) {
    return out;
  }
  if (rule_arity(rule) == 2) {
    std::vector<Formula> tmp;
    apply_binary(rule, sources[0], sources[1], tmp);
    apply_binary(rule, sources[1], sources[0], tmp);
    for (Formula& f : tmp) push_unique(out, std::move(f));
    return out;
  }
  const Formula& s = sources[0];
  if (rule == Rule::Simp) {
    if (s.is(Connective::And)) {
      push_unique(out, s.left());
      push_unique(out, s.right());
    }
    return out;
  }
  return rewrites(rule, s);
}

std::vector<Derivation> enumerate_derivations(std::span<const Formula> statements) {
  std::vector<Derivation> out;
  for (Rule rule : kAllRules) {
    if (!is_finitely_productive(rule)) continue;
    if (rule_arity(rule) == 1) {
      for (const Formula& s : statements) {
        for (Formula& d : apply_rule(rule, std::span<const Formula>(&s, 1))) {
          out.push_back({rule, {s}, std::move(d)});
        }
      }
      continue;
    }
    for (std::size_t i = 0; i < statements.size(); ++i) {
      for (std::size_t j = i + 1; j < statements.size(); ++j) {
        const std::array<Formula, 2> pair{statements[i], statements[j]};
        for (Formula& d : apply_rule(rule, pair)) {
          out.push_back({rule, {pair[0], pair[1]}, std::move(d)});
        }
      }
    }
  }
  return out;
}

FormulaSet enumerate_one_step(std::span<const Formula> statements) {
  FormulaSet out;
  for (Derivation& d : enumerate_derivations(statements)) out.insert(std::move(d.derived));
  return out;
}

std::optional<Derivation> find_justification(std::span<const Formula> statements,
                                             const Formula& target) {
  for (Rule rule : kAllRules) {
    if (rule_arity(rule) != 1) continue;
    for (const Formula& s : statements) {
      if (verify_step(rule, std::span<const Formula>(&s, 1), target).valid()) {
        return Derivation{rule, {s}, target};
      }
    }
  }
  for (Rule rule : kAllRules) {
    if (rule_arity(rule) != 2) continue;
    for (std::size_t i = 0; i < statements.size(); ++i) {
      for (std::size_t j = i + 1; j < statements.size(); ++j) {
        const std::array<Formula, 2> pair{statements[i], statements[j]};
        if (verify_step(rule, pair, target).valid()) return Derivation{rule, {pair[0], pair[1]}, target};
      }
    }
  }
  return std::nullopt;
}

}  // namespace ptutor::logic
