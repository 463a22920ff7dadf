#include "ptutor/session/bank_builder.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptutor::session {

using logic::Formula;
using logic::Rule;

namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

hints::TraceStep step(const std::string& problem, int ordinal, Rule rule,
                      std::initializer_list<const char*> sources, const char* derived) {
  hints::TraceStep s;
  s.problem = problem;
  s.ordinal = ordinal;
  s.rule = rule;
  for (const char* src : sources) s.sources.push_back(logic::parse_formula(src));
  s.derived = logic::parse_formula(derived);
  return s;
}

Formula literal(std::mt19937_64& rng, const std::string& letters) {
  Formula a = logic::Atom(letters[below(rng, letters.size())]);
  return below(rng, 10) < 3 ? logic::Not(a) : a;
}

Formula random_premise(std::mt19937_64& rng, const std::string& letters) {
  const auto roll = below(rng, 20);
  if (roll < 9) return logic::Implies(literal(rng, letters), literal(rng, letters));
  if (roll < 12) return logic::And(literal(rng, letters), literal(rng, letters));
  if (roll < 16) return logic::Or(literal(rng, letters), literal(rng, letters));
  return literal(rng, letters);
}

bool acceptable(const Formula& f) {
  if (f.depth() > 3) return false;
  const std::string text = logic::render(f);
  return text.find("~~") == std::string::npos;
}

struct Chained {
  Rule rule;
  std::vector<Formula> sources;
  Formula derived;
};

}  // namespace

Problem worked_problem(Phase section, int level) {
  Problem p;
  p.statement.id = "worked";
  for (const char* s : {"A->C", "B", "C->E", "D&~E"}) p.statement.premises.push_back(logic::parse_formula(s));
  p.statement.conclusion = logic::parse_formula("~A&B");
  p.section = section;
  p.level = section == Phase::Training ? level : 0;
  p.rank = 6;
  p.intended_rules = {Rule::Simp, Rule::Impl, Rule::MT, Rule::DS, Rule::Conj};
  p.expert = {
      step("worked", 1, Rule::Simp, {"D&~E"}, "D"),
      step("worked", 2, Rule::Simp, {"D&~E"}, "~E"),
      step("worked", 3, Rule::Impl, {"A->C"}, "~A|C"),
      step("worked", 4, Rule::MT, {"C->E", "~E"}, "~C"),
      step("worked", 5, Rule::DS, {"~A|C", "~C"}, "~A"),
      step("worked", 6, Rule::Conj, {"B", "~A"}, "~A&B"),
  };
  return p;
}

std::optional<Problem> generate_problem(std::string id, std::mt19937_64& rng, int min_length,
                                        int max_length) {
  static const std::string kLetters = "ABCDEFG";
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::string letters;
    for (char c : kLetters) {
      if (below(rng, 10) < 7) letters.push_back(c);
    }
    if (letters.size() < 3) continue;

    std::vector<Formula> premises;
    const int n_premises = 3 + static_cast<int>(below(rng, 3));
    while (static_cast<int>(premises.size()) < n_premises) {
      Formula f = random_premise(rng, letters);
      if (f.is_binary() && f.left() == f.right()) continue;
      if (std::find(premises.begin(), premises.end(), f) == premises.end()) premises.push_back(f);
    }

    std::vector<Formula> present = premises;
    std::vector<Chained> chain;
    for (int i = 0; i < max_length * 3; ++i) {
      std::map<Rule, std::vector<logic::Derivation>> by_rule;
      for (auto& d : logic::enumerate_derivations(present)) {
        if (!acceptable(d.derived)) continue;
        if (std::find(present.begin(), present.end(), d.derived) != present.end()) continue;
        by_rule[d.rule].push_back(std::move(d));
      }
      if (by_rule.empty()) break;
      // Conj is always applicable; keep it rare so chains stay goal-directed.
      std::vector<Rule> rules;
      for (const auto& [rule, list] : by_rule) {
        if (rule != Rule::Conj || below(rng, 6) == 0) rules.push_back(rule);
      }
      if (rules.empty()) rules.push_back(Rule::Conj);
      const Rule rule = rules[below(rng, rules.size())];
      auto& options = by_rule[rule];
      logic::Derivation pick = options[below(rng, options.size())];
      present.push_back(pick.derived);
      chain.push_back({pick.rule, pick.sources, pick.derived});
    }

    // Ancestry of every derived statement, measured in chain steps.
    std::map<std::size_t, std::set<std::size_t>> ancestry;
    auto producer = [&](const Formula& f, std::size_t before) -> std::optional<std::size_t> {
      for (std::size_t k = 0; k < before; ++k) {
        if (chain[k].derived == f) return k;
      }
      return std::nullopt;
    };
    for (std::size_t k = 0; k < chain.size(); ++k) {
      std::set<std::size_t> anc{k};
      for (const Formula& src : chain[k].sources) {
        if (auto j = producer(src, k)) anc.insert(ancestry[*j].begin(), ancestry[*j].end());
      }
      ancestry[k] = std::move(anc);
    }

    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const int len = static_cast<int>(ancestry[k].size());
      if (len < min_length || len > max_length) continue;
      if (!best || len > static_cast<int>(ancestry[*best].size())) best = k;
    }
    if (!best) continue;

    Problem p;
    p.statement.id = id;
    p.statement.premises = premises;
    p.statement.conclusion = chain[*best].derived;
    std::set<Rule> used;
    int ordinal = 0;
    for (std::size_t k : ancestry[*best]) {
      hints::TraceStep s;
      s.problem = id;
      s.ordinal = ++ordinal;
      s.rule = chain[k].rule;
      s.sources = chain[k].sources;
      s.derived = chain[k].derived;
      used.insert(s.rule);
      p.expert.push_back(std::move(s));
    }
    p.intended_rules.assign(used.begin(), used.end());
    p.rank = static_cast<int>(p.expert.size());
    return p;
  }
  return std::nullopt;
}

ProblemBank standard_study_bank(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Problem> out;
  auto add = [&](const std::string& id, Phase section, int level, int lo, int hi) {
    auto p = generate_problem(id, rng, lo, hi);
    if (!p) p = generate_problem(id, rng, 1, hi);
    p->section = section;
    p->level = level;
    out.push_back(std::move(*p));
  };
  add("intro-1", Phase::Intro, 0, 2, 3);
  add("intro-2", Phase::Intro, 0, 2, 3);
  add("pre-1", Phase::Pretest, 0, 3, 4);
  add("pre-2", Phase::Pretest, 0, 3, 4);
  const int lo[] = {3, 3, 4, 5, 5};
  const int hi[] = {4, 5, 6, 6, 7};
  for (int level = 1; level <= kTrainingLevels; ++level) {
    const int count = level == 3 ? 5 : 6;
    for (int i = 1; i <= count; ++i) {
      add("train-" + std::to_string(level) + "-" + std::to_string(i), Phase::Training, level,
          lo[level - 1], hi[level - 1]);
    }
    if (level == 3) out.push_back(worked_problem(Phase::Training, 3));
  }
  for (int i = 1; i <= kPosttestProblems; ++i) add("post-" + std::to_string(i), Phase::Posttest, 0, 6, 8);
  return ProblemBank(std::move(out));
}

std::vector<Problem> distinct_problems(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Problem> out;
  for (int i = 0; i < count; ++i) {
    auto p = generate_problem("p" + std::to_string(i + 1), rng, 3, 6);
    if (p) out.push_back(std::move(*p));
  }
  return out;
}

ProblemBank study_bank_from(std::span<const Problem> distinct) {
  std::vector<Problem> out;
  std::size_t next = 0;
  auto clone = [&](Phase section, int level, const std::string& slot) {
    Problem p = distinct[next++ % distinct.size()];
    const std::string id = p.id() + "@" + slot;
    p.statement.id = id;
    for (auto& s : p.expert) s.problem = id;
    p.section = section;
    p.level = level;
    out.push_back(std::move(p));
  };
  for (int i = 1; i <= kIntroExamples; ++i) clone(Phase::Intro, 0, "intro" + std::to_string(i));
  for (int i = 1; i <= kPretestProblems; ++i) clone(Phase::Pretest, 0, "pre" + std::to_string(i));
  for (int level = 1; level <= kTrainingLevels; ++level) {
    for (int i = 1; i <= kSolvesPerLevel + 1; ++i) {
      clone(Phase::Training, level, "L" + std::to_string(level) + "." + std::to_string(i));
    }
  }
  for (int i = 1; i <= kPosttestProblems; ++i) clone(Phase::Posttest, 0, "post" + std::to_string(i));
  return ProblemBank(std::move(out));
}

}  // namespace ptutor::session
