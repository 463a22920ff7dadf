#include "ptutor/session/problem_bank.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "ptutor/error.hpp"
#include "ptutor/hints/node_stats.hpp"

namespace ptutor::session {

using nlohmann::ordered_json;

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Intro: return "intro";
    case Phase::Pretest: return "pretest";
    case Phase::Training: return "training";
    case Phase::Posttest: return "posttest";
    case Phase::Done: return "done";
  }
  return "?";
}

std::optional<Phase> parse_phase(std::string_view s) {
  for (Phase p : {Phase::Intro, Phase::Pretest, Phase::Training, Phase::Posttest, Phase::Done}) {
    if (phase_name(p) == s) return p;
  }
  return std::nullopt;
}

ProblemBank::ProblemBank(std::vector<Problem> problems) : problems_(std::move(problems)) {}

const Problem* ProblemBank::find(const std::string& id) const {
  auto it = std::find_if(problems_.begin(), problems_.end(), [&](const Problem& p) { return p.id() == id; });
  return it == problems_.end() ? nullptr : &*it;
}

std::vector<const Problem*> ProblemBank::section(Phase phase, int level) const {
  std::vector<const Problem*> out;
  for (const Problem& p : problems_) {
    if (p.section == phase && (phase != Phase::Training || p.level == level)) out.push_back(&p);
  }
  std::sort(out.begin(), out.end(), [](const Problem* a, const Problem* b) {
    return a->rank != b->rank ? a->rank < b->rank : a->id() < b->id();
  });
  return out;
}

void ProblemBank::validate() const {
  std::vector<std::string> missing;
  auto need = [&](Phase phase, int level, std::size_t count, const std::string& label) {
    const std::size_t have = section(phase, level).size();
    if (have < count) {
      missing.push_back(label + " needs " + std::to_string(count) + ", has " + std::to_string(have));
    }
  };
  need(Phase::Intro, 0, kIntroExamples, "intro");
  need(Phase::Pretest, 0, kPretestProblems, "pretest");
  for (int level = 1; level <= kTrainingLevels; ++level) {
    need(Phase::Training, level, kSolvesPerLevel, "training level " + std::to_string(level));
  }
  need(Phase::Posttest, 0, kPosttestProblems, "posttest");
  if (!missing.empty()) {
    std::string msg = "problem bank incomplete:";
    for (const std::string& m : missing) msg += " [" + m + "]";
    throw BankIncomplete(msg);
  }

  for (const Problem& p : problems_) {
    const auto& premises = p.statement.premises;
    if (std::find(premises.begin(), premises.end(), p.statement.conclusion) != premises.end()) {
      throw BankIncomplete("problem " + p.id() + ": conclusion is one of the premises");
    }
    try {
      if (!hints::graph_from_trace(p.statement, p.expert).complete()) {
        throw BankIncomplete("problem " + p.id() + ": expert solution does not reach the conclusion");
      }
    } catch (const InvalidTrace& e) {
      throw BankIncomplete("problem " + p.id() + ": " + e.what());
    }
  }
}

std::vector<hints::SeededProblem> ProblemBank::seeds() const {
  std::vector<hints::SeededProblem> out;
  out.reserve(problems_.size());
  for (const Problem& p : problems_) out.push_back({p.statement, p.expert});
  return out;
}

namespace {

Problem problem_from_json(const nlohmann::json& j) {
  Problem p;
  p.statement.id = j.at("id").get<std::string>();
  const auto section = parse_phase(j.at("section").get<std::string>());
  if (!section || *section == Phase::Done) throw BankIncomplete("problem " + p.id() + ": bad section");
  p.section = *section;
  p.level = j.value("level", 0);
  p.rank = j.value("rank", 0);
  for (const auto& s : j.at("premises")) p.statement.premises.push_back(logic::parse_formula(s.get<std::string>()));
  p.statement.conclusion = logic::parse_formula(j.at("conclusion").get<std::string>());
  for (const auto& r : j.value("rules", nlohmann::json::array())) {
    auto rule = logic::parse_rule(r.get<std::string>());
    if (!rule) throw BankIncomplete("problem " + p.id() + ": unknown rule " + r.get<std::string>());
    p.intended_rules.push_back(*rule);
  }
  int ordinal = 0;
  for (const auto& s : j.at("expert")) {
    hints::TraceStep step;
    step.problem = p.id();
    step.ordinal = ++ordinal;
    auto rule = logic::parse_rule(s.at("rule").get<std::string>());
    if (!rule) throw BankIncomplete("problem " + p.id() + ": unknown rule in expert step");
    step.rule = *rule;
    for (const auto& src : s.at("sources")) step.sources.push_back(logic::parse_formula(src.get<std::string>()));
    step.derived = logic::parse_formula(s.at("derived").get<std::string>());
    p.expert.push_back(std::move(step));
  }
  return p;
}

}  // namespace

ProblemBank read_bank(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    std::vector<Problem> problems;
    for (const auto& j : doc.at("problems")) problems.push_back(problem_from_json(j));
    return ProblemBank(std::move(problems));
  } catch (const nlohmann::json::exception& e) {
    throw BankIncomplete(std::string("cannot read problem bank: ") + e.what());
  } catch (const MalformedFormula& e) {
    throw BankIncomplete(std::string("problem bank has a malformed formula: ") + e.what());
  }
}

ProblemBank load_bank_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BankIncomplete("cannot open problem bank " + path);
  return read_bank(in);
}

void write_bank(std::ostream& out, const ProblemBank& bank) {
  ordered_json problems = ordered_json::array();
  for (const Problem& p : bank.problems()) {
    ordered_json j;
    j["id"] = p.id();
    j["section"] = std::string(phase_name(p.section));
    j["level"] = p.level;
    j["rank"] = p.rank;
    auto& premises = j["premises"] = ordered_json::array();
    for (const auto& f : p.statement.premises) premises.push_back(logic::render(f));
    j["conclusion"] = logic::render(p.statement.conclusion);
    auto& rules = j["rules"] = ordered_json::array();
    for (auto r : p.intended_rules) rules.push_back(std::string(logic::rule_name(r)));
    auto& expert = j["expert"] = ordered_json::array();
    for (const auto& step : p.expert) {
      ordered_json s;
      s["rule"] = std::string(logic::rule_name(step.rule));
      auto& src = s["sources"] = ordered_json::array();
      for (const auto& f : step.sources) src.push_back(logic::render(f));
      s["derived"] = logic::render(step.derived);
      expert.push_back(std::move(s));
    }
    problems.push_back(std::move(j));
  }
  ordered_json doc;
  doc["problems"] = std::move(problems);
  out << doc.dump(2) << '\n';
}

std::shared_ptr<const TutorContent> make_content(
    ProblemBank bank, const std::map<std::string, std::vector<hints::SolutionTrace>>& corpus,
    const hints::ValueParams& params) {
  bank.validate();
  auto seeds = bank.seeds();
  auto library = hints::HintLibrary::build(seeds, corpus, params);
  return std::make_shared<const TutorContent>(TutorContent{std::move(bank), std::move(library)});
}

}  // namespace ptutor::session
