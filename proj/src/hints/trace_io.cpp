#include "ptutor/hints/trace_io.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "ptutor/error.hpp"

namespace ptutor::hints {

std::string trace_step_line(const TraceStep& step) {
  nlohmann::ordered_json j;
  j["problem"] = step.problem;
  j["ordinal"] = step.ordinal;
  j["rule"] = std::string(logic::rule_name(step.rule));
  auto& sources = j["sources"] = nlohmann::ordered_json::array();
  for (const auto& s : step.sources) sources.push_back(logic::render(s));
  j["derived"] = logic::render(step.derived);
  return j.dump();
}

void write_trace(std::ostream& out, const SolutionTrace& trace) {
  for (const TraceStep& step : trace) out << trace_step_line(step) << '\n';
}

std::map<std::string, std::vector<SolutionTrace>> read_traces(std::istream& in) {
  std::map<std::string, std::vector<SolutionTrace>> out;
  std::string line;
  std::string last_problem;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "trace line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidTrace(where + ": " + e.what());
    }
    TraceStep step;
    try {
      step.problem = j.at("problem").get<std::string>();
      step.ordinal = j.at("ordinal").get<int>();
      const auto rule = logic::parse_rule(j.at("rule").get<std::string>());
      if (!rule) throw InvalidTrace(where + ": unknown rule");
      step.rule = *rule;
      for (const auto& s : j.at("sources")) step.sources.push_back(logic::parse_formula(s.get<std::string>()));
      step.derived = logic::parse_formula(j.at("derived").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw InvalidTrace(where + ": " + e.what());
    } catch (const MalformedFormula& e) {
      throw InvalidTrace(where + ": " + e.what());
    }
    auto& traces = out[step.problem];
    if (traces.empty() || step.ordinal == 1 || step.problem != last_problem) traces.emplace_back();
    last_problem = step.problem;
    traces.back().push_back(std::move(step));
  }
  return out;
}

}  // namespace ptutor::hints
