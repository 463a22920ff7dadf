#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ptutor/error.hpp"
#include "ptutor/hints/hint_library.hpp"
#include "ptutor/hints/node_stats.hpp"
#include "ptutor/hints/trace_io.hpp"
#include "ptutor/policy/hint_policy.hpp"
#include "ptutor/session/bank_builder.hpp"

using namespace ptutor;
using namespace ptutor::hints;
using logic::Formula;
using logic::Rule;

namespace {

Formula F(const char* s) { return logic::parse_formula(s); }

TraceStep step(Rule r, std::vector<const char*> srcs, const char* derived) {
  TraceStep s;
  s.problem = "worked";
  s.rule = r;
  for (auto x : srcs) s.sources.push_back(F(x));
  s.derived = F(derived);
  return s;
}

StateKey key_of(std::vector<const char*> xs, bool complete = false) {
  std::vector<Formula> fs;
  for (auto x : xs) fs.push_back(F(x));
  return make_state(fs, complete);
}

const std::vector<const char*> kPremises = {"A->C", "B", "C->E", "D&~E"};

std::vector<StateKey> history_of(std::vector<std::vector<const char*>> extra) {
  std::vector<StateKey> h;
  std::vector<const char*> cur = kPremises;
  h.push_back(key_of(cur));
  for (auto& e : extra) {
    cur.insert(cur.end(), e.begin(), e.end());
    h.push_back(key_of(cur));
  }
  return h;
}

}  // namespace

TEST_SUITE("state key") {
  TEST_CASE("order independent and deduplicated") {
    CHECK(key_of({"B", "A->C", "B"}) == key_of({"A->C", "B"}));
    CHECK(key_of({"A"}).str() == "{A}");
    CHECK(key_of({"B", "A"}, true).str() == "{A; B}!");
  }

  TEST_CASE("pending assertions are not part of the state") {
    const auto p = session::worked_problem();
    logic::ProofGraph g(p.statement);
    const auto before = canonical_state(g);
    g.add_pending_assertion(F("~E"));
    CHECK(canonical_state(g) == before);
  }
}

TEST_SUITE("value iteration") {
  TEST_CASE("three-state chain") {
    InteractionNetwork net("chain");
    const auto a = net.add_state(key_of({"A"}), false);
    const auto b = net.add_state(key_of({"A", "B"}), false);
    const auto c = net.add_state(key_of({"A", "B", "C"}, true), true);
    net.add_edge(a, b, F("B"));
    net.add_edge(b, c, F("C"));
    const auto report = value_iterate(net);
    CHECK(report.converged);
    CHECK(net.state(c).value == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(net.state(b).value == doctest::Approx(89.0).epsilon(1e-12));
    CHECK(net.state(a).value == doctest::Approx(79.1).epsilon(1e-12));
  }

  TEST_CASE("random acyclic networks match the finite-horizon oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + rng() % 11;  // up to 12 states
      InteractionNetwork net("dag");
      std::vector<bool> goal(n, false);
      goal[n - 1] = true;
      for (std::size_t i = 1; i + 1 < n; ++i) goal[i] = rng() % 5 == 0;
      for (std::size_t i = 0; i < n; ++i) net.add_state(StateKey{{"s" + std::to_string(i)}, goal[i]}, goal[i]);
      std::vector<std::vector<std::size_t>> succ(n);
      for (std::size_t i = 0; i < n; ++i) {
        if (goal[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (rng() % 3 == 0) {
            succ[i].push_back(j);
            net.add_edge(i, j, logic::Atom(static_cast<char>('A' + j)));
          }
        }
      }
      const auto report = value_iterate(net);
      CHECK(report.converged);
      const auto expected = oracle::finite_horizon_values(succ, goal, 100.0, 1.0, 0.9);
      for (std::size_t i = 0; i < n; ++i) {
        const double got = net.state(i).value;
        if (std::isinf(expected[i])) {
          CHECK(got == kDeadEnd);
        } else {
          CHECK(std::abs(got - expected[i]) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("cycles converge and a network without a goal is rejected") {
    InteractionNetwork net("cycle");
    const auto a = net.add_state(key_of({"A"}), false);
    const auto b = net.add_state(key_of({"B"}), false);
    const auto g = net.add_state(key_of({"C"}, true), true);
    net.add_edge(a, b, F("B"));
    net.add_edge(b, a, F("A"));
    net.add_edge(b, g, F("C"));
    const auto report = value_iterate(net);
    CHECK(report.converged);
    CHECK(net.state(b).value == doctest::Approx(89.0));

    InteractionNetwork none("none");
    none.add_state(key_of({"A"}), false);
    CHECK_THROWS_AS(value_iterate(none), NoGoalState);
  }
}

TEST_SUITE("hint factory") {
  const auto problem = session::worked_problem();

  TEST_CASE("expert network yields the walkthrough hint") {
    auto net = build_network(problem.statement, {}, problem.expert);
    CHECK(net.size() == 7);
    value_iterate(net);
    // Student has D, ~E and ~A|C (nodes 5-7).
    const auto h = history_of({{"D"}, {"~E"}, {"~A|C"}});
    const auto hint = hint_lookup(net, h, h.size() - 1);
    REQUIRE(hint);
    CHECK(logic::render(hint->statement) == "~C");
    CHECK(policy::derive_prompt(hint->statement) == "Try to derive ~C");
    CHECK(hint->source_state == key_of({"A->C", "B", "C->E", "D&~E", "D", "~E", "~A|C", "~C"}));
  }

  TEST_CASE("lookup rolls back through the student's own states") {
    auto net = build_network(problem.statement, {}, problem.expert);
    value_iterate(net);
    const auto h = history_of({{"D"}, {"B|Z"}, {"B&B"}});
    const auto hint = hint_lookup(net, h, h.size() - 1);
    REQUIRE(hint);
    CHECK(logic::render(hint->statement) == "~E");
    // The initial state always answers.
    const auto first = hint_lookup(net, h, 0);
    REQUIRE(first);
    CHECK(logic::render(first->statement) == "D");
  }

  TEST_CASE("prefers the higher-valued successor and breaks ties by text") {
    // A second trace skips D and so reaches the goal in five steps.
    SolutionTrace shorter = {step(Rule::Simp, {"D&~E"}, "~E"), step(Rule::Impl, {"A->C"}, "~A|C"),
                             step(Rule::MT, {"C->E", "~E"}, "~C"), step(Rule::DS, {"~A|C", "~C"}, "~A"),
                             step(Rule::Conj, {"B", "~A"}, "~A&B")};
    std::vector<SolutionTrace> corpus = {shorter};
    auto net = build_network(problem.statement, corpus, problem.expert);
    value_iterate(net);
    const auto h = history_of({});
    auto hint = hint_lookup(net, h, 0);
    REQUIRE(hint);
    CHECK(logic::render(hint->statement) == "~E");

    // Two equally good first steps: ~A|C sorts before ~E.
    SolutionTrace other = {step(Rule::Impl, {"A->C"}, "~A|C"), step(Rule::Simp, {"D&~E"}, "~E"),
                           step(Rule::MT, {"C->E", "~E"}, "~C"), step(Rule::DS, {"~A|C", "~C"}, "~A"),
                           step(Rule::Conj, {"B", "~A"}, "~A&B")};
    corpus.push_back(other);
    auto tied = build_network(problem.statement, corpus, problem.expert);
    value_iterate(tied);
    hint = hint_lookup(tied, h, 0);
    REQUIRE(hint);
    CHECK(logic::render(hint->statement) == "~A|C");
  }

  TEST_CASE("traces must verify and finish") {
    SolutionTrace bad = {step(Rule::MP, {"C->E", "~E"}, "~C")};
    std::vector<SolutionTrace> corpus = {bad};
    CHECK_THROWS_AS(build_network(problem.statement, corpus, problem.expert), InvalidTrace);
    SolutionTrace unfinished = {step(Rule::Simp, {"D&~E"}, "D")};
    corpus = {unfinished};
    CHECK_THROWS_AS(build_network(problem.statement, corpus, problem.expert), InvalidTrace);
    SolutionTrace missing_source = {step(Rule::MT, {"C->E", "~E"}, "~C")};
    corpus = {missing_source};
    CHECK_THROWS_AS(build_network(problem.statement, corpus, problem.expert), InvalidTrace);
  }

  TEST_CASE("node colors follow the needed share") {
    NodeStatistics stats;
    stats.add_solution(graph_from_trace(problem.statement, problem.expert));
    CHECK(node_color(stats, F("~C")) == logic::NodeColor::Green);
    CHECK(node_color(stats, F("D")) == logic::NodeColor::Gray);
    CHECK(node_color(stats, F("B|Q")) == logic::NodeColor::Gray);

    // A route through MT twice never uses ~A|C: 1 of 6 solutions is under 20%.
    SolutionTrace via_mt = {step(Rule::Simp, {"D&~E"}, "~E"), step(Rule::MT, {"C->E", "~E"}, "~C"),
                            step(Rule::MT, {"A->C", "~C"}, "~A"), step(Rule::Conj, {"B", "~A"}, "~A&B")};
    for (int i = 0; i < 5; ++i) stats.add_solution(graph_from_trace(problem.statement, via_mt));
    CHECK(stats.solutions() == 6);
    CHECK(stats.needed_fraction(F("~A|C")) == doctest::Approx(1.0 / 6));
    CHECK(node_color(stats, F("~A|C")) == logic::NodeColor::Yellow);
    CHECK(node_color(stats, F("~C")) == logic::NodeColor::Green);
  }

  TEST_CASE("trace corpus roundtrips through JSON lines") {
    std::ostringstream out;
    SolutionTrace t = problem.expert;
    write_trace(out, t);
    write_trace(out, t);
    std::istringstream in(out.str());
    const auto corpus = read_traces(in);
    REQUIRE(corpus.count("worked") == 1);
    REQUIRE(corpus.at("worked").size() == 2);
    CHECK(corpus.at("worked")[0].size() == 6);
    CHECK(corpus.at("worked")[1][5].derived == F("~A&B"));
  }

  TEST_CASE("library builds a model per problem") {
    std::vector<SeededProblem> seeds = {{problem.statement, problem.expert}};
    const auto lib = HintLibrary::build(seeds);
    REQUIRE(lib.find("worked"));
    CHECK(lib.find("worked")->iteration.converged);
    CHECK(lib.find("nope") == nullptr);
  }
}
