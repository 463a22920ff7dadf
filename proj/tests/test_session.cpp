#include <doctest.h>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "ptutor/error.hpp"
#include "ptutor/hints/node_stats.hpp"
#include "ptutor/session/bank_builder.hpp"
#include "ptutor/session/session.hpp"

using namespace ptutor;
using namespace ptutor::session;
using namespace std::chrono_literals;
using fixture::worked_content;

namespace {

Session fresh(Condition c, std::uint64_t seed = 1, std::shared_ptr<const TutorContent> content = worked_content()) {
  return Session::create("t1", "stu", c, std::move(content), seed, Timestamp(0));
}

void to_training(Session& s, Timestamp& now) {
  fixture::finish_intro(s, now);
  while (s.phase() == Phase::Pretest) fixture::solve(s, now);
}

std::vector<EventKind> kinds(const Session& s) {
  std::vector<EventKind> out;
  for (const auto& e : s.events()) out.push_back(e.kind);
  return out;
}

/// Level 1 slots get ranks 1..5 in id order; everything else stays rank 6.
std::shared_ptr<const TutorContent> ranked_content() {
  const auto base = worked_content();
  std::vector<Problem> problems(base->bank.problems().begin(), base->bank.problems().end());
  int r = 0;
  for (auto& p : problems) {
    if (p.section == Phase::Training && p.level == 1) p.rank = ++r;
  }
  return make_content(ProblemBank(std::move(problems)));
}

}  // namespace

TEST_SUITE("phases") {
  TEST_CASE("intro, pretest, five levels, posttest") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    CHECK(s.phase() == Phase::Intro);
    CHECK(s.current_problem()->id() == "worked@intro1");
    CHECK_THROWS_AS(s.submit_step(std::vector<int>{4}, "Simp", "D", now), WrongPhase);
    CHECK_FALSE(s.can_restart());
    fixture::finish_intro(s, now);
    CHECK(s.phase() == Phase::Pretest);
    CHECK_THROWS_AS(s.advance_example(now), WrongPhase);

    CHECK_THROWS_AS(s.request_hint(now), WrongPhase);
    CHECK_THROWS_AS(s.skip_problem(now), WrongPhase);
    CHECK_FALSE(s.can_skip());
    s.restart_problem(now);
    while (s.phase() == Phase::Pretest) fixture::solve(s, now);

    for (int level = 1; level <= kTrainingLevels; ++level) {
      CHECK(s.phase() == Phase::Training);
      CHECK(s.level() == level);
      CHECK(s.skips_used() == 0);
      for (int i = 0; i < kSolvesPerLevel; ++i) {
        CHECK(s.solved_in_level() == i);
        CHECK(s.current_problem()->level == level);
        fixture::solve(s, now);
      }
    }
    CHECK(s.phase() == Phase::Posttest);
    CHECK_THROWS_AS(s.request_hint(now), WrongPhase);
    while (s.phase() == Phase::Posttest) fixture::solve(s, now);
    CHECK(s.phase() == Phase::Done);
    CHECK(s.problems_completed() == kPretestProblems + kTrainingLevels * kSolvesPerLevel + kPosttestProblems);
    CHECK(s.current_problem() == nullptr);
    CHECK_THROWS_AS(s.restart_problem(now), WrongPhase);
    CHECK_THROWS_AS(s.submit_step(std::vector<int>{4}, "Simp", "D", now), WrongPhase);
  }

  TEST_CASE("hardest first, skip to next easier, three skips per level") {
    auto s = fresh(Condition::Messages, 1, ranked_content());
    Timestamp now{0};
    to_training(s, now);
    REQUIRE(s.level() == 1);
    CHECK(s.current_problem()->rank == 5);
    s.skip_problem(now);
    CHECK(s.current_problem()->rank == 4);
    s.skip_problem(now);
    CHECK(s.current_problem()->rank == 3);
    s.skip_problem(now);
    CHECK(s.current_problem()->rank == 2);
    CHECK_FALSE(s.can_skip());
    CHECK_THROWS_AS(s.skip_problem(now), SkipLimitReached);
    CHECK(s.current_problem()->rank == 2);

    fixture::solve(s, now);
    CHECK(s.current_problem()->rank == 1);  // last fresh one
    fixture::solve(s, now);
    CHECK(s.current_problem()->rank == 3);  // skipped ones come back, easiest first
    fixture::solve(s, now);
    fixture::solve(s, now);
    CHECK(s.level() == 2);
    CHECK(s.can_skip());
  }

  TEST_CASE("a bank missing a section is rejected") {
    const auto base = worked_content();
    std::vector<Problem> problems;
    for (const auto& p : base->bank.problems()) {
      if (p.section != Phase::Posttest) problems.push_back(p);
    }
    CHECK_THROWS_AS(make_content(ProblemBank(std::move(problems))), BankIncomplete);
  }
}

TEST_SUITE("steps") {
  TEST_CASE("invalid steps leave the workspace alone") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    to_training(s, now);
    const auto before = s.graph()->nodes().size();
    const auto out = s.submit_step(std::vector<int>{3, 4}, "MP", "E", now);
    CHECK_FALSE(out.verdict.valid());
    CHECK_FALSE(out.node);
    CHECK_FALSE(out.verdict.feedback.empty());
    CHECK(s.message() == out.verdict.feedback);
    CHECK(s.graph()->nodes().size() == before);
    CHECK(s.events().back().kind == EventKind::StepError);
    CHECK(s.events().back().payload["outcome"] == "invalid");

    CHECK_THROWS_AS(s.submit_step(std::vector<int>{4}, "Foo", "D", now), InvalidRequest);
    CHECK_THROWS_AS(s.submit_step(std::vector<int>{44}, "Simp", "D", now), InvalidRequest);
    CHECK_THROWS_AS(s.submit_step(std::vector<int>{4}, "Simp", "D&&", now), MalformedFormula);
    // The unproven conclusion cannot be cited.
    CHECK_FALSE(s.submit_step(std::vector<int>{0}, "Simp", "~A", now).verdict.valid());
    CHECK(s.graph()->nodes().size() == before);
  }

  TEST_CASE("walkthrough numbering and completion") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    to_training(s, now);
    const std::string id = s.current_problem()->id();
    int expected = 5;
    for (std::size_t i = 0; i + 1 < fixture::walkthrough().size(); ++i) {
      const auto& m = fixture::walkthrough()[i];
      const auto out = s.submit_step(m.sources, m.rule, m.derived, now);
      REQUIRE(out.verdict.valid());
      CHECK(out.node == expected++);
    }
    const auto last = s.submit_step(std::vector<int>{2, 9}, "Conj", "~A&B", now);
    CHECK(last.completed);
    CHECK(last.node == 0);
    const auto ks = kinds(s);
    CHECK(ks[ks.size() - 3] == EventKind::StepValid);
    CHECK(ks[ks.size() - 2] == EventKind::ProblemComplete);
    CHECK(ks.back() == EventKind::ProblemStart);
    CHECK(s.current_problem()->id() != id);
  }

  TEST_CASE("hint at the walkthrough's third node") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    to_training(s, now);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& m = fixture::walkthrough()[i];
      s.submit_step(m.sources, m.rule, m.derived, now);
    }
    CHECK(s.request_hint(now) == "Try to derive ~C");
    CHECK_FALSE(s.policy().pending);
    CHECK(s.events().back().payload["hint_kind"] == "on_demand");
  }

  TEST_CASE("restart clears work and the pending hint") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    to_training(s, now);
    s.submit_step(std::vector<int>{4}, "Simp", "D", now);
    REQUIRE(s.tick(now + 60s));
    REQUIRE(s.policy().pending);
    s.restart_problem(now + 61s);
    CHECK_FALSE(s.policy().pending);
    CHECK(s.graph()->nodes().size() == 5);
    CHECK(s.message().empty());
  }
}

TEST_SUITE("unsolicited hints") {
  TEST_CASE("messages after a minute idle, one at a time") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    to_training(s, now);
    const Timestamp start = now;
    CHECK_FALSE(s.tick(start + 59s));
    const auto text = s.tick(start + 60s);
    REQUIRE(text);
    CHECK(*text == "Try to derive D");
    CHECK(s.message() == *text);
    CHECK_FALSE(s.tick(start + 200s));
    // Deriving it justifies the message.
    const auto out = s.submit_step(std::vector<int>{4}, "Simp", "D", start + 210s);
    REQUIRE(out.justified);
    CHECK(out.justified->kind == policy::HintKind::Message);
    CHECK(s.events().back().kind == EventKind::HintJustified);
    CHECK_FALSE(s.tick(start + 260s));
    CHECK(s.tick(start + 270s));
  }

  TEST_CASE("assertions appear as cyan nodes and convert when derived") {
    // Find a seed whose first coin lands heads.
    for (std::uint64_t seed = 1; seed < 64; ++seed) {
      auto s = fresh(Condition::Assertions, seed);
      Timestamp now{0};
      to_training(s, now);
      const auto out = s.submit_step(std::vector<int>{4}, "Simp", "D", now);
      if (!out.assertion) continue;
      CHECK(out.assertion->node < 0);
      CHECK(logic::render(out.assertion->content.statement) == "~E");
      const auto* cyan = s.graph()->find(out.assertion->node);
      REQUIRE(cyan);
      CHECK(cyan->color == logic::NodeColor::Cyan);
      CHECK(s.message() == policy::kAssertionPrompt);
      CHECK_FALSE(s.tick(now + 120s));  // no messages in this condition

      CHECK_FALSE(s.submit_step(std::vector<int>{out.assertion->node}, "Simp", "E", now).verdict.valid());
      const auto j = s.submit_step(std::vector<int>{4}, "Simp", "~E", now);
      REQUIRE(j.justified);
      CHECK(j.justified->kind == policy::HintKind::Assertion);
      CHECK(s.graph()->find(out.assertion->node) == nullptr);
      CHECK(j.node == 6);
      return;
    }
    FAIL("no seed produced an assertion");
  }

  TEST_CASE("deleting an assertion") {
    for (std::uint64_t seed = 1; seed < 64; ++seed) {
      auto s = fresh(Condition::Assertions, seed);
      Timestamp now{0};
      to_training(s, now);
      const auto out = s.submit_step(std::vector<int>{4}, "Simp", "D", now);
      if (!out.assertion) continue;
      CHECK_THROWS_AS(s.delete_assertion(3, now), InvalidRequest);
      s.delete_assertion(out.assertion->node, now);
      CHECK_FALSE(s.policy().pending);
      CHECK(s.events().back().kind == EventKind::AssertionDeleted);
      CHECK_THROWS_AS(s.delete_assertion(out.assertion->node, now), InvalidRequest);
      return;
    }
    FAIL("no seed produced an assertion");
  }

  TEST_CASE("at most two assertion steps in a row, never two pending") {
    auto s = fresh(Condition::Assertions, 77);
    Timestamp now{0};
    to_training(s, now);
    int run = 0, longest = 0;
    while (s.phase() == Phase::Training) {
      for (const auto& m : fixture::walkthrough()) {
        now += 5s;
        const auto out = s.submit_step(m.sources, m.rule, m.derived, now);
        REQUIRE(out.verdict.valid());
        if (out.assertion) {
          longest = std::max(longest, ++run);
        } else {
          run = 0;
        }
        if (s.graph() != nullptr) {
          int cyan = 0;
          for (const auto& n : s.graph()->nodes()) cyan += n.kind == logic::NodeKind::AssertionPending;
          CHECK(cyan <= 1);
        }
      }
    }
    CHECK(longest <= 2);
  }
}

TEST_SUITE("log") {
  TEST_CASE("event lines keep their key order and roundtrip") {
    auto s = fresh(Condition::Messages);
    Timestamp now{0};
    to_training(s, now);
    s.submit_step(std::vector<int>{4}, "Simp", "D", now + 1s);
    const std::string line = to_line(s.events().back());
    CHECK(line.rfind(R"({"t":)", 0) == 0);
    const auto pos = [&](const char* key) { return line.find(std::string("\"") + key + "\":"); };
    CHECK(pos("t") < pos("session"));
    CHECK(pos("session") < pos("phase"));
    CHECK(pos("phase") < pos("level"));
    CHECK(pos("level") < pos("problem"));
    CHECK(pos("problem") < pos("kind"));
    CHECK(pos("kind") < pos("payload"));
    CHECK(line.find('\n') == std::string::npos);
    for (const auto& e : s.events()) CHECK(parse_event_line(to_line(e)) == e);
    CHECK_THROWS_AS(parse_event_line("{\"t\":1}"), InvalidRequest);
    CHECK_THROWS_AS(parse_event_line("nope"), InvalidRequest);

    std::stringstream io;
    std::vector<Event> all(s.events().begin(), s.events().end());
    write_events(io, all);
    CHECK(read_events(io) == all);
  }

  TEST_CASE("replay reproduces the session") {
    for (auto condition : {Condition::Assertions, Condition::Messages}) {
      auto s = fresh(condition, 5);
      Timestamp now{0};
      to_training(s, now);
      s.submit_step(std::vector<int>{4}, "Simp", "D", now += 3s);
      s.submit_step(std::vector<int>{1}, "MP", "C", now += 3s);
      s.tick(now += 70s);
      s.request_hint(now += 1s);
      s.restart_problem(now += 1s);
      s.skip_problem(now += 1s);
      fixture::solve(s, now);
      fixture::solve(s, now);
      s.submit_step(std::vector<int>{4}, "Simp", "~E", now += 2s);

      const auto copy = replay_session(s.events(), worked_content());
      CHECK(std::equal(copy.events().begin(), copy.events().end(), s.events().begin(), s.events().end()));
      CHECK(copy.phase() == s.phase());
      CHECK(copy.current_problem() == s.current_problem());
      CHECK(copy.graph()->nodes().size() == s.graph()->nodes().size());
    }
    CHECK_THROWS_AS(replay_session({}, worked_content()), InvalidRequest);
  }
}

TEST_SUITE("bank") {
  TEST_CASE("JSON roundtrip") {
    const auto bank = standard_study_bank(3);
    std::stringstream io;
    write_bank(io, bank);
    const auto back = read_bank(io);
    REQUIRE(back.problems().size() == bank.problems().size());
    for (std::size_t i = 0; i < bank.problems().size(); ++i) {
      const auto& a = bank.problems()[i];
      const auto& b = back.problems()[i];
      CHECK(a.id() == b.id());
      CHECK(a.section == b.section);
      CHECK(a.level == b.level);
      CHECK(a.rank == b.rank);
      CHECK(a.statement.premises == b.statement.premises);
      CHECK(a.statement.conclusion == b.statement.conclusion);
      CHECK(a.expert.size() == b.expert.size());
    }
    back.validate();
  }

  TEST_CASE("bad bank files") {
    std::istringstream bad_formula(
        R"({"problems":[{"id":"x","section":"training","level":1,"rank":1,"premises":["A&&"],"conclusion":"A","rules":[],"expert":[]}]})");
    CHECK_THROWS_AS(read_bank(bad_formula), BankIncomplete);
    std::istringstream not_json("problems");
    CHECK_THROWS_AS(read_bank(not_json), BankIncomplete);
  }

  TEST_CASE("generated problems verify and are sound") {
    std::mt19937_64 rng(11);
    int made = 0;
    for (int i = 0; i < 40; ++i) {
      auto p = generate_problem("g" + std::to_string(i), rng, 3, 6);
      if (!p) continue;
      ++made;
      CHECK(p->expert.size() >= 3);
      CHECK(p->expert.size() <= 6);
      CHECK(p->rank == static_cast<int>(p->expert.size()));
      const auto g = hints::graph_from_trace(p->statement, p->expert);
      CHECK(g.complete());
      for (const auto& step : p->expert) CHECK(oracle::entails(step.sources, step.derived, 7));
    }
    CHECK(made >= 35);
    standard_study_bank(7).validate();
  }
}
