#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ptutor/hints/hint_library.hpp"
#include "ptutor/logic/proof_graph.hpp"
#include "ptutor/logic/rules.hpp"

namespace ptutor::session {

enum class Phase { Intro, Pretest, Training, Posttest, Done };

std::string_view phase_name(Phase p);
std::optional<Phase> parse_phase(std::string_view s);

inline constexpr int kIntroExamples = 2;
inline constexpr int kPretestProblems = 2;
inline constexpr int kTrainingLevels = 5;
inline constexpr int kSolvesPerLevel = 4;
inline constexpr int kMaxSkipsPerLevel = 3;
inline constexpr int kPosttestProblems = 4;

struct Problem {
  logic::ProblemStatement statement;
  Phase section = Phase::Training;
  int level = 0;  ///< 1..5 for training problems, 0 elsewhere
  int rank = 0;   ///< difficulty within its section; higher is harder
  std::vector<logic::Rule> intended_rules;
  hints::SolutionTrace expert;

  const std::string& id() const noexcept { return statement.id; }
};

class ProblemBank {
 public:
  ProblemBank() = default;
  explicit ProblemBank(std::vector<Problem> problems);

  std::span<const Problem> problems() const noexcept { return problems_; }
  const Problem* find(const std::string& id) const;

  /// Problems of one section (and training level), easiest first; ties by id.
  std::vector<const Problem*> section(Phase phase, int level = 0) const;

  /// Throws BankIncomplete naming every slot that lacks problems, or a
  /// problem whose expert solution does not verify.
  void validate() const;

  std::vector<hints::SeededProblem> seeds() const;

 private:
  std::vector<Problem> problems_;
};

/// Bank file: a JSON document `{"problems": [...]}`; each problem has `id`,
/// `section`, `level`, `rank`, `premises`, `conclusion`, `rules` and an
/// `expert` list of `{rule, sources, derived}` steps, statements in the ASCII
/// formula grammar.
ProblemBank read_bank(std::istream& in);
ProblemBank load_bank_file(const std::string& path);
void write_bank(std::ostream& out, const ProblemBank& bank);

/// Bank plus the hint models built from it; immutable once built.
struct TutorContent {
  ProblemBank bank;
  hints::HintLibrary library;
};

std::shared_ptr<const TutorContent> make_content(
    ProblemBank bank, const std::map<std::string, std::vector<hints::SolutionTrace>>& corpus = {},
    const hints::ValueParams& params = {});

}  // namespace ptutor::session
