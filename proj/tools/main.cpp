#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ptutor/analytics/report.hpp"
#include "ptutor/error.hpp"
#include "ptutor/hints/trace_io.hpp"
#include "ptutor/service/server.hpp"
#include "ptutor/service/simulate.hpp"
#include "ptutor/session/bank_builder.hpp"

using namespace ptutor;

namespace {

std::shared_ptr<const session::TutorContent> load_content(const std::string& bank_path, const std::string& traces_path,
                                                          std::uint64_t fallback_seed) {
  session::ProblemBank bank =
      bank_path.empty() ? session::standard_study_bank(fallback_seed) : session::load_bank_file(bank_path);
  std::map<std::string, std::vector<hints::SolutionTrace>> corpus;
  if (!traces_path.empty()) {
    std::ifstream in(traces_path);
    if (!in) throw InvalidRequest("cannot read " + traces_path);
    corpus = hints::read_traces(in);
  }
  return session::make_content(std::move(bank), corpus);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Propositional logic proof tutor"};
  app.require_subcommand(1);

  std::string bank_path;
  std::string traces_path;
  int port = 8080;
  std::string host = "0.0.0.0";
  std::string log_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--bank", bank_path, "Problem bank file")->required()->check(CLI::ExistingFile);
  serve->add_option("--traces", traces_path, "Prior solution traces (JSON lines)")->check(CLI::ExistingFile);
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--logs", log_dir, "Event log directory")->capture_default_str();

  service::CohortOptions cohort;
  std::string out_dir;
  auto* simulate = app.add_subcommand("simulate", "Run simulated students and write their event logs");
  simulate->add_option("--n", cohort.n, "Number of students")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--condition", cohort.condition, "assertions | messages | mixed")
      ->check(CLI::IsMember({"assertions", "messages", "mixed"}))
      ->capture_default_str();
  simulate->add_option("--policy", cohort.policy, "follow | ignore | random | mixed")
      ->check(CLI::IsMember({"follow", "ignore", "random", "mixed"}))
      ->capture_default_str();
  simulate->add_option("--seed", cohort.seed, "Seed")->capture_default_str();
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--bank", bank_path, "Problem bank file (default: generated study bank)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--traces", traces_path, "Prior solution traces (JSON lines)")->check(CLI::ExistingFile);

  std::string logs_in;
  std::string report_path;
  auto* analyze = app.add_subcommand("analyze", "Compute metrics and clusters from event logs");
  analyze->add_option("--logs", logs_in, "Directory of .jsonl event logs")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--out", report_path, "Report file")->required();

  std::uint64_t bank_seed = 7;
  std::string bank_out;
  int distinct = 0;
  auto* make_bank = app.add_subcommand("make-bank", "Generate a study problem bank");
  make_bank->add_option("--seed", bank_seed, "Seed")->capture_default_str();
  make_bank->add_option("--distinct", distinct, "Fill every slot from this many distinct problems (0: all distinct)");
  make_bank->add_option("--out", bank_out, "Output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      service::ServerOptions opts;
      opts.host = host;
      opts.port = port;
      if (!log_dir.empty()) opts.log_dir = log_dir;
      return service::run_server(load_content(bank_path, traces_path, 0), opts);
    }
    if (*simulate) {
      const auto files = service::simulate_to_dir(load_content(bank_path, traces_path, 7), cohort, out_dir);
      std::cout << "wrote " << files.size() << " session log(s) to " << out_dir << '\n';
      return 0;
    }
    if (*analyze) {
      const auto logs = analytics::load_logs(logs_in);
      const auto result = analytics::analyze_cohort(logs);
      std::ofstream out(report_path);
      analytics::write_report(out, result);
      if (!out) throw std::runtime_error("cannot write " + report_path);
      std::cout << "analyzed " << logs.size() << " session(s); report in " << report_path << '\n';
      if (result.clusters) std::cout << "chosen k = " << result.clusters->chosen_k << '\n';
      return 0;
    }
    if (*make_bank) {
      session::ProblemBank bank;
      if (distinct > 0) {
        const auto problems = session::distinct_problems(bank_seed, distinct);
        bank = session::study_bank_from(problems);
      } else {
        bank = session::standard_study_bank(bank_seed);
      }
      bank.validate();
      std::ofstream out(bank_out);
      session::write_bank(out, bank);
      if (!out) throw std::runtime_error("cannot write " + bank_out);
      std::cout << "wrote " << bank.problems().size() << " problems to " << bank_out << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
