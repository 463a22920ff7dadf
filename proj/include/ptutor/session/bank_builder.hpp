#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ptutor/session/problem_bank.hpp"

namespace ptutor::session {

/// Premises A->C, B, C->E, D&~E; conclusion ~A&B. The expert solution is the
/// six-step walkthrough (Simp D, Simp ~E, Impl, MT, DS, Conj), including the
/// statement D that no solution needs.
Problem worked_problem(Phase section = Phase::Training, int level = 3);

/// Generates a problem whose shortest recorded expert solution has between
/// `min_length` and `max_length` steps, by random forward chaining from random
/// premises. Deterministic for a given engine state. Add is never used.
std::optional<Problem> generate_problem(std::string id, std::mt19937_64& rng, int min_length,
                                        int max_length);

/// Full study bank: 2 intro, 2 pretest, 5 training levels of 6 problems with
/// growing solution lengths (the worked problem sits in level 3), 4 posttest.
ProblemBank standard_study_bank(std::uint64_t seed);

/// `count` distinct training-style problems.
std::vector<Problem> distinct_problems(std::uint64_t seed, int count);

/// Fills every study slot by cycling through `distinct`; clones get slot
/// suffixed ids (`<id>@<slot>`) but keep the same content.
ProblemBank study_bank_from(std::span<const Problem> distinct);

}  // namespace ptutor::session
