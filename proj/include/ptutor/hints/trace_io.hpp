#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ptutor/hints/network.hpp"

namespace ptutor::hints {

/// Trace corpus: one JSON object per line with keys, in order,
/// `problem`, `ordinal`, `rule`, `sources`, `derived`. A line with ordinal 1
/// (or a change of problem) starts a new trace.
std::map<std::string, std::vector<SolutionTrace>> read_traces(std::istream& in);

void write_trace(std::ostream& out, const SolutionTrace& trace);

std::string trace_step_line(const TraceStep& step);

}  // namespace ptutor::hints
