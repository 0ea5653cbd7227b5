#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyngraph/algebra/op_counter.hpp"
#include "dyngraph/harness/trace.hpp"

namespace dyngraph::harness {

// Unset fields fall back to the trace header, then to the defaults
// (det, seed 0, no params).
struct RunOptions {
  std::optional<std::string> structure;  // hdist | sssp | apsp | tc
  std::optional<std::string> mode;       // det | rand
  std::optional<std::uint64_t> seed;
  std::optional<std::string> params;  // k=v,...
  bool check = true;
  // Corrupts the structure's answer to this query (0-based) before the
  // comparison; harness self-test.
  std::optional<std::size_t> fault_at;
};

struct EventOutcome {
  std::size_t index = 0;  // position in the trace
  std::size_t line = 0;
  bool ok = true;
  std::string expected, actual;
};

struct RunReport {
  std::string structure;
  std::string mode;
  std::size_t n = 0;
  std::size_t events = 0;
  std::size_t updates = 0;  // update events
  std::size_t rounds = 0;   // calls into the structure's update entry point
  std::size_t queries = 0;
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  std::vector<EventOutcome> outcomes;  // one per update and query event
  algebra::OpCounts ops;
  std::vector<std::uint64_t> round_ops;  // ring operations per round
  std::vector<std::size_t> rollovers;    // event indices that closed a phase
  double build_seconds = 0, update_seconds = 0, query_seconds = 0, check_seconds = 0;

  bool passed() const { return mismatches == 0; }
  std::vector<EventOutcome> failures() const;
  // Sums counts, concatenates outcomes and per-round data.
  void merge(const RunReport& other);
};

using ParamMap = std::map<std::string, std::string>;
// "k=v,k2=v2"; throws std::invalid_argument on malformed input.
ParamMap parse_params(const std::string& text);

RunReport run_trace(const Trace& trace, const RunOptions& options = {});

}  // namespace dyngraph::harness
