#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyngraph/graph/types.hpp"

namespace dyngraph::harness {

enum class EventKind : std::uint8_t {
  kEdge,        // e u v +|-
  kPatch,       // vp v | out: ... | in: ...
  kBatchBegin,  // bb
  kBatchEnd,    // be
  kQuerySssp,   // qs s
  kQueryDist,   // qd s t
  kQueryPath,   // qp s t
  kQueryTc,     // qtc
  kQueryTrees,  // qtr [s]
};

struct Event {
  EventKind kind = EventKind::kEdge;
  Vertex u = kNoVertex;  // edge tail, query source, or qtr source (kNoVertex: all)
  Vertex v = kNoVertex;
  bool present = true;
  VertexPatch patch;
  std::size_t line = 0;  // source line, 0 when built in memory

  bool is_update() const { return kind == EventKind::kEdge || kind == EventKind::kPatch; }
  bool is_query() const { return kind >= EventKind::kQuerySssp; }
};

// Optional header lines: structure, mode, seed, params.
struct Trace {
  std::size_t n = 0;
  std::string structure;
  std::string mode;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::string params;
  std::vector<Event> events;

  std::size_t update_count() const;
  std::size_t query_count() const;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Trace parse_trace(std::istream& in);
Trace parse_trace_string(const std::string& text);
Trace read_trace_file(const std::string& path);

void write_trace(std::ostream& out, const Trace& trace);
std::string trace_to_string(const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

// Vertex range and batch nesting; throws TraceError.
void validate_trace(const Trace& trace);

}  // namespace dyngraph::harness
