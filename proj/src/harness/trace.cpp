#include "dyngraph/harness/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dyngraph::harness {

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw TraceError(line, "expected an integer, got '" + tok + "'");
  return value;
}

Vertex parse_vertex(const std::string& tok, std::size_t line) {
  const std::uint64_t v = parse_uint(tok, line);
  if (v >= kNoVertex) throw TraceError(line, "vertex id out of range");
  return static_cast<Vertex>(v);
}

void expect_args(const std::vector<std::string>& tok, std::size_t count, std::size_t line) {
  if (tok.size() != count + 1) throw TraceError(line, "'" + tok[0] + "' takes " + std::to_string(count) + " arguments");
}

// vp <v> | out: a b | in: c d
VertexPatch parse_patch(const std::string& rest, std::size_t line) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  for (;;) {
    const auto bar = rest.find('|', start);
    parts.push_back(rest.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  if (parts.size() != 3) throw TraceError(line, "vertex patch needs 'vp <v> | out: ... | in: ...'");
  const auto head = split_ws(parts[0]);
  if (head.size() != 1) throw TraceError(line, "vertex patch needs exactly one vertex before '|'");
  VertexPatch p;
  p.v = parse_vertex(head[0], line);
  auto list = [&](const std::string& part, const std::string& label, std::vector<Vertex>& out) {
    auto tok = split_ws(part);
    if (tok.empty() || tok[0] != label) throw TraceError(line, "expected '" + label + "'");
    for (std::size_t i = 1; i < tok.size(); ++i) out.push_back(parse_vertex(tok[i], line));
  };
  list(parts[1], "out:", p.out);
  list(parts[2], "in:", p.in);
  return p;
}

std::string join(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) s += ' ' + std::to_string(v);
  return s;
}

}  // namespace

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::size_t Trace::update_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const Event& e) { return e.is_update(); }));
}

std::size_t Trace::query_count() const {
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const Event& e) { return e.is_query(); }));
}

Trace parse_trace(std::istream& in) {
  Trace trace;
  bool have_n = false;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    const auto hash = raw.find('#');
    const std::string text = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto tok = split_ws(text);
    if (tok.empty()) continue;
    const std::string& op = tok[0];
    if (op == "n") {
      expect_args(tok, 1, line);
      if (have_n) throw TraceError(line, "duplicate 'n'");
      trace.n = parse_uint(tok[1], line);
      have_n = true;
      continue;
    }
    if (op == "structure" || op == "mode" || op == "params") {
      expect_args(tok, 1, line);
      (op == "structure" ? trace.structure : op == "mode" ? trace.mode : trace.params) = tok[1];
      continue;
    }
    if (op == "seed") {
      expect_args(tok, 1, line);
      trace.seed = parse_uint(tok[1], line);
      trace.has_seed = true;
      continue;
    }
    if (!have_n) throw TraceError(line, "events before 'n'");
    Event e;
    e.line = line;
    if (op == "e") {
      expect_args(tok, 3, line);
      e.kind = EventKind::kEdge;
      e.u = parse_vertex(tok[1], line);
      e.v = parse_vertex(tok[2], line);
      if (tok[3] != "+" && tok[3] != "-") throw TraceError(line, "edge sign must be + or -");
      e.present = tok[3] == "+";
    } else if (op == "vp") {
      e.kind = EventKind::kPatch;
      e.patch = parse_patch(text.substr(text.find("vp") + 2), line);
    } else if (op == "bb" || op == "be" || op == "qtc") {
      expect_args(tok, 0, line);
      e.kind = op == "bb" ? EventKind::kBatchBegin : op == "be" ? EventKind::kBatchEnd : EventKind::kQueryTc;
    } else if (op == "qs") {
      expect_args(tok, 1, line);
      e.kind = EventKind::kQuerySssp;
      e.u = parse_vertex(tok[1], line);
    } else if (op == "qd" || op == "qp") {
      expect_args(tok, 2, line);
      e.kind = op == "qd" ? EventKind::kQueryDist : EventKind::kQueryPath;
      e.u = parse_vertex(tok[1], line);
      e.v = parse_vertex(tok[2], line);
    } else if (op == "qtr") {
      if (tok.size() > 2) throw TraceError(line, "'qtr' takes at most one argument");
      e.kind = EventKind::kQueryTrees;
      if (tok.size() == 2) e.u = parse_vertex(tok[1], line);
    } else {
      throw TraceError(line, "unknown event '" + op + "'");
    }
    trace.events.push_back(std::move(e));
  }
  if (!have_n) throw TraceError(0, "trace has no 'n' line");
  validate_trace(trace);
  return trace;
}

Trace parse_trace_string(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file " + path);
  return parse_trace(in);
}

void validate_trace(const Trace& trace) {
  const std::size_t n = trace.n;
  bool in_batch = false;
  auto check = [&](Vertex v, const Event& e) {
    if (v >= n) throw TraceError(e.line, "vertex " + std::to_string(v) + " out of range for n = " + std::to_string(n));
  };
  for (const Event& e : trace.events) {
    switch (e.kind) {
      case EventKind::kEdge:
        check(e.u, e);
        check(e.v, e);
        if (e.u == e.v) throw TraceError(e.line, "self loops are not allowed");
        break;
      case EventKind::kPatch:
        check(e.patch.v, e);
        for (Vertex w : e.patch.out) check(w, e);
        for (Vertex w : e.patch.in) check(w, e);
        break;
      case EventKind::kBatchBegin:
        if (in_batch) throw TraceError(e.line, "nested batch");
        in_batch = true;
        break;
      case EventKind::kBatchEnd:
        if (!in_batch) throw TraceError(e.line, "'be' without 'bb'");
        in_batch = false;
        break;
      case EventKind::kQuerySssp:
        check(e.u, e);
        break;
      case EventKind::kQueryDist:
      case EventKind::kQueryPath:
        check(e.u, e);
        check(e.v, e);
        break;
      case EventKind::kQueryTc:
        break;
      case EventKind::kQueryTrees:
        if (e.u != kNoVertex) check(e.u, e);
        break;
    }
    if (in_batch && e.is_query()) throw TraceError(e.line, "queries are not allowed inside a batch");
  }
  if (in_batch) throw TraceError(0, "unterminated batch");
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << "n " << trace.n << '\n';
  if (!trace.structure.empty()) out << "structure " << trace.structure << '\n';
  if (!trace.mode.empty()) out << "mode " << trace.mode << '\n';
  if (trace.has_seed) out << "seed " << trace.seed << '\n';
  if (!trace.params.empty()) out << "params " << trace.params << '\n';
  for (const Event& e : trace.events) {
    switch (e.kind) {
      case EventKind::kEdge:
        out << "e " << e.u << ' ' << e.v << ' ' << (e.present ? '+' : '-') << '\n';
        break;
      case EventKind::kPatch:
        out << "vp " << e.patch.v << " | out:" << join(e.patch.out) << " | in:" << join(e.patch.in) << '\n';
        break;
      case EventKind::kBatchBegin:
        out << "bb\n";
        break;
      case EventKind::kBatchEnd:
        out << "be\n";
        break;
      case EventKind::kQuerySssp:
        out << "qs " << e.u << '\n';
        break;
      case EventKind::kQueryDist:
        out << "qd " << e.u << ' ' << e.v << '\n';
        break;
      case EventKind::kQueryPath:
        out << "qp " << e.u << ' ' << e.v << '\n';
        break;
      case EventKind::kQueryTc:
        out << "qtc\n";
        break;
      case EventKind::kQueryTrees:
        out << "qtr";
        if (e.u != kNoVertex) out << ' ' << e.u;
        out << '\n';
        break;
    }
  }
}

std::string trace_to_string(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

void write_trace_file(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace file " + path);
  write_trace(out, trace);
}

}  // namespace dyngraph::harness
