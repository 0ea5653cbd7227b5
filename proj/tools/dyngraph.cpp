// Command line driver: replay traces, generate them, and benchmark.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "dyngraph/harness/generator.hpp"
#include "dyngraph/harness/runner.hpp"
#include "dyngraph/harness/trace.hpp"

using namespace dyngraph::harness;

namespace {

nlohmann::json report_json(const RunReport& r) {
  nlohmann::json j;
  j["structure"] = r.structure;
  j["mode"] = r.mode;
  j["n"] = r.n;
  j["events"] = r.events;
  j["updates"] = r.updates;
  j["rounds"] = r.rounds;
  j["queries"] = r.queries;
  j["checked"] = r.checked;
  j["mismatches"] = r.mismatches;
  j["ring_mul"] = r.ops.mul;
  j["ring_add"] = r.ops.add;
  j["round_ops"] = r.round_ops;
  j["rollovers"] = r.rollovers;
  j["seconds"] = {{"build", r.build_seconds}, {"update", r.update_seconds}, {"query", r.query_seconds},
                  {"check", r.check_seconds}};
  auto& fails = j["failures"] = nlohmann::json::array();
  for (const EventOutcome& o : r.failures())
    fails.push_back({{"index", o.index}, {"line", o.line}, {"expected", o.expected}, {"actual", o.actual}});
  return j;
}

void print_summary(std::ostream& out, const RunReport& r) {
  out << r.structure << " n=" << r.n << " mode=" << r.mode << " events=" << r.events << " updates=" << r.updates
      << " rounds=" << r.rounds << " queries=" << r.queries << " checked=" << r.checked
      << " mismatches=" << r.mismatches << " rollovers=" << r.rollovers.size() << " ring_ops=" << r.ops.total()
      << " update_s=" << r.update_seconds << " query_s=" << (r.query_seconds + r.check_seconds) << '\n';
  for (const EventOutcome& o : r.failures())
    out << "  mismatch at event " << o.index << " (line " << o.line << "): expected " << o.expected << ", got "
        << o.actual << '\n';
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(std::stoull(item));
  if (out.empty()) throw std::invalid_argument("no sizes given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic graph structures over path-counting matrices"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Replay a trace through a structure");
  RunOptions ropt;
  std::string trace_file, json_file, rstructure, rmode, rparams;
  std::uint64_t rseed = 0;
  std::size_t fault = 0;
  run->add_option("--structure", rstructure, "hdist | sssp | apsp | tc (default: trace header)")
      ->check(CLI::IsMember({"hdist", "sssp", "apsp", "tc"}));
  run->add_option("--trace", trace_file, "Trace file")->required()->check(CLI::ExistingFile);
  run->add_flag("--check", ropt.check, "Compare every query against the brute-force oracle");
  run->add_option("--mode", rmode, "det | rand")->check(CLI::IsMember({"det", "rand"}));
  auto* seed_opt = run->add_option("--seed", rseed, "Seed for randomized components");
  run->add_option("--params", rparams, "Structure parameters k=v,...");
  auto* fault_opt = run->add_option("--inject-fault", fault, "Corrupt the answer to this query (0-based)");
  run->add_option("--json", json_file, "Write the run report as JSON");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random trace");
  GenProfile prof;
  std::string out_file, gmode, gparams;
  gen->add_option("--profile", prof.name, "random | delete-heavy | phase-aligned | hub | vertex")
      ->check(CLI::IsMember(profile_names()));
  gen->add_option("--n", prof.n, "Vertex count")->required();
  gen->add_option("--steps", prof.steps, "Update events")->required();
  gen->add_option("--seed", prof.seed, "Generator seed");
  gen->add_option("-o,--output", out_file, "Output file")->required();
  gen->add_option("--density", prof.density, "Target edge density");
  gen->add_option("--query-every", prof.query_every, "Query block after this many updates (0: none)");
  gen->add_option("--structure", prof.structure, "Query mix for this structure")
      ->check(CLI::IsMember({"hdist", "sssp", "apsp", "tc"}));
  gen->add_option("--delta", prof.delta, "Phase length for phase-aligned and hub profiles");
  gen->add_option("--hops", prof.h, "Hop bound for hub selection");
  gen->add_option("--mode", gmode, "Mode recorded in the header")->check(CLI::IsMember({"det", "rand"}));
  gen->add_option("--params", gparams, "Parameters recorded in the header");

  // bench
  auto* bench = app.add_subcommand("bench", "Time generated traces at several sizes (TSV)");
  std::string bstructure = "sssp", sizes_text = "16,32,64", bprofile, bparams, bmode = "det", bout;
  std::size_t repeat = 1, bsteps = 0;
  std::uint64_t bseed = 1;
  bool bcheck = false;
  bench->add_option("--structure", bstructure, "hdist | sssp | apsp | tc")
      ->check(CLI::IsMember({"hdist", "sssp", "apsp", "tc"}));
  bench->add_option("--sizes", sizes_text, "Comma separated vertex counts");
  bench->add_option("--repeat", repeat, "Traces per size");
  bench->add_option("--steps", bsteps, "Update events per trace (default 2n)");
  bench->add_option("--profile", bprofile, "Generator profile (default random, vertex for apsp and tc)")
      ->check(CLI::IsMember(profile_names()));
  bench->add_option("--params", bparams, "Structure parameters k=v,...");
  bench->add_option("--mode", bmode, "det | rand")->check(CLI::IsMember({"det", "rand"}));
  bench->add_option("--seed", bseed, "Base seed");
  bench->add_flag("--check", bcheck, "Also check every query");
  bench->add_option("-o,--output", bout, "TSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const Trace trace = read_trace_file(trace_file);
      if (!rstructure.empty()) ropt.structure = rstructure;
      if (!rmode.empty()) ropt.mode = rmode;
      if (*seed_opt) ropt.seed = rseed;
      if (!rparams.empty()) ropt.params = rparams;
      if (*fault_opt) ropt.fault_at = fault;
      const RunReport report = run_trace(trace, ropt);
      print_summary(std::cout, report);
      if (!json_file.empty()) std::ofstream(json_file) << report_json(report).dump(2) << '\n';
      return report.passed() ? 0 : 1;
    }
    if (*gen) {
      Trace trace = gen_trace(prof);
      trace.mode = gmode;
      trace.params = gparams;
      write_trace_file(out_file, trace);
      std::cout << "wrote " << out_file << ": " << trace.update_count() << " updates, " << trace.query_count()
                << " queries\n";
      return 0;
    }
    if (*bench) {
      std::ofstream file;
      if (!bout.empty()) file.open(bout);
      std::ostream& out = bout.empty() ? std::cout : file;
      out << "structure\tn\trep\tupdates\trounds\tqueries\tring_mul\tring_add\tops_per_round\tbuild_s\tupdate_s\t"
             "query_s\tmismatches\n";
      std::size_t mismatches = 0;
      for (std::size_t n : parse_sizes(sizes_text)) {
        for (std::size_t rep = 0; rep < repeat; ++rep) {
          GenProfile p;
          p.name = !bprofile.empty() ? bprofile : (bstructure == "apsp" || bstructure == "tc") ? "vertex" : "random";
          p.n = n;
          p.steps = bsteps ? bsteps : 2 * n;
          p.seed = bseed + rep;
          p.structure = bstructure;
          p.query_every = 10;
          p.path_queries = 1;
          RunOptions o;
          o.structure = bstructure;
          o.mode = bmode;
          o.seed = bseed + rep;
          o.params = bparams;
          o.check = bcheck;
          const RunReport r = run_trace(gen_trace(p), o);
          mismatches += r.mismatches;
          out << bstructure << '\t' << n << '\t' << rep << '\t' << r.updates << '\t' << r.rounds << '\t' << r.queries
              << '\t' << r.ops.mul << '\t' << r.ops.add << '\t'
              << (r.rounds ? double(r.ops.total()) / double(r.rounds) : 0.0) << '\t' << r.build_seconds << '\t'
              << r.update_seconds << '\t' << (r.query_seconds + r.check_seconds) << '\t' << r.mismatches << '\n';
        }
      }
      return mismatches == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
