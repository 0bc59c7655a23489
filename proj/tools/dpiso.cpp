#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynplanar/harness.hpp"

namespace {

using namespace dp;
using namespace dp::harness;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunFlags {
  std::string file;
  bool strict = false;
  bool lenient = false;
  bool witness = false;
  bool json = false;
  std::uint64_t seed = 0;
  int pool_size = 8;
  std::vector<std::uint64_t> window;
  std::string dot;
  bool serial = false;

  Options options() const {
    Options o;
    o.mode = lenient ? Mode::lenient : Mode::strict;
    o.witness = witness;
    o.pool.size = pool_size;
    o.pool.low_water = std::max(1, pool_size / 2);
    o.pool.seed = seed;
    if (window.size() == 2) {
      o.pool.window_lo = window[0];
      o.pool.window_hi = window[1];
    }
    o.exec = serial ? Exec::serial : Exec::parallel;
    return o;
  }
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("script", f.file, "script file, '-' for stdin")->required();
  auto* strict = cmd->add_flag("--strict", f.strict, "abort on a non-planar or illegal change (default)");
  cmd->add_flag("--lenient", f.lenient, "skip and record bad changes")->excludes(strict);
  cmd->add_flag("--json", f.json, "JSON report");
  cmd->add_option("--seed", f.seed, "prime pool seed");
  cmd->add_option("--pool-size", f.pool_size, "live primes per bundle family")->check(CLI::PositiveNumber);
  cmd->add_option("--prime-window", f.window, "prime window LO HI")->expected(2);
  cmd->add_flag("--serial", f.serial, "use the serial kernels");
}

void write_dot(const std::string& path, const Script& s, const Options& opts) {
  if (path.empty()) return;
  Engine eng(s.n, opts);
  for (const auto& it : s.items) {
    if (!it.is_change()) continue;
    try {
      eng.apply({it.kind == Item::Kind::insert ? ChangeEvent::Kind::insert : ChangeEvent::Kind::remove,
                 Edge(it.args[0], it.args[1])});
    } catch (const std::exception&) {
      if (opts.mode == Mode::strict) break;
    }
  }
  std::ofstream(path) << to_dot(eng.state());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic planar graph isomorphism: replay, generate and cross-check change scripts"};
  app.require_subcommand(1);

  RunFlags replay_flags;
  auto* replay_cmd = app.add_subcommand("replay", "apply a script and answer its queries");
  add_run_flags(replay_cmd, replay_flags);
  replay_cmd->add_flag("--witness", replay_flags.witness, "print the vertex bijection for ?t YES answers");
  replay_cmd->add_option("--dot", replay_flags.dot, "write the final decomposition as DOT");

  RunFlags check_flags;
  bool fault = false;
  bool no_bundles = false;
  int drop_every = 0;
  auto* check_cmd = app.add_subcommand("check", "replay against the oracles and scratch rebuilds");
  add_run_flags(check_cmd, check_flags);
  check_cmd->add_flag("--inject-fault", fault, "test only: flip the sign of the SMW edge update");
  check_cmd->add_flag("--no-bundles", no_bundles, "skip bundle diffs");
  check_cmd->add_option("--drop-every", drop_every, "test only: force a prime-pool refresh every K changes")
      ->check(CLI::NonNegativeNumber);

  GenOptions gen;
  std::string out_path;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random planarity-preserving script");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("-n,--vertices", gen.n, "universe size")->check(CLI::Range(2, 1 << 20));
  gen_cmd->add_option("--steps", gen.steps, "number of changes");
  gen_cmd->add_option("--p-delete", gen.p_delete, "deletion probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--query-rate", gen.query_rate, "chance of a ? query after a change")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--mirror", gen.mirror, "chance a change is copied to the other half")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--extra-queries", gen.extra_queries, "chance of a ?c/?b/?t query per change")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      const std::string text = format_script(gen_sequence(gen));
      if (out_path.empty())
        std::cout << text;
      else
        std::ofstream(out_path) << text;
      return 0;
    }
    const bool is_check = static_cast<bool>(*check_cmd);
    const RunFlags& f = is_check ? check_flags : replay_flags;
    const Script script = parse_script(slurp(f.file));
    Report report;
    if (is_check) {
      CheckOptions co;
      co.run = f.options();
      co.fault = fault;
      co.bundles = !no_bundles;
      co.drop_every = drop_every;
      report = check(script, co);
    } else {
      report = replay(script, f.options());
      write_dot(f.dot, script, f.options());
    }
    std::cout << (f.json ? report.to_json() : report.to_text());
    if (is_check && !f.json)
      std::cout << fmt::format("{} queries, {} scratch checks, {} bundle checks, {} diffs\n", report.oracle_queries,
                               report.scratch_checks, report.bundle_checks, report.diffs.size());
    if (report.aborted) return 2;
    if (is_check && !report.diffs.empty()) return 1;
    return 0;
  } catch (const ScriptError& e) {
    std::cerr << (dynamic_cast<const RangeError*>(&e) ? "RangeError" : "ParseError") << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
