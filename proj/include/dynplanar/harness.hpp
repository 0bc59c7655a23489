#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynplanar/decomp.hpp"
#include "dynplanar/graph.hpp"
#include "dynplanar/iso.hpp"
#include "dynplanar/modarith.hpp"

namespace dp::harness {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};
class ParseError : public ScriptError {
 public:
  using ScriptError::ScriptError;
};
class RangeError : public ScriptError {
 public:
  using ScriptError::ScriptError;
};

struct Item {
  enum class Kind { insert, remove, components, iso1, iso2, iso3 };
  Kind kind = Kind::insert;
  int line = 0;
  std::vector<Vertex> args;

  bool is_change() const { return kind == Kind::insert || kind == Kind::remove; }
};

std::string_view kind_name(Item::Kind k);

struct Script {
  int n = 0;
  std::vector<Item> items;

  std::size_t event_count() const;
  std::size_t query_count() const;
};

// One item per line: `n <int>` first, then `+ u v`, `- u v`, `? u v`, `?c a a*`, `?b a b a* b*`,
// `?t a b c d a* b* c* d*`. `#` starts a comment.
Script parse_script(std::string_view text);
std::string format_script(const Script& s);

enum class Mode { strict, lenient };

struct Options {
  Mode mode = Mode::strict;
  bool witness = false;
  PoolConfig pool{};
  Exec exec = Exec::parallel;
};

struct TraceLine {
  int line = 0;
  std::string kind;                 // "+", "-", "?", "?c", "?b", "?t"
  std::optional<bool> answer;       // queries only
  std::string change_type;          // changes only, e.g. "+2,3"
  int drops = 0;
  int refreshes = 0;
  std::string note;                 // skipped changes, query errors
  std::optional<Matching> witness;  // ?t with --witness
};

struct Report {
  std::vector<TraceLine> trace;
  bool aborted = false;
  int abort_line = 0;
  std::string abort_reason;
  std::vector<std::string> diffs;  // check mode only
  long oracle_queries = 0;
  long scratch_checks = 0;
  long bundle_checks = 0;

  std::string to_json() const;
  std::string to_text() const;
};

// Graph, decomposition, bundle family and the per-epoch query session.
class Engine {
 public:
  Engine(int n, const Options& opts);

  // Applies a change; throws IllegalChange or NonPlanarResult and leaves the state untouched.
  ChangeType apply(const ChangeEvent& e);
  // Answers a query item; throws std::invalid_argument subclasses on bad preconditions.
  bool answer(const Item& q, Matching* witness = nullptr);

  const DecompositionState& state() const { return state_; }
  const BundleFamily& family() const { return family_; }
  BundleFamily& family() { return family_; }
  Fingerprinter& fingerprinter() { return fp_; }

 private:
  IsoSession& session();

  DecompositionState state_;
  BundleFamily family_;
  Fingerprinter fp_;
  std::optional<IsoSession> session_;
};

// The tri-tree component named by a ?t query: the unique component holding a, b, c and d.
std::optional<LabelledComponent> named_component(const DecompositionState& state, std::span<const Vertex> vs);

Report replay(const Script& s, const Options& opts);

struct GenOptions {
  std::uint64_t seed = 0;
  int n = 12;
  int steps = 60;
  double p_delete = 0.3;
  double query_rate = 1.0;   // a `?` query after a change with this probability
  double mirror = 0.6;       // chance a change is copied onto the other half of the universe
  double extra_queries = 0;  // chance of an additional ?c/?b/?t query per step
};

// Deterministic per seed; every prefix is planar. Changes alternate between the two halves of
// the universe, `?` queries compare a vertex of one half with one of the other.
Script gen_sequence(const GenOptions& g);

struct CheckOptions {
  Options run{};
  bool fault = false;        // flips the SMW edge sign for the whole run
  bool bundles = true;       // diff family bundles against fresh initialisation
  int drop_every = 0;        // after every k-th change, drop live primes until the pool refreshes
};

// Replays with every query also answered by the oracle; after each change the decomposition is
// diffed against a scratch build and the bundles against direct inversion.
Report check(const Script& s, const CheckOptions& opts);

}  // namespace dp::harness
