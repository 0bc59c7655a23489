#include "doctest.h"
#include "dynplanar/harness.hpp"
#include "dynplanar/oracle.hpp"
#include "json.hpp"

using namespace dp;
using namespace dp::harness;

TEST_CASE("parse_script examples") {
  auto s = parse_script("n 6\n+ 0 1\n? 0 3");
  CHECK(s.n == 6);
  CHECK(s.event_count() == 1);
  CHECK(s.query_count() == 1);
  CHECK(s.items[1].line == 3);

  CHECK_THROWS_AS(parse_script("+ 0 0"), ParseError);
  CHECK_THROWS_AS(parse_script("n 6\n+ 0 0"), ParseError);
  try {
    parse_script("n 6\n\n? 0 99");
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_script("n 6\nn 7"), ParseError);
  CHECK_THROWS_AS(parse_script("n 6\n?b 0 1 2"), ParseError);
  CHECK_THROWS_AS(parse_script("n 6\n+ 0 x"), ParseError);
  CHECK_THROWS_AS(parse_script("n 6\n?t 0 0 1 2 3 4 5 1"), ParseError);

  auto c = parse_script("# comment\nn 4 # universe\n+ 0 1 # edge\n?c 0 1\n?b 0 1 2 3\n?t 0 1 2 3 0 1 2 3\n");
  CHECK(c.items.size() == 4);
  CHECK(c.items[3].kind == Item::Kind::iso3);
  CHECK(parse_script(format_script(c)).items.size() == 4);
}

TEST_CASE("replay examples") {
  auto tri = parse_script("n 6\n+ 0 1\n+ 1 2\n+ 0 2\n+ 3 4\n+ 4 5\n+ 3 5\n? 0 3\n");
  auto r = replay(tri, {});
  REQUIRE(r.trace.size() == 7);
  CHECK(r.trace.back().answer == true);
  CHECK(r.trace[0].change_type == "+0,2");

  // K5 completion aborts in strict mode at the violating line and is skipped in lenient mode.
  std::string k5 = "n 5\n";
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5 += "+ " + std::to_string(a) + " " + std::to_string(b) + "\n";
  k5 += "? 0 1\n";
  auto strict = replay(parse_script(k5), {});
  CHECK(strict.aborted);
  CHECK(strict.abort_line == 11);
  Options lenient;
  lenient.mode = Mode::lenient;
  auto len = replay(parse_script(k5), lenient);
  CHECK_FALSE(len.aborted);
  CHECK(len.trace.size() == 11);
  CHECK(len.trace[9].note.find("skipped") != std::string::npos);

  // A query whose precondition fails is noted, not fatal.
  auto bad_query = replay(parse_script("n 4\n+ 0 1\n?b 0 2 1 3\n+ 1 2\n"), {});
  CHECK_FALSE(bad_query.aborted);
  REQUIRE(bad_query.trace.size() == 3);
  CHECK_FALSE(bad_query.trace[1].answer.has_value());
  CHECK(bad_query.trace[1].note.find("precondition") != std::string::npos);

  // Witness for a ?t YES answer is a verified bijection.
  auto prisms = parse_script(
      "n 12\n+ 0 1\n+ 1 2\n+ 0 2\n+ 3 4\n+ 4 5\n+ 3 5\n+ 0 3\n+ 1 4\n+ 2 5\n"
      "+ 6 7\n+ 7 8\n+ 6 8\n+ 9 10\n+ 10 11\n+ 9 11\n+ 6 9\n+ 7 10\n+ 8 11\n"
      "?t 0 1 2 3 9 11 10 6\n");
  Options w;
  w.witness = true;
  auto wr = replay(prisms, w);
  REQUIRE(wr.trace.back().answer == true);
  REQUIRE(wr.trace.back().witness.has_value());
  Engine eng(12, {});
  for (const auto& it : prisms.items)
    if (it.is_change()) eng.apply({ChangeEvent::Kind::insert, Edge(it.args[0], it.args[1])});
  auto c1 = named_component(eng.state(), std::vector<Vertex>{0, 1, 2, 3});
  auto c2 = named_component(eng.state(), std::vector<Vertex>{9, 11, 10, 6});
  REQUIRE(c1);
  REQUIRE(c2);
  CHECK(verify_iso(c1->graph, c2->graph, *wr.trace.back().witness));
}

TEST_CASE("JSON report fields") {
  auto r = replay(parse_script("n 4\n+ 0 1\n? 0 2\n"), {});
  auto j = nlohmann::json::parse(r.to_json());
  REQUIRE(j["trace"].size() == 2);
  for (const auto& line : j["trace"])
    for (const char* key : {"line", "kind", "answer", "change_type", "drops", "refreshes"}) CHECK(line.contains(key));
  CHECK(j["trace"][1]["answer"] == false);
  CHECK(j["trace"][0]["change_type"] == "+0,2");
}

TEST_CASE("gen_sequence is deterministic and planar") {
  GenOptions g;
  g.seed = 42;
  g.extra_queries = 0.3;
  auto a = format_script(gen_sequence(g));
  auto b = format_script(gen_sequence(g));
  CHECK(a == b);
  g.seed = 43;
  CHECK(format_script(gen_sequence(g)) != a);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenOptions o;
    o.seed = seed;
    o.steps = 40;
    auto s = gen_sequence(o);
    CHECK(s.event_count() == 40);
    Graph gr(s.n);
    for (const auto& it : s.items) {
      if (!it.is_change()) continue;
      gr = apply_change(gr, {it.kind == Item::Kind::insert ? ChangeEvent::Kind::insert : ChangeEvent::Kind::remove,
                             Edge(it.args[0], it.args[1])});
      CHECK(oracle::oracle_is_planar(gr));
    }
  }
  // Below the planar edge limit of a half, so the delete fallback never fires.
  GenOptions mono;
  mono.p_delete = 0;
  mono.steps = 12;
  for (const auto& it : gen_sequence(mono).items) CHECK(it.kind != Item::Kind::remove);
}

TEST_CASE("check finds no diffs and the fault canary fires") {
  long diffs = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GenOptions g;
    g.seed = seed;
    g.extra_queries = 0.5;
    auto r = check(gen_sequence(g), {});
    diffs += static_cast<long>(r.diffs.size());
    for (const auto& d : r.diffs) MESSAGE(d);
    CHECK(r.oracle_queries > 60);
    // Accounting: drops since the last refresh stay below the pool size.
    int drops_at_refresh = 0, last_refreshes = 0;
    for (const auto& t : r.trace) {
      if (t.refreshes != last_refreshes) {
        last_refreshes = t.refreshes;
        drops_at_refresh = t.drops;
      }
      CHECK(t.drops - drops_at_refresh < PoolConfig{}.size);
    }
  }
  CHECK(diffs == 0);

  CheckOptions faulty;
  faulty.fault = true;
  long fault_diffs = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    GenOptions g;
    g.seed = seed;
    fault_diffs += static_cast<long>(check(gen_sequence(g), faulty).diffs.size());
  }
  CHECK(fault_diffs > 0);
  CHECK_FALSE(smw_fault());
}
