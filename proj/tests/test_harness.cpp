#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ringpart/error.hpp"
#include "ringpart/harness.hpp"

using namespace ringpart;
using namespace ringpart::harness;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ringpart_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

ExperimentSpec small_spec(Algorithm algo) {
  ExperimentSpec spec;
  spec.cfg = {24, 4, 6, 0.5, 11};
  spec.algo = algo;
  spec.generator = parse_generator("uniform_random:N=60");
  spec.trials = 3;
  return spec;
}

std::string serialize(const Trace& t) {
  std::ostringstream out;
  TraceWriter w(out, t.header);
  for (const auto& s : t.steps) w.step(s);
  w.finish();
  return out.str();
}

}  // namespace

TEST_CASE("generator parsing") {
  const auto g = parse_generator("zipf_edges:N=500,s=1.2,offset=3");
  CHECK(g.kind == GeneratorKind::zipf_edges);
  CHECK(g.length == 500);
  CHECK(g.exponent == doctest::Approx(1.2));
  CHECK(g.offset == 3);
  CHECK(parse_generator(to_string(g)).exponent == doctest::Approx(1.2));
  CHECK_THROWS_AS(parse_generator("bogus:N=3"), Error);
  CHECK_THROWS_AS(parse_generator("fixed_edge:N=x"), Error);
  CHECK_THROWS_AS(parse_generator("fixed_edge:N=3,color=2"), Error);
}

TEST_CASE("generator examples") {
  CHECK(generate(parse_generator("fixed_edge:N=5,edge=3"), 8, 4, Stream(1)) ==
        std::vector<std::size_t>(5, 3));
  CHECK(generate(parse_generator("moving_hotspot:N=4,window=1,w=2"), 8, 4, Stream(1)) ==
        std::vector<std::size_t>{0, 0, 1, 1});
  CHECK(generate(parse_generator("moving_hotspot:N=3,window=1,w=1,start=7"), 8, 4, Stream(1)) ==
        std::vector<std::size_t>{7, 0, 1});
  const auto u = parse_generator("uniform_random:N=200");
  const auto a = generate(u, 10, 5, Stream(4));
  CHECK(a == generate(u, 10, 5, Stream(4)));
  CHECK(a != generate(u, 10, 5, Stream(5)));
  for (auto e : a) CHECK(e < 10);
  for (auto e : generate(parse_generator("zipf_edges:N=300,s=1.5"), 10, 5, Stream(2))) CHECK(e < 10);
  CHECK(generate(parse_generator("uniform_random:N=0"), 10, 5, Stream(4)).empty());
  CHECK_THROWS_AS(parse_generator("fixed_edge:N=2,edge=9").validate(8), Error);
}

TEST_CASE("adversary generator repeats the strategy position") {
  const auto reqs = generate(parse_generator("adversary_stay:N=20,strategy=stay,line=4"), 12, 4, Stream(1));
  CHECK(reqs.size() == 20);
  for (auto e : reqs) CHECK(e == 1);
}

TEST_CASE("initial colorings") {
  CHECK(make_initial(InitialKind::blocks, 6, 3, Stream(0)) == Coloring({0, 0, 0, 1, 1, 1}));
  const auto r = make_initial(InitialKind::random, 12, 4, Stream(3));
  CHECK(r.loads(3) == std::vector<std::size_t>{4, 4, 4});
  CHECK(r == make_initial(InitialKind::random, 12, 4, Stream(3)));
}

TEST_CASE("trace round trip") {
  for (auto algo : {Algorithm::dynamic, Algorithm::static_model}) {
    auto spec = small_spec(algo);
    spec.initial = InitialKind::random;
    const Trace t = run_trial(spec, 1);
    std::istringstream in(serialize(t));
    const Trace back = parse_trace(in);
    CHECK(back.header.cfg.n == 24);
    CHECK(back.header.algorithm == t.header.algorithm);
    CHECK(back.header.initial == t.header.initial);
    CHECK(back.steps.size() == t.steps.size());
    CHECK(back.requests() == t.requests());
    CHECK(back.summary.total == t.summary.total);
    CHECK(serialize(back) == serialize(t));
    CHECK(verify_trace(back).ok());
  }
}

TEST_CASE("malformed traces are parse errors") {
  const Trace t = run_trial(small_spec(Algorithm::dynamic), 0);
  const std::string text = serialize(t);
  const auto cut = text.rfind("{\"kind\":\"summary\"");
  REQUIRE(cut != std::string::npos);
  std::istringstream truncated(text.substr(0, cut));
  try {
    parse_trace(truncated);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
  }
  std::istringstream garbage(text.substr(0, text.find('\n') + 1) + "{not json\n");
  try {
    parse_trace(garbage);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("verification flags a corrupted load") {
  Trace t = run_trial(small_spec(Algorithm::dynamic), 0);
  t.steps[5].max_load = 1000;
  const auto report = verify_trace(t, "corrupt");
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().category == "load");
  CHECK(report.violations.front().step == t.steps[5].step);
  CHECK(format_report(report).find("FAILED") != std::string::npos);

  Trace u = run_trial(small_spec(Algorithm::static_model), 0);
  u.summary.cost_hit += 1;
  const auto ledger = verify_trace(u, "ledger");
  REQUIRE_FALSE(ledger.ok());
  CHECK(ledger.violations.front().category == "ledger");
}

TEST_CASE("experiments are deterministic and consistent") {
  for (auto algo : {Algorithm::dynamic, Algorithm::static_model}) {
    auto spec = small_spec(algo);
    const auto dir = scratch(std::string(to_string(algo)));
    spec.out_dir = dir.string();
    spec.threads = 2;
    const auto a = run_experiment(spec);
    spec.out_dir.clear();
    spec.threads = 1;
    const auto b = run_experiment(spec);
    REQUIRE(a.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(csv_row(a.rows[i]) == csv_row(b.rows[i]));
      CHECK(a.rows[i].seed == derive_seed(11, i));
      const Trace t = load_trace((dir / ("trial_" + std::to_string(i) + ".jsonl")).string());
      std::uint64_t sum = 0;
      for (const auto& s : t.steps) sum += s.total();
      CHECK(sum == a.rows[i].total);
      CHECK(a.rows[i].total == a.rows[i].cost_hit + a.rows[i].cost_move + a.rows[i].cost_merge +
                                   a.rows[i].cost_mono + a.rows[i].cost_bal);
    }
    std::ifstream csv(dir / "summary.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == csv_header());
  }
}

TEST_CASE("empty request sequence") {
  auto spec = small_spec(Algorithm::static_model);
  spec.generator = parse_generator("uniform_random:N=0");
  spec.with_oracle = true;
  spec.cfg = {8, 2, 4, 0.5, 3};
  const auto r = run_experiment(spec);
  for (const auto& row : r.rows) {
    CHECK(row.N == 0);
    CHECK(row.total == 0);
    CHECK(row.opt_static == 0u);
    CHECK(row.opt_dynamic == 0u);
    CHECK_FALSE(row.ratio.has_value());
  }
}

TEST_CASE("oracle columns") {
  auto spec = small_spec(Algorithm::dynamic);
  spec.cfg = {8, 2, 4, 0.5, 5};
  spec.generator = parse_generator("uniform_random:N=12");
  spec.with_oracle = true;
  spec.trials = 2;
  for (const auto& row : run_experiment(spec).rows) {
    REQUIRE(row.opt_static.has_value());
    REQUIRE(row.opt_dynamic.has_value());
    CHECK(*row.opt_dynamic <= *row.opt_static);
    if (*row.opt_dynamic > 0) {
      REQUIRE(row.ratio.has_value());
      CHECK(*row.ratio == doctest::Approx(double(row.total) / double(*row.opt_dynamic)));
    }
  }
  // oracle out of reach: columns stay empty, the run still succeeds
  spec.cfg = {60, 6, 10, 0.5, 5};
  spec.trials = 1;
  const auto big = run_experiment(spec);
  CHECK_FALSE(big.rows[0].opt_dynamic.has_value());
}

TEST_CASE("experiment json") {
  const auto spec = parse_experiment_json(
      R"({"algo":"static","n":30,"ell":3,"k":10,"epsilon":0.25,"seed":9,"gen":"fixed_edge:N=4,edge=2","trials":2,"initial":"random"})");
  CHECK(spec.algo == Algorithm::static_model);
  CHECK(spec.cfg.n == 30);
  CHECK(spec.cfg.epsilon == doctest::Approx(0.25));
  CHECK(spec.generator.kind == GeneratorKind::fixed_edge);
  CHECK(spec.initial == InitialKind::random);
  const auto again = parse_experiment_json(to_json(spec));
  CHECK(to_json(again) == to_json(spec));
  CHECK_THROWS_AS(parse_experiment_json("{\"n\":"), Error);
  CHECK_THROWS_AS(run_experiment(parse_experiment_json(R"({"n":30,"ell":2,"k":10})")), Error);
  CHECK_THROWS_AS(parse_experiment_json(R"({"algo":"bogus"})"), Error);
}

TEST_CASE("sweep") {
  auto spec = small_spec(Algorithm::dynamic);
  spec.trials = 1;
  const auto points = sweep(spec, "N", {"10", "20"});
  REQUIRE(points.size() == 2);
  CHECK(points[0].result.rows[0].N == 10);
  CHECK(points[1].result.rows[0].N == 20);
  std::ostringstream out;
  write_sweep_csv(out, "N", points);
  CHECK(out.str().rfind("N,trial,", 0) == 0);
  CHECK_THROWS_AS(sweep(spec, "color", {"1"}), Error);
}

TEST_CASE("trace oracle") {
  auto spec = small_spec(Algorithm::static_model);
  spec.cfg = {6, 2, 3, 0.5, 2};
  spec.generator = parse_generator("uniform_random:N=10");
  const Trace t = run_trial(spec, 0);
  const auto s = oracle_for_trace(t, OracleKind::static_model);
  const auto d = oracle_for_trace(t, OracleKind::dynamic);
  CHECK(d <= s);
}
