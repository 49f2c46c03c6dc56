#include "liomnet/errors.hpp"
#include "liomnet/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace liomnet;

namespace {

std::string first_line(const std::string& csv) { return csv.substr(0, csv.find('\n')); }

std::vector<std::string> lines(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

ExperimentConfig small(ExperimentMode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.w_list = {4.0, 9.0};
  cfg.realizations = 3;
  cfg.seed = 13;
  cfg.block_legs = 2;
  cfg.t_points = 5;
  cfg.t_max = 100.0;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("aggregate_realizations examples") {
    const AggregateStats one = aggregate_realizations({{0, 2.5}});
    CHECK(one.mean == 2.5);
    CHECK(one.sem == 0.0);
    CHECK(one.count == 1);
    const AggregateStats two = aggregate_realizations({{0, 1.0}, {1, 3.0}});
    CHECK(two.mean == doctest::Approx(2.0));
    CHECK(two.sem == doctest::Approx(1.0));
    std::vector<RealizationValue> rows;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::uint64_t r = 0; r < 40; ++r) rows.push_back({r, u(rng)});
    const AggregateStats ordered = aggregate_realizations(rows);
    std::shuffle(rows.begin(), rows.end(), rng);
    const AggregateStats shuffled = aggregate_realizations(rows);
    CHECK(ordered.mean == shuffled.mean);
    CHECK(ordered.sem == shuffled.sem);
    CHECK_THROWS_AS(aggregate_realizations({}), ArgumentError);
  }

  TEST_CASE("run_tasks covers every index and rethrows the first failure") {
    std::vector<int> hits(50, 0);
    run_tasks(50, 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    std::atomic<int> ran{0};
    try {
      run_tasks(20, 3, [&](std::size_t i) {
        ++ran;
        if (i == 7 || i == 12) throw ContractError("task " + std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const ContractError& e) {
      CHECK(std::string(e.what()) == "task 7");
    }
    CHECK(ran.load() == 20);
  }

  TEST_CASE("config parsing") {
    ExperimentConfig cfg;
    apply_config_text(cfg, "# comment\nmode = merit-edm\n\ndisorder=8, 12,16\nchain-sites=5\n"
                           "realizations=7\nseed=99\ndelta=0.5\nworkers=2\nsvg=true\n");
    CHECK(cfg.mode == ExperimentMode::merit_edm);
    CHECK(cfg.w_list == std::vector<double>{8.0, 12.0, 16.0});
    CHECK(cfg.chain_sites == 5);
    CHECK(cfg.realizations == 7);
    CHECK(cfg.seed == 99);
    CHECK(cfg.delta == 0.5);
    CHECK(cfg.workers == 2);
    CHECK(cfg.svg);
    CHECK(cfg.resolved_chain_sites() == 5);
    CHECK_THROWS_AS(apply_setting(cfg, "colour", "red"), ArgumentError);
    CHECK_THROWS_AS(apply_setting(cfg, "realizations", "many"), ArgumentError);
    CHECK_THROWS_AS(apply_config_text(cfg, "just words\n"), ArgumentError);
    CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/cfg.txt"), ArgumentError);
    CHECK_THROWS_AS(parse_number_list(""), ArgumentError);
  }

  TEST_CASE("config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.realizations = 0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = {};
    cfg.w_list.clear();
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = {};
    cfg.t_min = 5.0;
    cfg.t_max = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = {};
    cfg.block_legs = 3;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
    cfg = {};
    cfg.mode = ExperimentMode::oracle_compare;
    cfg.chain_sites = 6;
    CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  }

  TEST_CASE("resolved chain sizes") {
    ExperimentConfig cfg;
    cfg.block_legs = 4;
    cfg.mode = ExperimentMode::merit_tnm;
    CHECK(cfg.resolved_chain_sites() == 10);
    cfg.mode = ExperimentMode::merit_edm;
    CHECK(cfg.resolved_chain_sites() == 5);
    cfg.mode = ExperimentMode::entangle;
    CHECK(cfg.resolved_chain_sites() == 8);
    cfg.mode = ExperimentMode::oracle_compare;
    CHECK(cfg.resolved_chain_sites() == 8);
  }

  TEST_CASE("time grid ends exactly at t_max") {
    ExperimentConfig cfg;
    const TimeGrid g = cfg.time_grid();
    CHECK(g.points.size() == 48);
    CHECK(g.points.back() == 1e6);
  }

  TEST_CASE("format_real") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(-0.0) == "0");
    CHECK(format_real(12.0) == "12");
  }

  TEST_CASE("merit CSV schemas") {
    const ExperimentConfig cfg = small(ExperimentMode::merit_tnm);
    const auto rows = run_merit_experiment(cfg);
    CHECK(rows.size() == 6);
    const std::string raw = merit_raw_csv(rows);
    CHECK(first_line(raw) ==
          "method,size_param,disorder_w,realization,site,delta_total,delta_1,delta_2,seed");
    CHECK(lines(raw).size() == 7);
    CHECK(fields(lines(raw)[1])[0] == "tnm");
    CHECK(fields(lines(raw)[1])[8] == "13");
    const std::string agg = merit_aggregate_csv(rows);
    CHECK(first_line(agg) ==
          "method,size_param,disorder_w,site,delta_total_mean,delta_total_sem,delta_1_mean,"
          "delta_1_sem,delta_2_mean,delta_2_sem,n");
    CHECK(lines(agg).size() == 3);
    CHECK(fields(lines(agg)[1]).back() == "3");
    for (const MeritRow& row : rows)
      CHECK(std::abs(row.report.delta_total - row.report.delta_interior -
                     row.report.delta_boundary) < 1e-9);
  }

  TEST_CASE("merit-edm with J=0 reports zero") {
    ExperimentConfig cfg = small(ExperimentMode::merit_edm);
    cfg.j = 0.0;
    cfg.chain_sites = 5;
    for (const MeritRow& row : run_merit_experiment(cfg)) {
      CHECK(row.method == "edm");
      CHECK(row.report.size_param == 5);
      CHECK(std::abs(row.report.delta_total) < 1e-12);
    }
  }

  TEST_CASE("entropy CSV schemas and J=0") {
    ExperimentConfig cfg = small(ExperimentMode::entangle);
    const auto rows = run_entropy_experiment(cfg);
    CHECK(rows.size() == 2 * 3 * 5);
    CHECK(first_line(entropy_raw_csv(rows)) == "block_legs,disorder_w,realization,time,entropy,seed");
    CHECK(first_line(entropy_aggregate_csv(rows)) ==
          "block_legs,disorder_w,time,entropy_mean,entropy_sem,n");
    CHECK(lines(entropy_aggregate_csv(rows)).size() == 1 + 2 * 5);
    cfg.j = 0.0;
    for (const EntropyRow& row : run_entropy_experiment(cfg)) CHECK(std::abs(row.entropy) < 1e-12);
  }

  TEST_CASE("oracle comparison schemas and J=0") {
    ExperimentConfig cfg = small(ExperimentMode::oracle_compare);
    const auto rows = run_oracle_compare(cfg);
    CHECK(rows.size() == 2 * 3 * 5);
    CHECK(first_line(oracle_raw_csv(rows)) ==
          "chain_sites,block_legs,disorder_w,realization,time,entropy_exact,entropy_tn,deviation,"
          "seed");
    CHECK(first_line(oracle_aggregate_csv(rows)) ==
          "chain_sites,block_legs,disorder_w,time,exact_mean,exact_sem,tn_mean,tn_sem,"
          "deviation_mean,deviation_sem,n");
    for (const OracleRow& row : rows)
      CHECK(row.deviation == doctest::Approx(std::abs(row.entropy_exact - row.entropy_tn)));
    cfg.j = 0.0;
    for (const OracleRow& row : run_oracle_compare(cfg)) CHECK(row.deviation == 0.0);
  }

  TEST_CASE("oracle comparison near t=0") {
    ExperimentConfig cfg = small(ExperimentMode::oracle_compare);
    cfg.t_min = 1e-9;
    cfg.t_max = 1e-8;
    cfg.t_points = 2;
    for (const OracleRow& row : run_oracle_compare(cfg)) {
      CHECK(row.entropy_exact < 1e-12);
      CHECK(row.entropy_tn < 1e-12);
    }
  }

  TEST_CASE("outputs are byte-identical across runs and worker counts") {
    for (auto mode : {ExperimentMode::merit_tnm, ExperimentMode::merit_edm,
                      ExperimentMode::entangle, ExperimentMode::oracle_compare}) {
      ExperimentConfig cfg = small(mode);
      cfg.svg = true;
      const auto a = render_experiment(cfg);
      cfg.workers = 8;
      const auto b = render_experiment(cfg);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].name == b[k].name);
        CHECK(a[k].contents == b[k].contents);
      }
    }
  }

  TEST_CASE("a raw row is reproducible from (seed, realization, W) alone") {
    ExperimentConfig cfg = small(ExperimentMode::merit_tnm);
    const auto rows = run_merit_experiment(cfg);
    const MeritRow single = merit_realization(cfg, 9.0, 2);
    const auto it = std::find_if(rows.begin(), rows.end(), [](const MeritRow& r) {
      return r.report.disorder_w == 9.0 && r.report.realization == 2;
    });
    REQUIRE(it != rows.end());
    CHECK(merit_raw_csv({*it}) == merit_raw_csv({single}));
  }

  TEST_CASE("SVG output and files on disk") {
    ExperimentConfig cfg = small(ExperimentMode::entangle);
    cfg.svg = true;
    const auto files = render_experiment(cfg);
    std::vector<std::string> names;
    for (const auto& f : files) names.push_back(f.name);
    CHECK(std::find(names.begin(), names.end(), "entropy_W4.svg") != names.end());
    CHECK(std::find(names.begin(), names.end(), "entropy_W9.svg") != names.end());
    for (const auto& f : files)
      if (f.name.ends_with(".svg")) CHECK(f.contents.rfind("<svg", 0) == 0);
    const auto dir = std::filesystem::temp_directory_path() / "liomnet_harness_test" / "nested";
    std::filesystem::remove_all(dir.parent_path());
    write_outputs(dir.string(), files);
    std::ifstream in(dir / "entropy_raw.csv");
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(contents.str() == files[0].contents);
    std::filesystem::remove_all(dir.parent_path());
  }

  TEST_CASE("capacity errors surface from the dense limit") {
    ExperimentConfig cfg = small(ExperimentMode::merit_tnm);
    cfg.dense_limit = 3;
    CHECK_THROWS_AS(run_merit_experiment(cfg), CapacityError);
  }
}
