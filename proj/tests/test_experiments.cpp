#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "distcc/experiments.hpp"
#include "matchers.hpp"

using namespace distcc;

namespace {

double cell(const Table& t, std::size_t row, const std::string& col) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == col) return std::strtod(t.rows[row][c].c_str(), nullptr);
  FAIL("no column named " + col);
  return 0.0;
}

std::string cell_text(const Table& t, std::size_t row, const std::string& col) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (t.columns[c] == col) return t.rows[row][c];
  FAIL("no column named " + col);
  return {};
}

}  // namespace

TEST_CASE("grid parsing and expansion") {
  GridSpec g = parse_grid("0.5:1.0:0.05");
  CHECK(g.lo == 0.5);
  CHECK(g.hi == 1.0);
  CHECK(g.step == 0.05);
  CHECK(grid_values(g).size() == 11);
  CHECK(grid_values(parse_grid("0.7:0.7:0.1")).size() == 1);
  // hi not on the lattice: stop below it
  CHECK(grid_values(parse_grid("0:1:0.3")).size() == 4);

  CHECK_THROWS_MATCHES(parse_grid("0.5:1.0"), Error, ErrorCodeIs(errc::invalid_argument));
  CHECK_THROWS_MATCHES(parse_grid("a:b:c"), Error, ErrorCodeIs(errc::invalid_argument));
  CHECK_THROWS_MATCHES(parse_grid("0:1:0"), Error, ErrorCodeIs(errc::invalid_argument));
  CHECK_THROWS_MATCHES(parse_grid("1:0:0.1"), Error, ErrorCodeIs(errc::invalid_argument));
  CHECK_THROWS_MATCHES(parse_grid("0:1:1e-9"), Error, ErrorCodeIs(errc::too_large));
  CHECK_THROWS_MATCHES(parse_grid("0.5:1.0:0.05x"), Error,
                       ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("csv rendering") {
  Table t;
  t.columns = {"a", "b"};
  t.rows.push_back({"1", "0.5"});
  t.rows.push_back({"2", "nan"});
  CHECK(table_to_csv(t) == "# distcc-lab schema v1\na,b\n1,0.5\n2,nan\n");
}

TEST_CASE("rac sweep: invariants and reruns are byte-identical") {
  GridSpec g = parse_grid("0.55:0.85:0.15");  // 3 points
  ExperimentRun a = run_rac_sweep(2, 2, g, 2, {1, 2}, 42);
  ExperimentRun b = run_rac_sweep(2, 2, g, 2, {1, 2}, 42);
  CHECK(table_to_csv(a.table) == table_to_csv(b.table));
  REQUIRE(a.table.rows.size() == 3);

  for (std::size_t r = 0; r < a.table.rows.size(); ++r) {
    CHECK(cell_text(a.table, r, "status") == "ok");
    double bound = cell(a.table, r, "classical_bound");
    double frontier = cell(a.table, r, "classical_frontier_p");
    double seesaw = cell(a.table, r, "quantum_seesaw_p");
    double l1 = cell(a.table, r, "hierarchy_lb_p_l1");
    double l2 = cell(a.table, r, "hierarchy_lb_p_l2");
    // closed-form bound never exceeds the exact frontier
    CHECK(bound <= frontier + 1e-6);
    // hierarchy lower bounds never exceed the see-saw upper bound
    CHECK(l1 <= seesaw + 1e-5);
    CHECK(l2 <= seesaw + 1e-5);
    CHECK(l1 <= l2 + 1e-6);
    // quantum never needs more distinguishability than classical
    CHECK(l2 <= frontier + 1e-5);
  }

  CHECK(a.manifest.command == "rac --n 2 --d 2");
  CHECK(a.manifest.task == "rac(2,2)");
  CHECK(a.manifest.seed == 42);
  CHECK(a.manifest.statuses.size() == 3);
  nlohmann::json j = manifest_to_json(a.manifest);
  CHECK(j["schema"] == "distcc-lab manifest v1");
  CHECK(j["version"] == "distcc-lab 1.0.0");
  CHECK(j["rows"] == 3);
  CHECK(j["bisection_iterations"] == 12);
  CHECK(j["wall_seconds"].get<double>() >= 0.0);
}

TEST_CASE("rac sweep argument validation") {
  GridSpec g = parse_grid("0.6:0.6:0.1");
  CHECK_THROWS_MATCHES(run_rac_sweep(2, 2, g, 1, {1}, 0), Error,
                       ErrorCodeIs(errc::invalid_argument));
  CHECK_THROWS_MATCHES(run_rac_sweep(2, 2, g, 2, {4}, 0), Error,
                       ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("cycle ratio table pins") {
  ExperimentRun run = run_cycle_ratio({5, 7});
  REQUIRE(run.table.rows.size() == 2);
  CHECK_THAT(cell(run.table, 0, "ratio"), Catch::Matchers::WithinAbs(1.0112712429, 1e-9));
  CHECK_THAT(cell(run.table, 1, "ratio"), Catch::Matchers::WithinAbs(1.0511303458, 1e-9));
  // the explicit strategy reproduces the closed-form success (cells carry
  // 10 significant digits, so compare at 1e-9)
  for (std::size_t r = 0; r < 2; ++r)
    CHECK_THAT(cell(run.table, r, "S_strategy"),
               Catch::Matchers::WithinAbs(cell(run.table, r, "S_formula"), 1e-9));
  CHECK_THAT(cell(run.table, 0, "quantum_dq_cap"), Catch::Matchers::WithinAbs(0.4, 1e-12));
  CHECK_THAT(cell(run.table, 0, "classical_dc_bound"),
             Catch::Matchers::WithinAbs(2.0 * std::cos(std::acos(-1.0) / 5) / 4.0, 1e-9));

  CHECK_THROWS_MATCHES(run_cycle_ratio({6}), Error, ErrorCodeIs(errc::even_n));
  CHECK_THROWS_MATCHES(run_cycle_ratio({3}), Error, ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("hadamard ratio table pins") {
  ExperimentRun run = run_hadamard_ratio({4, 1124, 1128, 32768});
  REQUIRE(run.table.rows.size() == 4);

  CHECK_THAT(cell(run.table, 0, "alpha"), Catch::Matchers::WithinAbs(4.0, 0.0));
  CHECK_THAT(cell(run.table, 0, "dq_cap"), Catch::Matchers::WithinAbs(0.25, 1e-12));
  CHECK_THAT(cell(run.table, 0, "S_verified"), Catch::Matchers::WithinAbs(1.0, 1e-9));

  double log_big = cell(run.table, 3, "log10_ratio");
  CHECK(log_big >= 66.0);
  CHECK(log_big <= 67.0);
  CHECK(cell_text(run.table, 3, "exceeds_one") == "1");
  CHECK(cell_text(run.table, 0, "exceeds_one") == "0");
  // the ratio dips before rising again: d = 1128 already beats d = 1124
  CHECK(cell(run.table, 2, "log10_ratio") > cell(run.table, 1, "log10_ratio"));
  // structural columns are absent above the exact-computation range
  CHECK(std::isnan(cell(run.table, 1, "alpha")));
  CHECK(std::isnan(cell(run.table, 1, "S_verified")));

  int mono = run.manifest.extra["ratio_monotone_from_d"].get<int>();
  int first = run.manifest.extra["ratio_first_exceeds_one_at_d"].get<int>();
  CHECK(mono == 200);
  CHECK(hadamard_ratio_log10(first) > 0.0);
  CHECK(hadamard_ratio_log10(first - 1) <= 0.0);
  CHECK(first > 1000);
  CHECK(first < 2000);

  CHECK_THROWS_MATCHES(run_hadamard_ratio({0}), Error, ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("noisy code report pins") {
  ExperimentRun run = run_obs3_comparison();
  REQUIRE(run.table.rows.size() == 1);
  double s_q = cell(run.table, 0, "S_q");
  double d_q = cell(run.table, 0, "sdp_dq");
  CHECK(s_q >= 0.700);
  CHECK(s_q <= 0.703);
  CHECK(d_q >= 0.385);
  CHECK(d_q <= 0.394);
  CHECK_THAT(cell(run.table, 0, "classical_cap_at_dq"),
             Catch::Matchers::WithinAbs(0.5 * (1.0 + d_q), 1e-9));
  CHECK_THAT(cell(run.table, 0, "classical_dim2_optimum"), Catch::Matchers::WithinAbs(0.75, 1e-12));
  CHECK(cell_text(run.table, 0, "dist_advantage") == "1");
  CHECK(cell_text(run.table, 0, "dim_advantage") == "0");
  CHECK(run.manifest.extra["distinguishability_advantage"].get<bool>());
  CHECK_FALSE(run.manifest.extra["dimension_advantage"].get<bool>());
}

TEST_CASE("pairdist table: summary pins and overflow handling", "[heavy]") {
  GridSpec g = parse_grid("0.8:0.8:0.1");  // one sweep point per N
  ExperimentRun run = run_pairdist({3, 5}, 2, 7, g);
  REQUIRE(run.table.rows.size() == 4);

  // N = 3 summary row
  CHECK(cell_text(run.table, 0, "kind") == "summary");
  CHECK_THAT(cell(run.table, 0, "helstrom_S"), Catch::Matchers::WithinAbs(0.9330127019, 5e-4));
  CHECK_THAT(cell(run.table, 0, "sdp_dq"), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-4));
  CHECK_THAT(cell(run.table, 0, "quantum_dq_cap"), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-9));
  CHECK(cell_text(run.table, 0, "status") == "ok");

  // N = 3 sweep row: exact frontier available, see-saw at least matches it
  CHECK(cell_text(run.table, 1, "kind") == "sweep");
  double frontier = cell(run.table, 1, "classical_frontier_p");
  CHECK_THAT(frontier, Catch::Matchers::WithinAbs(0.6, 1e-6));
  CHECK(cell(run.table, 1, "classical_bound") <= frontier + 1e-6);

  // N = 5 summary still fine, sweep frontier overflows the canonical alphabet
  CHECK_THAT(cell(run.table, 2, "helstrom_S"), Catch::Matchers::WithinAbs(0.8847104421, 5e-4));
  CHECK(cell_text(run.table, 3, "status") == "classical_frontier_p=Overflow");
  CHECK(std::isnan(cell(run.table, 3, "classical_frontier_p")));
  CHECK_FALSE(std::isnan(cell(run.table, 3, "quantum_seesaw_p")));

  CHECK_THROWS_MATCHES(run_pairdist({9}, 2, 0, g), Error,
                       ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("small graph scan: smoke on one point", "[heavy]") {
  ExperimentRun run = run_small_graph_scan(parse_grid("0.7:0.7:0.1"), 2);
  REQUIRE(run.table.rows.size() == 8);
  for (std::size_t r = 0; r < 8; ++r) {
    CHECK(cell_text(run.table, r, "status") == "ok");
    // lower bound on the quantum cost never exceeds the classical cost
    CHECK(cell(run.table, r, "gap") >= -1e-6);
  }
  CHECK(run.manifest.extra.contains("max_gap_per_graph"));
  CHECK_THROWS_MATCHES(run_small_graph_scan(parse_grid("0.7:0.7:0.1"), 0), Error,
                       ErrorCodeIs(errc::invalid_argument));
}

TEST_CASE("seesaw bisection brackets the known rac(2,2) trade-off") {
  TaskSpec t = rac_task(2, 2);
  SeesawOptions o;
  o.restarts = 4;
  o.max_rounds = 60;
  o.tol = 1e-6;
  o.seed = 5;
  // at S = 0.85 the qubit strategy needs distinguishability close to 1/2
  double p = seesaw_min_distinguishability(t, 2, 0.85, o);
  CHECK(p >= 0.45);
  CHECK(p <= 0.55);
  // never below the dimension-free hierarchy lower bound
  CHECK(p >= hierarchy_min_distinguishability(t, 2, 0.85).bound - 1e-5);
  // an impossible target reports NaN rather than throwing
  CHECK(std::isnan(seesaw_min_distinguishability(t, 2, 0.99, o)));
}
