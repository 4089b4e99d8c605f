// distcc-lab: compute, certify, and compare classical and quantum resources
// for one-way communication tasks measured by distinguishability.
//
// Subcommands (each writes a CSV table and, with --json, a run manifest):
//   rac         trade-off sweep for random-access coding tasks
//   graph-scan  classical frontier vs hierarchy bound on the graph catalog
//   cycle       odd-cycle equality ratio table
//   pairdist    pair-distinguishing task: summary and trade-off sweep
//   hadamard    sign-vector equality ratio table
//   obs3        noisy qubit code report (advantage without extra dimensions)
//
// Exit codes: 0 success (including --help), 2 bad arguments, 3 I/O failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distcc/experiments.hpp"

namespace {

struct CommonOpts {
  std::string out;
  bool json = false;
};

void attach_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--out", c.out, "write the CSV table to this path");
  sub->add_flag("--json", c.json, "print the run manifest as JSON on stdout");
}

void emit(const distcc::ExperimentRun& run, const CommonOpts& c) {
  if (!c.out.empty()) distcc::write_csv_file(run.table, c.out);
  if (c.json)
    std::cout << distcc::manifest_to_json(run.manifest).dump(2) << "\n";
  else if (c.out.empty())
    distcc::write_csv(run.table, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical vs quantum one-way communication resources, "
               "measured by distinguishability"};
  app.require_subcommand(1);

  // rac
  int rac_n = 2, rac_d = 2, rac_dim = -1;
  std::string rac_grid = "0.5:1.0:0.05";
  std::vector<int> rac_levels = {1, 2};
  std::uint64_t rac_seed = 0;
  CommonOpts rac_common;
  CLI::App* rac = app.add_subcommand("rac", "random-access coding sweep");
  rac->add_option("--n", rac_n, "number of input symbols per slot");
  rac->add_option("--d", rac_d, "number of slots (questions)");
  rac->add_option("--grid", rac_grid, "success grid lo:hi:step");
  rac->add_option("--dim", rac_dim, "see-saw Hilbert-space dimension (default: d)");
  rac->add_option("--level", rac_levels, "hierarchy levels to tabulate");
  rac->add_option("--seed", rac_seed, "base seed for the see-saw restarts");
  attach_common(rac, rac_common);

  // graph-scan
  std::string gs_grid = "0.5:1.0:0.02";
  int gs_level = 2;
  CommonOpts gs_common;
  CLI::App* gs = app.add_subcommand("graph-scan", "graph-equality catalog scan");
  gs->add_option("--grid", gs_grid, "success grid lo:hi:step");
  gs->add_option("--level", gs_level, "hierarchy level");
  attach_common(gs, gs_common);

  // cycle
  std::vector<int> cycle_ns = {5, 7, 9, 11};
  CommonOpts cycle_common;
  CLI::App* cyc = app.add_subcommand("cycle", "odd-cycle equality ratio table");
  cyc->add_option("--N", cycle_ns, "odd cycle lengths (>= 5)");
  attach_common(cyc, cycle_common);

  // pairdist
  std::vector<int> pd_ns = {3, 4, 5, 6};
  int pd_dim = 2;
  std::uint64_t pd_seed = 0;
  std::string pd_grid = "0.6:0.9:0.05";
  CommonOpts pd_common;
  CLI::App* pd = app.add_subcommand("pairdist", "pair-distinguishing task report");
  pd->add_option("--N", pd_ns, "numbers of inputs (2..8)");
  pd->add_option("--dim", pd_dim, "see-saw / embedding dimension");
  pd->add_option("--seed", pd_seed, "base seed for the see-saw restarts");
  pd->add_option("--grid", pd_grid, "success grid lo:hi:step for the sweep rows");
  attach_common(pd, pd_common);

  // hadamard
  std::vector<int> hd_ds = {2, 4, 6, 8, 1124, 1128, 32768};
  CommonOpts hd_common;
  CLI::App* hd = app.add_subcommand("hadamard", "sign-vector equality ratio table");
  hd->add_option("--d", hd_ds, "vector dimensions");
  attach_common(hd, hd_common);

  // obs3
  CommonOpts obs_common;
  CLI::App* obs = app.add_subcommand("obs3", "noisy qubit code report");
  attach_common(obs, obs_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rac->parsed()) {
      emit(distcc::run_rac_sweep(rac_n, rac_d, distcc::parse_grid(rac_grid),
                                 rac_dim < 0 ? rac_d : rac_dim, rac_levels,
                                 rac_seed),
           rac_common);
    } else if (gs->parsed()) {
      emit(distcc::run_small_graph_scan(distcc::parse_grid(gs_grid), gs_level),
           gs_common);
    } else if (cyc->parsed()) {
      emit(distcc::run_cycle_ratio(cycle_ns), cycle_common);
    } else if (pd->parsed()) {
      emit(distcc::run_pairdist(pd_ns, pd_dim, pd_seed, distcc::parse_grid(pd_grid)),
           pd_common);
    } else if (hd->parsed()) {
      emit(distcc::run_hadamard_ratio(hd_ds), hd_common);
    } else if (obs->parsed()) {
      emit(distcc::run_obs3_comparison(), obs_common);
    }
  } catch (const distcc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == distcc::errc::io_error ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
