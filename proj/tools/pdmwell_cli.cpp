// pdmwell: eigenstates, information measures and complexities of a
// position-dependent-mass particle in an infinite well.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid configuration,
// 3 numerical failure (non-convergence or non-finite values).

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdmwell/report.hpp"
#include "pdmwell/verify.hpp"

namespace {

using namespace pdmwell;
using namespace pdmwell::report;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInvalidConfig = 2, kNumerical = 3 };

struct Flags {
  std::vector<int> n;
  std::vector<double> gamma_a;
  std::string gamma_a_range;
  std::vector<std::string> space;
  std::vector<std::string> quantity;
  int grid = 1001;
  double tol = 1e-6;
  double k_max = 30.0;
  std::string format = "csv";
  std::string out;
  std::string method = "closed";
  bool entropy_density = false;
  int figure_id = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "Quantum numbers, comma separated")->delimiter(',');
  cmd->add_option("--gamma-a", f.gamma_a, "Deformations gamma*a in (-1,1), comma separated")
      ->delimiter(',');
  cmd->add_option("--space", f.space, "Spaces: x, k, eta")->delimiter(',');
  cmd->add_option("--grid", f.grid, "Grid points per series");
  cmd->add_option("--k-max", f.k_max, "Half-width of the k grid");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", f.out, "Output file (default stdout)");
}

RunConfig to_config(Command command, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  cfg.n_list = f.n;
  cfg.gamma_a_list = f.gamma_a;
  if (!f.gamma_a_range.empty()) {
    if (!f.gamma_a.empty()) throw InvalidConfig("give either --gamma-a or --gamma-a-range");
    cfg.gamma_a_list = parse_range(f.gamma_a_range);
  }
  for (const auto& s : f.space) cfg.space_list.push_back(parse_space(s));
  if (!f.quantity.empty()) cfg.quantities = f.quantity;
  cfg.grid_points = f.grid;
  cfg.tol = f.tol;
  cfg.k_max = f.k_max;
  cfg.format = f.format == "json" ? Format::json : Format::csv;
  if (!f.out.empty()) cfg.output_path = f.out;
  cfg.method = f.method == "numeric" ? Method::numeric : Method::closed;
  cfg.entropy_density = f.entropy_density;
  cfg.figure_id = f.figure_id;
  cfg.validate();
  return cfg;
}

void emit(const Table& t, const RunConfig& cfg) {
  if (!cfg.output_path) {
    write_table(t, cfg.format, std::cout);
    return;
  }
  std::ofstream file(*cfg.output_path, std::ios::binary);
  if (!file) throw InvalidConfig("cannot open output file " + *cfg.output_path);
  write_table(t, cfg.format, file);
  if (!file) throw InvalidConfig("failed writing " + *cfg.output_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information measures and complexities of a position-dependent-mass particle "
               "in an infinite well"};
  app.require_subcommand(1);
  Flags f;

  auto* eig = app.add_subcommand("eigenstate", "Wavefunctions and densities on a grid");
  add_common(eig, f);

  auto* meas = app.add_subcommand("measures", "Shannon, Fisher, disequilibrium and lengths");
  add_common(meas, f);
  meas->add_option("--method", f.method, "closed or numeric")
      ->check(CLI::IsMember({"closed", "numeric"}));
  meas->add_flag("--entropy-density", f.entropy_density, "Emit entropy-density profiles instead");

  auto* sweep = app.add_subcommand("sweep", "Complexities over a range of gamma*a");
  add_common(sweep, f);
  sweep->add_option("--gamma-a-range", f.gamma_a_range, "MIN:MAX:STEPS, inclusive");
  sweep->add_option("--quantity", f.quantity, "ccr, cfs, clmc")->delimiter(',');

  auto* fig = app.add_subcommand("figure", "Data series of figures 1-4");
  add_common(fig, f);
  fig->add_option("--id", f.figure_id, "Figure number")->required();
  fig->add_option("--gamma-a-range", f.gamma_a_range, "MIN:MAX:STEPS, inclusive");
  fig->add_option("--quantity", f.quantity, "ccr, cfs, clmc")->delimiter(',');

  auto* ver = app.add_subcommand("verify", "Run the self-verification suite");
  ver->add_option("--tol", f.tol, "Tolerance of the oracle-equivalence checks");
  ver->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  ver->add_option("--out", f.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*eig) {
      const RunConfig cfg = to_config(Command::eigenstate, f);
      emit(cmd_eigenstate(cfg), cfg);
    } else if (*meas) {
      const RunConfig cfg = to_config(Command::measures, f);
      emit(cmd_measures(cfg), cfg);
    } else if (*sweep) {
      const RunConfig cfg = to_config(Command::sweep, f);
      emit(cmd_sweep(cfg), cfg);
    } else if (*fig) {
      const RunConfig cfg = to_config(Command::figure, f);
      emit(cmd_figure(cfg), cfg);
    } else if (*ver) {
      const RunConfig cfg = to_config(Command::verify, f);
      const VerifyReport r = run_verify(cfg.tol);
      emit(r.table(), cfg);
      return r.passed() ? kOk : kVerifyFailed;
    }
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
