#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crinv/commands.hpp"

namespace {

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size() || !(v >= 0.0)) throw std::invalid_argument("bad rho value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty rho grid");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace crinv::cli;
  CLI::App app{"crinv: left-invariant CR structures, Levi forms, divisor-condition scans and dbar_b solves"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string scalar = "exact", grid;
  long long radius = 0;
  double tolerance = 1e-9;
  int workers = 0;
  std::string output;
  app.add_flag("--json", as_json, "Print the report as JSON");
  app.add_option("--scalar", scalar, "Scalar realization for torus data")
      ->check(CLI::IsMember({"exact", "float", "surd"}));
  app.add_option("--radius", radius, "DC scan radius (sup norm)")->check(CLI::PositiveNumber);
  app.add_option("--rho-grid", grid, "Comma-separated candidate exponents");
  app.add_option("--tolerance", tolerance, "Float roundtrip tolerance for solve")->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Scan threads (0: all cores)")->check(CLI::NonNegativeNumber);
  app.fallthrough();

  std::string file, dir;
  app.add_subcommand("verify-tables", "Recompute the su(4) bracket and eigenvalue tables");
  for (const char* name : {"classify", "leviflat", "dc", "solve", "extend"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("file", file, "Input JSON")->required();
    if (std::string(name) == "solve") sub->add_option("-o,--output", output, "Write the SolveResult JSON here");
  }
  app.get_subcommand("classify")->description("Subalgebra, CR and CR0/CR1 shape report");
  app.get_subcommand("leviflat")->description("Levi-flatness with a witness for non-flat input");
  app.get_subcommand("dc")->description("Divisor-condition lattice scan of a torus structure");
  app.get_subcommand("solve")->description("Solve dbar_b v = u - u(0) frequency by frequency");
  app.get_subcommand("extend")->description("Extend a form on m by zero over an ideal and test closedness");
  auto* fixtures = app.add_subcommand("fixtures", "Fixture utilities");
  fixtures->require_subcommand(1);
  fixtures->add_subcommand("export", "Write every fixture as JSON")->add_option("dir", dir, "Target directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  Options opts;
  RunReport rep;
  try {
    opts.scalar = crinv::parse_scalar_kind(scalar);
    if (radius > 0) opts.radius = radius;
    if (!grid.empty()) opts.rho_grid = parse_grid(grid);
    opts.tolerance = tolerance;
    opts.workers = workers;
    if (!output.empty()) opts.output = output;

    auto* sub = app.get_subcommands().front();
    std::string name = sub->get_name();
    if (name == "verify-tables")
      rep = cmd_verify_tables();
    else if (name == "fixtures")
      rep = cmd_fixtures_export(dir, seed_from_env());
    else
      rep = run_on_file(name, file, opts);
  } catch (const std::exception& e) {
    rep.command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();
    rep.fail_input(e.what());
  }

  if (as_json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.text();
  return rep.exit_status;
}
