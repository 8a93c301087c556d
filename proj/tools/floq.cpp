#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "floq/errors.hpp"
#include "floq/experiments.hpp"
#include "floq/kernels.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw floq::ValidationError("cannot read config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::pair<double, double>> parse_grid(const std::string& text) {
  std::vector<std::pair<double, double>> grid;
  std::istringstream is(text);
  std::string pair_tok;
  while (std::getline(is, pair_tok, ';')) {
    const auto comma = pair_tok.find(',');
    if (comma == std::string::npos) {
      throw floq::ValidationError("lambda grid expects 'a,b' pairs separated by ';'");
    }
    grid.emplace_back(std::stod(pair_tok.substr(0, comma)),
                      std::stod(pair_tok.substr(comma + 1)));
  }
  if (grid.empty()) throw floq::ValidationError("lambda grid is empty");
  return grid;
}

int run(int argc, char** argv) {
  CLI::App app{"floq: dual-drive spin-ladder dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_dir, grid_text;
  int order = -1;

  auto* evolve = app.add_subcommand("evolve", "propagate a trajectory and write CSV");
  evolve->add_option("--config", config_path, "config file")->required();
  evolve->add_option("--out", out_dir, "output directory");

  auto* sym = app.add_subcommand("symmetry-check", "audit the drive's symmetry relations");
  sym->add_option("--config", config_path, "config file")->required();
  sym->add_option("--out", out_dir, "output directory (optional)");

  auto* vv = app.add_subcommand("vanvleck-verify", "verify the effective-Hamiltonian expansion");
  vv->add_option("--config", config_path, "config file")->required();
  vv->add_option("--order", order, "expansion order 0..2")->check(CLI::Range(0, 2));
  vv->add_option("--out", out_dir, "output directory (optional)");

  auto* sweep = app.add_subcommand("sweep", "evolve over a grid of center-bond scales");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--lambda-grid", grid_text, "pairs 'a,b;a,b;...'");
  sweep->add_option("--out", out_dir, "output directory");

  app.parse(argc, argv);

  floq::RunSpec spec = floq::parse_config(read_file(config_path));
  if (evolve->parsed()) spec.mode = floq::RunMode::evolve;
  if (sym->parsed()) spec.mode = floq::RunMode::symmetry_check;
  if (vv->parsed()) {
    spec.mode = floq::RunMode::vanvleck_verify;
    if (order >= 0) spec.vanvleck_order = order;
  }
  if (sweep->parsed()) {
    spec.mode = floq::RunMode::sweep;
    if (!grid_text.empty()) spec.lambda_grid = parse_grid(grid_text);
    if (spec.lambda_grid.empty()) {
      throw floq::ValidationError("sweep needs --lambda-grid or run.lambda_grid");
    }
  }
  if (!out_dir.empty()) spec.output_path = out_dir;

  const floq::ExperimentResult result = floq::run_experiment(spec);

  if (spec.mode == floq::RunMode::evolve || spec.mode == floq::RunMode::sweep) {
    floq::emit_results(result, spec.output_path);
    std::cout << "wrote " << spec.output_path << " ("
              << floq::kernels::backend_name(floq::kernels::active_backend())
              << " kernels)\n";
  } else {
    if (!out_dir.empty()) floq::emit_results(result, spec.output_path);
    std::cout << floq::render_report(result);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    return CLI::App{}.exit(e);
  } catch (const floq::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const floq::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
