#include <CLI11.hpp>
#include <iostream>

#include "stlc/cli.hpp"

namespace {

stlc::cli::Range parse_range(const std::string& text) {
  stlc::cli::Range r;
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    r.lo = r.hi = std::stoi(text);
  } else {
    r.lo = std::stoi(text.substr(0, colon));
    r.hi = std::stoi(text.substr(colon + 1));
  }
  if (r.lo < 1 || r.hi < r.lo)
    throw CLI::ValidationError("range must be N or LO:HI with 1 <= LO <= HI");
  return r;
}

stlc::Rat parse_rat_arg(const std::string& text, const std::string& what) {
  auto v = stlc::parse_rational(text);
  if (!v) throw CLI::ValidationError(what + " must be an exact rational");
  return *v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-bracket controllability checks for two-input "
               "control-affine systems"};
  app.require_subcommand(1);

  stlc::cli::CheckOptions check;
  std::string check_k = "1", check_m = "1", check_kp = "1", check_mp = "1";
  std::vector<std::string> check_params;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "Run the obstruction checks over a (k, m) grid");
  check_cmd->add_option("file", check.file, "system file")->required();
  check_cmd->add_option("--k-range", check_k, "k or lo:hi (default 1)");
  check_cmd->add_option("--m-range", check_m, "m or lo:hi (default 1)");
  check_cmd->add_flag("--asym", check.asymmetric,
                      "use the asymmetric bad pair (W_k^1, W_{k'}^2)");
  check_cmd->add_option("--kprime-range", check_kp, "k' or lo:hi");
  check_cmd->add_option("--mprime-range", check_mp, "m' or lo:hi");
  check_cmd->add_option("--length-cap", check.length_cap,
                        "bracket length horizon (default 8)");
  check_cmd->add_option("--json", check.json_path,
                        "write the JSON report here ('-' for stdout)");
  check_cmd->add_option("--param", check_params,
                        "override a parameter, e.g. --param alpha=3/2");
  check_cmd->add_flag("--timings", check.timings,
                      "include wall-clock timings in the report");
  check_cmd->add_option("--jobs", check.jobs, "worker threads (0 = auto)");

  stlc::cli::BracketsOptions brackets;
  std::vector<std::string> brackets_params;
  CLI::App* brackets_cmd = app.add_subcommand(
      "brackets", "List the generated Hall basis for a system");
  brackets_cmd->add_option("file", brackets.file, "system file")->required();
  brackets_cmd->add_option("--max-length", brackets.max_length,
                           "largest bracket length (default 3)");
  brackets_cmd->add_flag("--eval-at-zero", brackets.eval_at_zero,
                         "include f_b(0) for every bracket");
  brackets_cmd->add_option("--json", brackets.json_path, "JSON output path");
  brackets_cmd->add_option("--param", brackets_params, "parameter override");

  stlc::cli::SimulateOptions simulate;
  std::string simulate_t = "0";
  std::vector<std::string> simulate_params;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Integrate the controlled system");
  simulate_cmd->add_option("file", simulate.file, "system file")->required();
  simulate_cmd->add_option("--controls", simulate.controls_file,
                           "control file")->required();
  simulate_cmd->add_option("--t", simulate_t,
                           "end time (rational; default: control horizon)");
  simulate_cmd->add_option("--rel-tol", simulate.rel_tol,
                           "integrator tolerance (default 1e-9)");
  simulate_cmd->add_option("--csv", simulate.csv_path,
                           "write the trajectory as CSV");
  simulate_cmd->add_option("--param", simulate_params, "parameter override");

  stlc::cli::XiOptions xi;
  std::string xi_t = "0";
  CLI::App* xi_cmd = app.add_subcommand(
      "xi", "Evaluate a second-kind coordinate of a control pair");
  xi_cmd->add_option("--controls", xi.controls_file, "control file")
      ->required();
  xi_cmd->add_option("--bracket", xi.bracket_spec,
                     "bracket spec: 'X0', 'W1 j=1 l=0' or a raw tree")
      ->required();
  xi_cmd->add_option("--t", xi_t, "time (rational; default: horizon)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check_cmd->parsed()) {
      check.k_range = parse_range(check_k);
      check.m_range = parse_range(check_m);
      check.k_prime_range = parse_range(check_kp);
      check.m_prime_range = parse_range(check_mp);
      check.param_overrides = stlc::cli::parse_overrides(check_params);
      return stlc::cli::run_check(check, std::cout, std::cerr);
    }
    if (brackets_cmd->parsed()) {
      brackets.param_overrides = stlc::cli::parse_overrides(brackets_params);
      return stlc::cli::run_brackets(brackets, std::cout, std::cerr);
    }
    if (simulate_cmd->parsed()) {
      simulate.t_end = parse_rat_arg(simulate_t, "--t");
      simulate.param_overrides = stlc::cli::parse_overrides(simulate_params);
      return stlc::cli::run_simulate(simulate, std::cout, std::cerr);
    }
    if (xi_cmd->parsed()) {
      xi.t = parse_rat_arg(xi_t, "--t");
      return stlc::cli::run_xi(xi, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return stlc::cli::kExitError;
  }
  return stlc::cli::kExitError;
}
