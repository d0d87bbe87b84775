#ifndef STLC_CLI_HPP
#define STLC_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stlc/parser.hpp"
#include "stlc/report.hpp"

namespace stlc::cli {

// Exit codes of the check subcommand: 0 when at least one obstruction was
// certified, 3 when every check came back inconclusive, 1 on any error.
inline constexpr int kExitObstruction = 0;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitError = 1;

struct Range {
  int lo = 1, hi = 1;
};

struct CheckOptions {
  std::string file;
  Range k_range{1, 1};
  Range m_range{1, 1};
  bool asymmetric = false;
  Range k_prime_range{1, 1};
  Range m_prime_range{1, 1};
  int length_cap = 8;
  std::optional<std::string> json_path;  // "-" writes to stdout
  std::vector<std::pair<std::string, Rat>> param_overrides;
  bool timings = false;
  int jobs = 0;  // 0 = hardware concurrency
};

int run_check(const CheckOptions& options, std::ostream& out,
              std::ostream& err);

struct BracketsOptions {
  std::string file;
  int max_length = 3;
  bool eval_at_zero = false;
  std::optional<std::string> json_path;
  std::vector<std::pair<std::string, Rat>> param_overrides;
};

int run_brackets(const BracketsOptions& options, std::ostream& out,
                 std::ostream& err);

struct SimulateOptions {
  std::string file;
  std::string controls_file;
  Rat t_end = Rat(0);  // 0 = control horizon
  double rel_tol = 1e-9;
  std::optional<std::string> csv_path;
  std::vector<std::pair<std::string, Rat>> param_overrides;
};

int run_simulate(const SimulateOptions& options, std::ostream& out,
                 std::ostream& err);

struct XiOptions {
  std::string controls_file;
  std::string bracket_spec;
  Rat t = Rat(0);  // 0 = control horizon
};

int run_xi(const XiOptions& options, std::ostream& out, std::ostream& err);

// Shared helper: reads a whole file or throws InvalidParamsError.
std::string read_file(const std::string& path);

std::vector<std::pair<std::string, Rat>> parse_overrides(
    const std::vector<std::string>& assignments);

}  // namespace stlc::cli

#endif
