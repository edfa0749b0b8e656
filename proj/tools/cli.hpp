#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bebound::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_numeric = 2,
  exit_audit = 3,
};

struct RunConfig {
  std::string command;
  std::string dist;
  int n = 1;
  int k = 3;
  double p = 2.0;
  std::optional<double> T;
  std::optional<double> c_T;
  std::optional<double> x;
  std::string x_grid;
  std::string t_grid;
  double tol = 1e-9;
  std::string format = "json";
  std::string mode = "exact-abs";
  double c_nu = 4.5;
  bool raw = false;
};

/// start:stop:step, stop included when it lies on the grid.
std::vector<double> parse_grid(const std::string& spec);

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bebound::cli
