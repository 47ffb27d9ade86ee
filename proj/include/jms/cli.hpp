#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jms/error.hpp"

namespace jms::cli {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  int ell = 0;
  double lambda = 1.0;
  double eta = 0.5;
  std::vector<double> omega_diag;
  std::vector<double> omega_off;
  std::optional<double> e_min;
  std::optional<double> e_max;
  std::optional<int> points;
  std::string output_path;  ///< empty means standard output
  std::uint64_t seed = 1;
  int samples = 500;
  int max_rank = 3;
  std::string method = "linear";  ///< smatrix only: linear | closed
};

const std::vector<std::string>& commands();

/// Parses `command [--flag value]...`. A `--config` file is read first and
/// explicit flags override it.
RunConfig parse_config(const std::vector<std::string>& args);

/// Runs the command, writing CSV (or the validate report) to the configured
/// output. Returns 0 on success, 1 on usage or I/O errors, 2 on numerical
/// failure. Diagnostics go to `log`.
int run_and_emit(const RunConfig& config, std::ostream& log);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

std::string usage();

}  // namespace jms::cli
