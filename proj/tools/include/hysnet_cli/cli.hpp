#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hysnet/hysteresis.hpp"
#include "hysnet/network.hpp"

namespace hysnet::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kSolverError = 2,
  kHorizonViolation = 3,
  kCheckFailed = 4,
};

enum class Format { Csv, Json };

struct SimulateOptions {
  double dt_max = 0.0;  ///< largest |dg| per catch-up step, <= 0 for the default
  double tol = 1e-10;   ///< projector tolerance
  Format format = Format::Csv;
};

struct CheckCommandOptions {
  double tol = 1e-9;
  Format format = Format::Csv;
};

struct CompareOptions {
  double dt_max = 0.0;
  double tol = 1e-10;
  bool allow_beyond_saturation = false;
  Format format = Format::Csv;
};

/// Solver and horizon errors propagate as exceptions; run() maps them to
/// exit codes.
int cmd_simulate(const SpringNetwork& net, const Signal& signal, const SimulateOptions& opts, std::ostream& out);
int cmd_check(const SpringNetwork& net, const CheckCommandOptions& opts, std::ostream& out);
int cmd_compare(const SpringNetwork& net, const Signal& signal, const CompareOptions& opts, std::ostream& out,
                std::ostream& err);

/// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hysnet::cli
