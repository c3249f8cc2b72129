#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emknot/knotfield.hpp"
#include "emknot/quadrature.hpp"

namespace emknot::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIdentity = 2, kConvergence = 3 };

struct RunConfig {
  std::string subcommand;  ///< charges, verify or trace
  std::string input;       ///< coefficient file
  std::string preset;      ///< hopfian-tt or hopfian-rot
  std::optional<double> param;
  GridSize grid;
  std::string field = "B";
  double t = 0.0;
  std::string seeds = "shell:1:16";
  double max_arc = 50.0;
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  int workers = 0;
  std::uint64_t seed = 20240611;
  std::vector<std::string> suites;
};

/// Throws DomainError on grid sizes below 8, unknown subcommand, preset,
/// format or field, and on conflicting or missing inputs.
void validate(const RunConfig& cfg);

/// "64,32,64" -> GridSize. Throws DomainError.
GridSize parse_grid(const std::string& s);

/// Coefficients from --in or --preset.
std::vector<ModeCoefficients> load_input(const RunConfig& cfg);

int cmd_charges(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_trace(const RunConfig& cfg, std::ostream& log);

/// Validates and dispatches; maps exceptions to kUsage.
int run(const RunConfig& cfg, std::ostream& log);

/// Full command line entry point.
int main_entry(int argc, char** argv, std::ostream& log);

}  // namespace emknot::cli
