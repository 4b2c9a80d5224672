// Command implementations behind the command-line tool: each returns an exit
// code plus the machine-readable JSON document printed by the binary.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psiepi/protocol.hpp"

namespace psiepi::cli {

struct RunConfig {
  double kappa = 0.01;
  double noise_p = 0.0;
  std::int64_t shots = 10000;
  std::uint64_t seed = 1;
  std::int64_t grid_resolution = 2'000'000;
  protocol::MeasurementCircuit circuit = protocol::MeasurementCircuit::hcz;
};

/// Depolarizing strength at which a kappa = 0.01 simulation lands near a 1.1%
/// mean forbidden rate; the `simulate` subcommand defaults to it.
inline constexpr double kCalibratedNoiseP = 0.0436;

inline constexpr int kExitOk = 0;
inline constexpr int kExitProtocolFailure = 2;
inline constexpr int kExitConfigError = 3;

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json output;
  std::string csv;  // filled by cmd_simulate only
};

/// Prints the outcome-probability matrix, the forbidden-outcome assignment and
/// the maximum forbidden probability at ideal parameters; exit 2 when the
/// zero pattern is not a bijection.
CommandResult cmd_verify_protocol(const RunConfig& config, double alpha = kPi,
                                  double beta = 0.0);

/// The three quantum trace distances, their sum and the epsilon threshold.
CommandResult cmd_threshold(const RunConfig& config);

/// Probability matrix -> shot sampling -> epsilon and bound reports, plus a
/// plot-ready CSV of per-outcome frequencies.
CommandResult cmd_simulate(const RunConfig& config);

/// Analysis of externally supplied forbidden rates and errors.
CommandResult cmd_analyze(const std::array<double, 4>& eps,
                          const std::array<double, 4>& eps_err, double kappa,
                          std::optional<double> mean_err_override = {});

/// Classical vs quantum trace distance of the Kochen-Specker model at the
/// given Bloch angles.
CommandResult cmd_ksmodel(const std::vector<double>& angles,
                          std::int64_t grid_resolution);

}  // namespace psiepi::cli
