// Finite-statistics simulation and analysis: multinomial shot sampling of the
// outcome-probability matrix, forbidden-rate estimation with projection-noise
// error bars, and the sigma-distance of the measured mean to the epsilon
// threshold.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "psiepi/bounds.hpp"
#include "psiepi/protocol.hpp"

namespace psiepi::experiment {

struct ShotRecord {
  protocol::PreparationLabel label{};
  std::int64_t shots = 0;
  std::array<std::int64_t, 4> counts{};  // per outcome column; sums to shots
  std::uint64_t seed = 0;                // the row's derived sampling seed
};

/// Multinomial sampling of each matrix row; deterministic per seed (each row
/// samples with its own seed derived from the master one).
std::array<ShotRecord, 4> simulate_run(const protocol::ProbabilityMatrix& matrix,
                                       std::int64_t shots, std::uint64_t seed);

struct EpsilonEstimate {
  std::array<double, 4> eps{};
  std::array<double, 4> eps_err{};
};

/// Forbidden-outcome rates and their projection-noise errors. A zero count
/// gets the 68% Wilson-interval half-width instead of the degenerate binomial
/// formula.
EpsilonEstimate estimate_epsilons(std::span<const ShotRecord> records,
                                  const std::array<int, 4>& outcome_assignment);

double wilson_half_width_68(std::int64_t shots);

/// One-sided standard normal tail probability.
double normal_upper_tail(double z);

struct EpsilonReport {
  std::array<double, 4> eps{};
  std::array<double, 4> eps_err{};
  double mean = 0.0;
  double mean_err_propagated = 0.0;  // (1/4) sqrt(sum err_k^2), always reported
  std::optional<double> mean_err_override;
  double mean_err = 0.0;  // override when supplied, propagated otherwise
  double threshold = 0.0;
  bool sigma_defined = false;  // false when mean_err == 0
  double sigma_distance = 0.0; // (threshold - mean) / mean_err
  double tail_probability = 0.0;
};

struct AnalysisResult {
  EpsilonReport epsilon;
  bounds::BoundReport bound;
};

/// Mean, propagated error, threshold at the given crosstalk, sigma distance
/// and normal tail. A user-supplied mean error is used for the sigma distance
/// but never replaces the propagated value in the report.
AnalysisResult analyze(const std::array<double, 4>& eps,
                       const std::array<double, 4>& eps_err, double kappa,
                       std::optional<double> mean_err_override = {});

}  // namespace psiepi::experiment
