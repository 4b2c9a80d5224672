#include "psiepi/experiment.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace psiepi::experiment {

namespace {

// splitmix64; used to derive independent per-row seeds from the master seed.
std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::array<ShotRecord, 4> simulate_run(const protocol::ProbabilityMatrix& matrix,
                                       std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("simulate_run: shots must be >= 1");
  std::array<ShotRecord, 4> records{};
  for (std::size_t row = 0; row < protocol::kAllLabels.size(); ++row) {
    ShotRecord& record = records[row];
    record.label = protocol::kAllLabels[row];
    record.shots = shots;
    record.seed = mix_seed(seed + row);
    std::array<double, 4> cumulative{};
    double acc = 0.0;
    for (int col = 0; col < 4; ++col) {
      acc += std::max(0.0, matrix.entries(static_cast<int>(row), col));
      cumulative[col] = acc;
    }
    std::mt19937_64 rng(record.seed);
    for (std::int64_t shot = 0; shot < shots; ++shot) {
      const double u = uniform_unit(rng) * acc;
      int outcome = 3;
      for (int col = 0; col < 4; ++col) {
        if (u < cumulative[col]) {
          outcome = col;
          break;
        }
      }
      ++record.counts[outcome];
    }
  }
  return records;
}

double wilson_half_width_68(std::int64_t shots) {
  // Wilson interval half-width at p_hat = 0 with z = 1.
  return 1.0 / (2.0 * (static_cast<double>(shots) + 1.0));
}

EpsilonEstimate estimate_epsilons(std::span<const ShotRecord> records,
                                  const std::array<int, 4>& outcome_assignment) {
  EpsilonEstimate estimate;
  std::array<bool, 4> seen{};
  for (const ShotRecord& record : records) {
    const auto row = static_cast<std::size_t>(record.label);
    if (row >= 4 || seen[row]) {
      throw std::invalid_argument("estimate_epsilons: duplicate or bad label");
    }
    seen[row] = true;
    if (record.shots < 1) {
      throw std::invalid_argument("estimate_epsilons: record without shots");
    }
    const double n = static_cast<double>(record.shots);
    const auto forbidden = static_cast<std::size_t>(outcome_assignment[row]);
    const double count = static_cast<double>(record.counts[forbidden]);
    const double p = count / n;
    estimate.eps[row] = p;
    estimate.eps_err[row] = count == 0.0
                                ? wilson_half_width_68(record.shots)
                                : std::sqrt(p * (1.0 - p) / n);
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("estimate_epsilons: missing label");
  }
  return estimate;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

AnalysisResult analyze(const std::array<double, 4>& eps,
                       const std::array<double, 4>& eps_err, double kappa,
                       std::optional<double> mean_err_override) {
  for (int k = 0; k < 4; ++k) {
    if (!(eps[k] >= 0.0 && eps[k] <= 1.0)) {
      throw std::invalid_argument("analyze: eps values must lie in [0, 1]");
    }
    if (!(eps_err[k] >= 0.0 && eps_err[k] <= 1.0)) {
      throw std::invalid_argument("analyze: eps errors must lie in [0, 1]");
    }
  }
  if (mean_err_override && !(*mean_err_override >= 0.0)) {
    throw std::invalid_argument("analyze: mean error override must be >= 0");
  }

  AnalysisResult result;
  EpsilonReport& report = result.epsilon;
  report.eps = eps;
  report.eps_err = eps_err;
  report.mean = (eps[0] + eps[1] + eps[2] + eps[3]) / 4.0;
  double sum_sq = 0.0;
  for (double err : eps_err) sum_sq += err * err;
  report.mean_err_propagated = std::sqrt(sum_sq) / 4.0;
  report.mean_err_override = mean_err_override;
  report.mean_err = mean_err_override.value_or(report.mean_err_propagated);
  report.threshold = bounds::epsilon_threshold(kappa);
  report.sigma_defined = report.mean_err > 0.0;
  if (report.sigma_defined) {
    report.sigma_distance = (report.threshold - report.mean) / report.mean_err;
    report.tail_probability = normal_upper_tail(report.sigma_distance);
  }
  result.bound = bounds::make_bound_report(report.mean, kappa);
  return result;
}

}  // namespace psiepi::experiment
