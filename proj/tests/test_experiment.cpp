#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psiepi/experiment.hpp"

using namespace psiepi;
using namespace psiepi::experiment;
using protocol::CrosstalkConfig;
using protocol::MeasurementCircuit;
using protocol::PreparationLabel;
using protocol::ProbabilityMatrix;

namespace {

constexpr std::array<int, 4> kAssignment = {3, 2, 1, 0};

ProbabilityMatrix deterministic_matrix() {
  ProbabilityMatrix m;
  m.entries = Eigen::Matrix4d::Zero();
  for (int r = 0; r < 4; ++r) m.entries(r, r) = 1.0;
  m.outcome_assignment = kAssignment;
  return m;
}

ProbabilityMatrix calibrated_matrix() {
  return protocol::probability_matrix(CrosstalkConfig(0.01), 0.0436,
                                      MeasurementCircuit::hcz);
}

}  // namespace

TEST_CASE("simulate_run: deterministic rows land in one cell") {
  const auto records = simulate_run(deterministic_matrix(), 500, 5);
  for (int r = 0; r < 4; ++r) {
    CHECK(records[r].counts[r] == 500);
    CHECK(records[r].shots == 500);
  }
}

TEST_CASE("simulate_run: ideal matrix never hits the forbidden outcome") {
  const auto matrix =
      protocol::probability_matrix(CrosstalkConfig(0.0), 0.0,
                                   MeasurementCircuit::hcz);
  const auto records = simulate_run(matrix, 10'000, 77);
  for (int r = 0; r < 4; ++r) {
    CHECK(records[r].counts[matrix.outcome_assignment[r]] == 0);
    std::int64_t total = 0;
    for (const auto c : records[r].counts) total += c;
    CHECK(total == 10'000);
  }
}

TEST_CASE("simulate_run: reproducible per seed, rows seeded independently") {
  const auto matrix = calibrated_matrix();
  const auto a = simulate_run(matrix, 2'000, 123);
  const auto b = simulate_run(matrix, 2'000, 123);
  const auto c = simulate_run(matrix, 2'000, 124);
  bool any_difference = false;
  for (int r = 0; r < 4; ++r) {
    CHECK(a[r].counts == b[r].counts);
    CHECK(a[r].seed == b[r].seed);
    any_difference = any_difference || a[r].counts != c[r].counts;
  }
  CHECK(any_difference);
  CHECK(a[0].seed != a[1].seed);

  CHECK_THROWS_AS(simulate_run(matrix, 0, 1), std::invalid_argument);
}

TEST_CASE("simulate_run: empirical rates track the matrix (binomial coverage)") {
  const auto matrix = calibrated_matrix();
  const Eigen::Vector4d truth = protocol::forbidden_probabilities(matrix);
  const double true_mean = truth.mean();
  const std::int64_t shots = 10'000;

  int seeds_with_mean_within_2sigma = 0;
  for (std::uint64_t seed = 300; seed < 400; ++seed) {
    const auto records = simulate_run(matrix, shots, seed);
    const auto estimate = estimate_epsilons(records, matrix.outcome_assignment);
    double mean = 0.0;
    double mean_var = 0.0;
    for (int r = 0; r < 4; ++r) {
      const double sigma =
          std::sqrt(truth(r) * (1.0 - truth(r)) / static_cast<double>(shots));
      CHECK(std::abs(estimate.eps[r] - truth(r)) <= 4.0 * sigma);
      mean += estimate.eps[r] / 4.0;
      mean_var += sigma * sigma / 16.0;
    }
    if (std::abs(mean - true_mean) <= 2.0 * std::sqrt(mean_var)) {
      ++seeds_with_mean_within_2sigma;
    }
  }
  CHECK(seeds_with_mean_within_2sigma >= 95);
}

TEST_CASE("simulate_run: aggregated chi-square goodness of fit") {
  const auto matrix = calibrated_matrix();
  const std::int64_t shots = 100'000;
  double chi_square = 0.0;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    const auto records = simulate_run(matrix, shots, seed);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const double expected =
            matrix.entries(r, c) * static_cast<double>(shots);
        const double observed = static_cast<double>(records[r].counts[c]);
        chi_square += (observed - expected) * (observed - expected) / expected;
      }
    }
  }
  // 100 runs x 4 rows x 3 dof = 1200 dof; 0.999 quantile = 1357.106.
  CHECK(chi_square < 1357.106);
  CHECK(chi_square > 1000.0);
}

TEST_CASE("estimate_epsilons: binomial errors and the zero-count rule") {
  std::array<ShotRecord, 4> records{};
  for (int r = 0; r < 4; ++r) {
    records[r].label = protocol::kAllLabels[r];
    records[r].shots = 10'000;
    records[r].counts = {0, 0, 0, 0};
    records[r].counts[static_cast<std::size_t>(kAssignment[r])] = 114;
    records[r].counts[kAssignment[r] == 0 ? 1 : 0] = 10'000 - 114;
  }

  const auto estimate = estimate_epsilons(records, kAssignment);
  for (int r = 0; r < 4; ++r) {
    CHECK(estimate.eps[r] == doctest::Approx(0.0114).epsilon(1e-12));
    CHECK(estimate.eps_err[r] == doctest::Approx(0.00106).epsilon(2e-3));
    CHECK(estimate.eps_err[r] ==
          doctest::Approx(std::sqrt(0.0114 * 0.9886 / 10'000)).epsilon(1e-12));
  }

  // A zero count degenerates the binomial formula; the Wilson width steps in.
  std::array<ShotRecord, 4> clean = records;
  clean[0].counts = {10'000, 0, 0, 0};
  const auto with_zero = estimate_epsilons(clean, kAssignment);
  CHECK(with_zero.eps[0] == 0.0);
  CHECK(with_zero.eps_err[0] ==
        doctest::Approx(wilson_half_width_68(10'000)).epsilon(1e-12));
  CHECK(wilson_half_width_68(10'000) ==
        doctest::Approx(1.0 / (2.0 * 10'001.0)).epsilon(1e-12));

  // Each label must appear exactly once.
  std::array<ShotRecord, 4> broken = records;
  broken[1].label = PreparationLabel::p00;
  CHECK_THROWS_AS(estimate_epsilons(broken, kAssignment),
                  std::invalid_argument);
}

TEST_CASE("analyze: published summary statistics") {
  const std::array<double, 4> eps = {0.0188, 0.0104, 0.006, 0.0104};
  const std::array<double, 4> err = {0.005, 0.001, 0.0008, 0.005};

  const AnalysisResult plain = analyze(eps, err, 0.01);
  CHECK(plain.epsilon.mean == doctest::Approx(0.0114).epsilon(1e-12));
  // Quadrature propagation of the published errors gives ~0.18%, not 0.15%.
  CHECK(plain.epsilon.mean_err_propagated ==
        doctest::Approx(0.0017965).epsilon(1e-4));
  CHECK(plain.epsilon.mean_err == plain.epsilon.mean_err_propagated);
  CHECK_FALSE(plain.epsilon.mean_err_override.has_value());

  const AnalysisResult overridden = analyze(eps, err, 0.01, 0.0015);
  CHECK(overridden.epsilon.mean_err == doctest::Approx(0.0015));
  // The propagated value is still reported alongside the override.
  CHECK(overridden.epsilon.mean_err_propagated ==
        doctest::Approx(0.0017965).epsilon(1e-4));
  CHECK(overridden.epsilon.sigma_defined);
  CHECK(overridden.epsilon.sigma_distance >= 4.5);
  CHECK(overridden.epsilon.sigma_distance ==
        doctest::Approx(4.611).epsilon(1e-3));
  CHECK(overridden.epsilon.tail_probability < 1e-5);
  CHECK(overridden.epsilon.tail_probability ==
        doctest::Approx(2.0e-6).epsilon(0.1));

  CHECK(overridden.bound.violated);
  CHECK(overridden.bound.epsilon_mean == doctest::Approx(0.0114));
  CHECK(overridden.bound.rhs == doctest::Approx(0.78646).epsilon(1e-5));
}

TEST_CASE("analyze: permutation invariance and purity") {
  const std::array<double, 4> eps = {0.0188, 0.0104, 0.006, 0.0104};
  const std::array<double, 4> err = {0.005, 0.001, 0.0008, 0.005};
  const std::array<double, 4> eps_perm = {0.0104, 0.006, 0.0104, 0.0188};
  const std::array<double, 4> err_perm = {0.001, 0.0008, 0.005, 0.005};

  const auto a = analyze(eps, err, 0.01);
  const auto b = analyze(eps_perm, err_perm, 0.01);
  CHECK(a.epsilon.mean == doctest::Approx(b.epsilon.mean).epsilon(1e-15));
  CHECK(a.epsilon.mean_err ==
        doctest::Approx(b.epsilon.mean_err).epsilon(1e-15));
  CHECK(a.epsilon.sigma_distance ==
        doctest::Approx(b.epsilon.sigma_distance).epsilon(1e-12));

  const auto again = analyze(eps, err, 0.01);
  CHECK(again.epsilon.sigma_distance == a.epsilon.sigma_distance);
  CHECK(again.epsilon.tail_probability == a.epsilon.tail_probability);
}

TEST_CASE("analyze: edge cases") {
  const double threshold = bounds::epsilon_threshold(0.01);

  // Mean exactly at the threshold: zero sigma, tail one half.
  const std::array<double, 4> at = {threshold, threshold, threshold, threshold};
  const auto tight = analyze(at, {0.001, 0.001, 0.001, 0.001}, 0.01);
  CHECK(tight.epsilon.sigma_distance == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tight.epsilon.tail_probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_FALSE(tight.bound.violated);

  // A vacuous bound is not violated.
  const auto vacuous =
      analyze({0.25, 0.25, 0.25, 0.25}, {0.01, 0.01, 0.01, 0.01}, 0.01);
  CHECK(vacuous.bound.rhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(vacuous.bound.violated);

  // All errors zero: sigma distance is undefined, and flagged as such.
  const auto degenerate = analyze({0, 0, 0, 0}, {0, 0, 0, 0}, 0.01);
  CHECK_FALSE(degenerate.epsilon.sigma_defined);

  CHECK_THROWS_AS(analyze({1.5, 0, 0, 0}, {0, 0, 0, 0}, 0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(analyze({0, 0, 0, 0}, {2, 0, 0, 0}, 0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(analyze({0, 0, 0, 0}, {0, 0, 0, 0}, 0.01, -1.0),
                  std::invalid_argument);
}

TEST_CASE("normal upper tail") {
  CHECK(normal_upper_tail(0.0) == doctest::Approx(0.5));
  CHECK(normal_upper_tail(1.96) == doctest::Approx(0.0249979).epsilon(1e-4));
  CHECK(normal_upper_tail(4.5) == doctest::Approx(3.4e-6).epsilon(0.02));
}
