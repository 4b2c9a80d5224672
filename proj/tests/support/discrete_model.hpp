// Exhaustive finite-ontic-space mirror of the overlap machinery, used as an
// independent oracle for the quadrature path: densities are plain vectors on a
// small Lambda, two-copy products are outer products on Lambda x Lambda, and
// every overlap/trace-distance/inequality is evaluated by direct enumeration.

#pragma once

#include <Eigen/Dense>

#include <random>
#include <span>
#include <vector>

namespace discrete_model {

using Density = Eigen::VectorXd;

inline Density random_density(std::mt19937_64& rng, Eigen::Index size) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Density d(size);
  for (Eigen::Index i = 0; i < size; ++i) d(i) = uniform(rng);
  return d / d.sum();
}

inline double overlap(std::span<const Density> densities) {
  const Eigen::Index n = densities.front().size();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double smallest = densities.front()(i);
    for (const Density& d : densities) smallest = std::min(smallest, d(i));
    total += smallest;
  }
  return total;
}

inline double trace_distance(const Density& a, const Density& b) {
  return 0.5 * (a - b).cwiseAbs().sum();
}

/// Joint distribution mu_a(x) * mu_b(y) on Lambda x Lambda, flattened.
inline Density product_density(const Density& a, const Density& b) {
  const Eigen::Index n = a.size();
  Density joint(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) joint(i * n + j) = a(i) * b(j);
  }
  return joint;
}

/// Random response functions over a joint space: four nonnegative outcome
/// weights at every point, normalized to sum to one.
inline std::array<Density, 4> random_response(std::mt19937_64& rng,
                                              Eigen::Index size) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::array<Density, 4> xi;
  for (auto& d : xi) d = Density(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    double total = 0.0;
    for (auto& d : xi) {
      d(i) = uniform(rng) + 1e-12;
      total += d(i);
    }
    for (auto& d : xi) d(i) /= total;
  }
  return xi;
}

struct ChainResult {
  double joint_overlap = 0.0;
  double single_overlap = 0.0;
  std::array<double, 3> pair_overlaps{};
  double distance_sum = 0.0;
  double epsilon_mean = 0.0;
};

/// Full two-copy inequality chain on one density quadruple, with observed
/// "forbidden" probabilities generated by random response functions.
inline ChainResult evaluate_chain(const Density& mu0, const Density& mu0p,
                                  const Density& mu1, const Density& mu1p,
                                  std::mt19937_64& rng) {
  ChainResult result;

  const std::array<Density, 4> joint = {
      product_density(mu0, mu0), product_density(mu0p, mu1),
      product_density(mu1, mu0p), product_density(mu1p, mu1p)};
  result.joint_overlap = overlap(joint);

  const std::array<Density, 4> singles = {mu0, mu0p, mu1, mu1p};
  result.single_overlap = overlap(singles);

  const std::array<Density, 2> p01 = {mu0, mu1};
  const std::array<Density, 2> p00p = {mu0, mu0p};
  const std::array<Density, 2> p11p = {mu1, mu1p};
  result.pair_overlaps = {overlap(p01), overlap(p00p), overlap(p11p)};

  result.distance_sum = trace_distance(mu0, mu1) + trace_distance(mu0, mu0p) +
                        trace_distance(mu1, mu1p);

  const auto xi = random_response(rng, joint.front().size());
  double epsilon_total = 0.0;
  for (int k = 0; k < 4; ++k) epsilon_total += xi[k].dot(joint[k]);
  result.epsilon_mean = epsilon_total / 4.0;

  return result;
}

}  // namespace discrete_model
