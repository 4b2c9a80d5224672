// Ontological-model machinery over the Bloch sphere: closed-form ontic
// densities mu_psi(lambda), deterministic response functions xi(k|M,lambda),
// classical trace distance and k-overlaps by spherical quadrature, rejection
// sampling, and the Kochen-Specker psi-epistemic qubit model.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "psiepi/quantum.hpp"

namespace psiepi::ontic {

using Vector3 = Eigen::Vector3d;

/// Fibonacci-sphere quadrature: n nodes, equal weights 4*pi/n. A constant
/// function integrates exactly; accuracy for other integrands is a property of
/// n, not of the densities (which stay closed-form).
class SphereGrid {
 public:
  explicit SphereGrid(std::int64_t n);

  std::int64_t size() const { return nodes_.cols(); }
  double weight() const { return weight_; }
  const Eigen::Matrix3Xd& nodes() const { return nodes_; }

  /// Deterministic quadrature sum: accumulation runs over a fixed shard
  /// structure in index order, so results do not depend on how (or whether)
  /// shards are distributed over workers.
  template <typename F>
  double integrate(F&& f) const {
    constexpr std::int64_t kShards = 64;
    const std::int64_t n = size();
    const std::int64_t per_shard = (n + kShards - 1) / kShards;
    double total = 0.0;
    for (std::int64_t shard = 0; shard < kShards; ++shard) {
      const std::int64_t begin = shard * per_shard;
      const std::int64_t end = std::min(n, begin + per_shard);
      double partial = 0.0;
      for (std::int64_t i = begin; i < end; ++i) {
        partial += f(Vector3(nodes_.col(i)));
      }
      total += partial;
    }
    return weight_ * total;
  }

 private:
  Eigen::Matrix3Xd nodes_;
  double weight_;
};

/// A normalized probability density over the Bloch sphere, represented as a
/// closed-form evaluable function together with its supremum (needed for
/// rejection sampling) and the label of the quantum state it belongs to.
class OnticDensity {
 public:
  using Fn = std::function<double(const Vector3&)>;

  OnticDensity(Fn density, double sup_bound, std::string label)
      : density_(std::move(density)),
        sup_bound_(sup_bound),
        label_(std::move(label)) {
    if (!density_) throw std::invalid_argument("OnticDensity: empty function");
    if (!(sup_bound_ > 0.0)) {
      throw std::invalid_argument("OnticDensity: sup bound must be positive");
    }
  }

  double operator()(const Vector3& lambda) const { return density_(lambda); }
  double sup_bound() const { return sup_bound_; }
  const std::string& label() const { return label_; }

 private:
  Fn density_;
  double sup_bound_;
  std::string label_;
};

/// xi(k | M, lambda) for a fixed measurement M with outcomes 0..n-1; sums to 1
/// at every lambda.
class ResponseFunction {
 public:
  using Fn = std::function<double(int, const Vector3&)>;

  ResponseFunction(int num_outcomes, Fn xi)
      : num_outcomes_(num_outcomes), xi_(std::move(xi)) {
    if (num_outcomes_ < 2) {
      throw std::invalid_argument("ResponseFunction: need at least 2 outcomes");
    }
    if (!xi_) throw std::invalid_argument("ResponseFunction: empty function");
  }

  double operator()(int outcome, const Vector3& lambda) const {
    if (outcome < 0 || outcome >= num_outcomes_) {
      throw std::out_of_range("ResponseFunction: outcome out of range");
    }
    return xi_(outcome, lambda);
  }

  int num_outcomes() const { return num_outcomes_; }

 private:
  int num_outcomes_;
  Fn xi_;
};

/// Kochen-Specker density mu_psi(lambda) = (1/pi) (b . lambda) Theta(b . lambda)
/// with b the Bloch vector of psi; supported on the hemisphere around b.
OnticDensity ks_density(const PureState& psi);

/// Same construction from a Bloch axis directly.
OnticDensity ks_density(const Vector3& bloch_axis, std::string label = "KS");

/// The uniform density 1/(4*pi).
OnticDensity uniform_density();

/// Deterministic hemisphere rule for the projective measurement along the
/// Bloch axis of `basis_vector`: outcome 0 fires iff n . lambda >= 0 (the
/// measure-zero equator tie breaks toward the first outcome).
ResponseFunction ks_response(const PureState& basis_vector);

/// integral of xi(outcome | lambda) mu(lambda) over the sphere.
double response_probability(const ResponseFunction& xi, int outcome,
                            const OnticDensity& mu, const SphereGrid& grid);

/// D = (1/2) integral |mu0 - mu1|.
double classical_trace_distance(const OnticDensity& mu0,
                                const OnticDensity& mu1,
                                const SphereGrid& grid);

/// k-overlap omega = integral of min_i mu_i; requires at least two densities.
double k_overlap(std::span<const OnticDensity> densities,
                 const SphereGrid& grid);

/// Rejection sampling from the closed-form density; deterministic per
/// (seed, n).
std::vector<Vector3> sample_ontic(const OnticDensity& mu, std::uint64_t seed,
                                  std::int64_t n);

}  // namespace psiepi::ontic
