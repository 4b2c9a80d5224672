#include "psiepi/ontic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace psiepi::ontic {

SphereGrid::SphereGrid(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("SphereGrid: need at least one node");
  nodes_.resize(3, n);
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (std::int64_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double azimuth = golden_angle * static_cast<double>(i);
    nodes_.col(i) = Vector3(r * std::cos(azimuth), r * std::sin(azimuth), z);
  }
  weight_ = 4.0 * kPi / static_cast<double>(n);
}

OnticDensity ks_density(const Vector3& bloch_axis, std::string label) {
  const double norm = bloch_axis.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("ks_density: zero Bloch axis");
  }
  const Vector3 axis = bloch_axis / norm;
  return OnticDensity(
      [axis](const Vector3& lambda) {
        return std::max(0.0, axis.dot(lambda)) / kPi;
      },
      1.0 / kPi, std::move(label));
}

OnticDensity ks_density(const PureState& psi) {
  const Vector3 axis = bloch_vector(psi);
  char label[64];
  std::snprintf(label, sizeof(label), "KS(%.4f,%.4f,%.4f)", axis.x(), axis.y(),
                axis.z());
  return ks_density(axis, label);
}

OnticDensity uniform_density() {
  const double value = 1.0 / (4.0 * kPi);
  return OnticDensity([value](const Vector3&) { return value; }, value,
                      "uniform");
}

ResponseFunction ks_response(const PureState& basis_vector) {
  const Vector3 axis = bloch_vector(basis_vector).normalized();
  return ResponseFunction(2, [axis](int outcome, const Vector3& lambda) {
    const double along = axis.dot(lambda) >= 0.0 ? 1.0 : 0.0;
    return outcome == 0 ? along : 1.0 - along;
  });
}

double response_probability(const ResponseFunction& xi, int outcome,
                            const OnticDensity& mu, const SphereGrid& grid) {
  return grid.integrate([&](const Vector3& lambda) {
    return xi(outcome, lambda) * mu(lambda);
  });
}

double classical_trace_distance(const OnticDensity& mu0,
                                const OnticDensity& mu1,
                                const SphereGrid& grid) {
  return 0.5 * grid.integrate([&](const Vector3& lambda) {
    return std::abs(mu0(lambda) - mu1(lambda));
  });
}

double k_overlap(std::span<const OnticDensity> densities,
                 const SphereGrid& grid) {
  if (densities.size() < 2) {
    throw std::invalid_argument("k_overlap: need at least two densities");
  }
  return grid.integrate([&](const Vector3& lambda) {
    double smallest = std::numeric_limits<double>::infinity();
    for (const OnticDensity& mu : densities) {
      smallest = std::min(smallest, mu(lambda));
    }
    return smallest;
  });
}

namespace {

// 53-bit uniform in [0, 1); portable across standard libraries.
double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Vector3> sample_ontic(const OnticDensity& mu, std::uint64_t seed,
                                  std::int64_t n) {
  if (n < 0) throw std::invalid_argument("sample_ontic: negative sample count");
  std::mt19937_64 rng(seed);
  std::vector<Vector3> samples;
  samples.reserve(static_cast<std::size_t>(n));
  while (std::ssize(samples) < n) {
    const double z = 1.0 - 2.0 * uniform_unit(rng);
    const double azimuth = 2.0 * kPi * uniform_unit(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Vector3 lambda(r * std::cos(azimuth), r * std::sin(azimuth), z);
    if (uniform_unit(rng) * mu.sup_bound() < mu(lambda)) {
      samples.push_back(lambda);
    }
  }
  return samples;
}

}  // namespace psiepi::ontic
