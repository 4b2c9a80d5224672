#include "psiepi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "psiepi/protocol.hpp"

namespace psiepi::bounds {

double min4_lemma_gap(double a, double b, double c, double d) {
  const double lhs = std::min(std::min(a, b), std::min(c, d));
  const double rhs = std::min(a, b) + std::min(b, c) + std::min(c, d) - b - c;
  return lhs - rhs;
}

double theorem_rhs(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("theorem_rhs: epsilon must lie in [0, 1]");
  }
  return 1.0 - 2.0 * std::sqrt(epsilon);
}

std::array<double, 3> protocol_trace_distances(double kappa) {
  if (!(kappa >= 0.0)) {
    throw std::domain_error("protocol_trace_distances: kappa must be >= 0");
  }
  const PureState p0 = protocol::phi0();
  const PureState p1 = protocol::phi1();
  const PureState p0p = protocol::primed_phi0(kappa);
  const PureState p1p = protocol::primed_phi1(kappa);
  return {quantum_trace_distance(p0, p1), quantum_trace_distance(p0, p0p),
          quantum_trace_distance(p1, p1p)};
}

double quantum_distance_sum(double kappa) {
  const auto d = protocol_trace_distances(kappa);
  return d[0] + d[1] + d[2];
}

double epsilon_threshold(double kappa) {
  const double slack = 1.0 - quantum_distance_sum(kappa);
  if (slack <= 0.0) return 0.0;
  return (slack / 2.0) * (slack / 2.0);
}

BoundReport make_bound_report(double epsilon_mean, double kappa) {
  BoundReport report;
  report.epsilon_mean = epsilon_mean;
  report.rhs = theorem_rhs(epsilon_mean);
  report.quantum_distance_sum = quantum_distance_sum(kappa);
  report.epsilon_threshold = epsilon_threshold(kappa);
  report.violated = report.quantum_distance_sum < report.rhs;
  return report;
}

namespace {

// omega({mu_k}) over Lambda x Lambda for the four product densities
//   mu_A = mu0 x mu0, mu_B = mu0' x mu1, mu_C = mu1 x mu0', mu_D = mu1' x mu1',
// evaluated on the product of a Fibonacci grid with itself. The per-node
// single-density values are precomputed so the double loop is pure arithmetic.
double joint_four_overlap_on(const ontic::SphereGrid& axis_grid,
                             const ontic::OnticDensity& mu0,
                             const ontic::OnticDensity& mu0p,
                             const ontic::OnticDensity& mu1,
                             const ontic::OnticDensity& mu1p) {
  const std::int64_t n = axis_grid.size();
  std::vector<double> v0(n), v0p(n), v1(n), v1p(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const ontic::Vector3 node = axis_grid.nodes().col(i);
    v0[i] = mu0(node);
    v0p[i] = mu0p(node);
    v1[i] = mu1(node);
    v1p[i] = mu1p(node);
  }
  double total = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double a0 = v0[i], a0p = v0p[i], a1 = v1[i], a1p = v1p[i];
    double row = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const double m = std::min(std::min(a0 * v0[j], a0p * v1[j]),
                                std::min(a1 * v0p[j], a1p * v1p[j]));
      row += m;
    }
    total += row;
  }
  return axis_grid.weight() * axis_grid.weight() * total;
}

}  // namespace

OverlapChainReport overlap_chain_check(const ontic::OnticDensity& mu0,
                                       const ontic::OnticDensity& mu0p,
                                       const ontic::OnticDensity& mu1,
                                       const ontic::OnticDensity& mu1p,
                                       const ontic::SphereGrid& grid,
                                       const OverlapChainOptions& options) {
  if (options.joint_nodes_per_axis < 2) {
    throw std::invalid_argument("overlap_chain_check: joint grid too small");
  }
  OverlapChainReport report;

  const std::array<const ontic::OnticDensity*, 2> pairs[3] = {
      {&mu0, &mu1}, {&mu0, &mu0p}, {&mu1, &mu1p}};
  for (int k = 0; k < 3; ++k) {
    const std::array<ontic::OnticDensity, 2> pair = {*pairs[k][0],
                                                     *pairs[k][1]};
    report.pair_overlaps[k] = ontic::k_overlap(pair, grid);
    report.trace_distances[k] =
        ontic::classical_trace_distance(*pairs[k][0], *pairs[k][1], grid);
  }
  report.distance_sum = report.trace_distances[0] + report.trace_distances[1] +
                        report.trace_distances[2];

  const std::array<ontic::OnticDensity, 4> quadruple = {mu0, mu0p, mu1, mu1p};
  report.single_four_overlap = ontic::k_overlap(quadruple, grid);

  const ontic::SphereGrid axis_full(options.joint_nodes_per_axis);
  const ontic::SphereGrid axis_half(options.joint_nodes_per_axis / 2);
  report.joint_four_overlap =
      joint_four_overlap_on(axis_full, mu0, mu0p, mu1, mu1p);
  const double joint_coarse =
      joint_four_overlap_on(axis_half, mu0, mu0p, mu1, mu1p);
  report.quadrature_error_estimate =
      std::abs(report.joint_four_overlap - joint_coarse);
  if (report.quadrature_error_estimate > options.tolerance) {
    throw QuadratureError(
        "overlap_chain_check: joint quadrature did not converge to the "
        "requested tolerance");
  }

  report.product_bound_slack =
      report.joint_four_overlap -
      report.single_four_overlap * report.single_four_overlap;
  report.lemma_slack =
      report.single_four_overlap -
      (report.pair_overlaps[0] + report.pair_overlaps[1] +
       report.pair_overlaps[2] - 2.0);
  report.trace_sum_slack = std::sqrt(std::max(0.0, report.joint_four_overlap)) -
                           (1.0 - report.distance_sum);
  report.identity_residual = 0.0;
  for (int k = 0; k < 3; ++k) {
    report.identity_residual =
        std::max(report.identity_residual,
                 std::abs(report.trace_distances[k] + report.pair_overlaps[k] -
                          1.0));
  }

  report.epsilon_lower_bound_joint = report.joint_four_overlap / 4.0;
  const double chain_slack = std::max(0.0, 1.0 - report.distance_sum);
  report.epsilon_lower_bound_chain =
      (chain_slack / 2.0) * (chain_slack / 2.0);

  report.all_links_hold = report.product_bound_slack >= -options.tolerance &&
                          report.lemma_slack >= -options.tolerance &&
                          report.trace_sum_slack >= -options.tolerance &&
                          report.identity_residual <= options.tolerance;
  return report;
}

bool nonidentical_bound(const std::array<double, 3>& distances_a,
                        const std::array<double, 3>& distances_b,
                        double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("nonidentical_bound: epsilon must lie in [0, 1]");
  }
  const double factor_a =
      std::max(0.0, 1.0 - (distances_a[0] + distances_a[1] + distances_a[2]));
  const double factor_b =
      std::max(0.0, 1.0 - (distances_b[0] + distances_b[1] + distances_b[2]));
  return factor_a * factor_b <= 4.0 * epsilon;
}

}  // namespace psiepi::bounds
