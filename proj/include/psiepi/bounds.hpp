// The overlap-bound mathematics: the 4-overlap/2-overlap lemma, the trace
// distance inequality sum D >= 1 - 2 sqrt(eps), the epsilon threshold implied
// by equating classical and quantum trace distances, a numerical check of the
// whole inequality chain on concrete densities, and the non-identical-qubits
// product bound.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "psiepi/ontic.hpp"

namespace psiepi::bounds {

/// min(a,b,c,d) - [min(a,b) + min(b,c) + min(c,d) - b - c]; nonnegative for
/// all reals.
double min4_lemma_gap(double a, double b, double c, double d);

/// 1 - 2 sqrt(epsilon); the lower bound the trace-distance sum must satisfy.
double theorem_rhs(double epsilon);

/// The three quantum trace distances of the crosstalk-perturbed protocol:
/// D_Q(phi0, phi1), D_Q(phi0, phi0'), D_Q(phi1, phi1').
std::array<double, 3> protocol_trace_distances(double kappa);

/// Their sum S.
double quantum_distance_sum(double kappa);

/// max(0, ((1 - S)/2)^2): the smallest epsilon compatible with a model whose
/// classical trace distances all equal the quantum ones.
double epsilon_threshold(double kappa);

struct BoundReport {
  double epsilon_mean = 0.0;
  double rhs = 0.0;                   // 1 - 2 sqrt(epsilon_mean)
  double quantum_distance_sum = 0.0;  // S
  double epsilon_threshold = 0.0;
  bool violated = false;  // S < rhs, equivalently epsilon_mean < threshold
};

BoundReport make_bound_report(double epsilon_mean, double kappa);

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverlapChainOptions {
  // Per-axis resolution of the product grid used for the joint two-copy
  // overlap; the single-sphere quantities use the caller's grid.
  std::int64_t joint_nodes_per_axis = 10000;
  // Quadrature tolerance: gates the convergence check and the link slacks.
  double tolerance = 1e-4;
};

struct OverlapChainReport {
  double joint_four_overlap = 0.0;   // omega({mu_k}) over Lambda x Lambda
  double single_four_overlap = 0.0;  // omega(mu0, mu0', mu1, mu1')
  std::array<double, 3> pair_overlaps{};    // (mu0,mu1), (mu0,mu0'), (mu1,mu1')
  std::array<double, 3> trace_distances{};  // same pairs
  double distance_sum = 0.0;

  // Slack of each inequality link; all must be >= -tolerance.
  double product_bound_slack = 0.0;  // omega_joint - omega_single^2
  double lemma_slack = 0.0;          // omega_single - (sum pair overlaps - 2)
  double trace_sum_slack = 0.0;      // sqrt(omega_joint) - (1 - sum D)
  double identity_residual = 0.0;    // max_k |D_k + omega_k - 1|

  double quadrature_error_estimate = 0.0;  // joint value change under halving

  // Smallest forbidden-outcome probability consistent with these densities.
  double epsilon_lower_bound_joint = 0.0;  // omega_joint / 4
  double epsilon_lower_bound_chain = 0.0;  // (max(0, 1 - sum D)/2)^2

  bool all_links_hold = false;
};

/// Builds the four product densities of the two-copy argument, computes the
/// joint 4-overlap by quadrature over the product grid, and checks every
/// inequality link of the chain. Throws QuadratureError when the joint
/// quadrature has not converged to the requested tolerance.
OverlapChainReport overlap_chain_check(const ontic::OnticDensity& mu0,
                                       const ontic::OnticDensity& mu0p,
                                       const ontic::OnticDensity& mu1,
                                       const ontic::OnticDensity& mu1p,
                                       const ontic::SphereGrid& grid,
                                       const OverlapChainOptions& options = {});

/// Non-identical-qubits bound: whether per-side distance sums (a1,a2,a3) and
/// (b1,b2,b3) are consistent with mean forbidden probability epsilon, i.e.
/// max(0, 1-sum a) * max(0, 1-sum b) <= 4 epsilon.
bool nonidentical_bound(const std::array<double, 3>& distances_a,
                        const std::array<double, 3>& distances_b,
                        double epsilon);

}  // namespace psiepi::bounds
