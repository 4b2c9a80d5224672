#include "psiepi/protocol.hpp"

#include <cmath>
#include <complex>
#include <set>

namespace psiepi::protocol {

namespace {

constexpr double kZeroPatternTolerance = 1e-12;

}  // namespace

std::string to_string(PreparationLabel label) {
  switch (label) {
    case PreparationLabel::p00:
      return "00";
    case PreparationLabel::p0p1:
      return "0'1";
    case PreparationLabel::p10p:
      return "10'";
    case PreparationLabel::p1p1p:
      return "1'1'";
  }
  throw std::invalid_argument("unknown PreparationLabel");
}

PreparationLabel label_from_string(const std::string& s) {
  for (PreparationLabel label : kAllLabels) {
    if (to_string(label) == s) return label;
  }
  throw std::invalid_argument("unknown preparation label: " + s);
}

std::string to_string(MeasurementCircuit circuit) {
  return circuit == MeasurementCircuit::hcz ? "hcz" : "ms";
}

MeasurementCircuit circuit_from_string(const std::string& s) {
  if (s == "hcz") return MeasurementCircuit::hcz;
  if (s == "ms") return MeasurementCircuit::ms;
  throw std::invalid_argument("unknown circuit: " + s + " (expected hcz or ms)");
}

PureState phi0() {
  return PureState::single_qubit(std::cos(kPi / 8), std::sin(kPi / 8));
}

PureState phi1() {
  return PureState::single_qubit(std::cos(kPi / 8), -std::sin(kPi / 8));
}

PureState primed_phi0(double kappa) {
  const std::complex<double> leak = std::polar(1.0, kappa * kPi);
  return PureState::single_qubit(leak * std::cos(kPi / 8), std::sin(kPi / 8));
}

PureState primed_phi1(double kappa) {
  const std::complex<double> leak = std::polar(1.0, kappa * kPi);
  return PureState::single_qubit(leak * std::cos(kPi / 8), -std::sin(kPi / 8));
}

PureState closed_form_input(PreparationLabel label, double kappa) {
  switch (label) {
    case PreparationLabel::p00:
      return phi0().tensor(phi0());
    case PreparationLabel::p0p1:
      return primed_phi0(kappa).tensor(phi1());
    case PreparationLabel::p10p:
      return phi1().tensor(primed_phi0(kappa));
    case PreparationLabel::p1p1p:
      return primed_phi1(kappa).tensor(primed_phi1(kappa));
  }
  throw std::invalid_argument("unknown PreparationLabel");
}

PureState prepare_input(PreparationLabel label, const CrosstalkConfig& config) {
  const double leak = config.kappa * kPi;
  const PureState base =
      collective_rotation(kPi / 4, -kPi / 2, 2) * PureState::basis_state(4, 0);
  switch (label) {
    case PreparationLabel::p00:
      return base;  // no addressed pulses, no crosstalk
    case PreparationLabel::p0p1:
      return z_rotation(1, leak) * (z_rotation(2, kPi) * base);
    case PreparationLabel::p10p:
      return z_rotation(2, leak) * (z_rotation(1, kPi) * base);
    case PreparationLabel::p1p1p: {
      const PureState after_first =
          z_rotation(2, leak) * (z_rotation(1, kPi) * base);
      return z_rotation(1, leak) * (z_rotation(2, kPi) * after_first);
    }
  }
  throw std::invalid_argument("unknown PreparationLabel");
}

Unitary measurement_circuit(double alpha, double beta) {
  const Unitary zz(
      kronecker(diag_z_beta(beta).matrix(), diag_z_beta(beta).matrix()),
      detail::angle_label("ZxZ", beta));
  return hadamard(1) * hadamard(2) * controlled_phase(alpha) * zz;
}

Unitary measurement_circuit_ms() {
  return ms_gate(kPi / 2, 0.0) * collective_rotation(kPi / 2, kPi, 2);
}

namespace {

Eigen::Vector4d outcome_distribution(const Unitary& circuit,
                                     const PureState& input, double noise_p) {
  if (noise_p == 0.0) {
    return born_probabilities(circuit * input);
  }
  const DensityOperator noisy =
      depolarize(DensityOperator::from_pure(input), noise_p);
  return born_probabilities(evolve(noisy, circuit));
}

std::array<int, 4> discover_outcome_assignment(const Unitary& circuit) {
  std::array<int, 4> assignment{};
  std::set<int> used;
  for (std::size_t row = 0; row < kAllLabels.size(); ++row) {
    const Eigen::Vector4d probs = outcome_distribution(
        circuit, closed_form_input(kAllLabels[row], 0.0), 0.0);
    int zero_column = -1;
    for (int col = 0; col < 4; ++col) {
      if (probs(col) < kZeroPatternTolerance) {
        if (zero_column != -1) {
          throw ZeroPatternError("multiple zero outcomes for input " +
                                 to_string(kAllLabels[row]));
        }
        zero_column = col;
      }
    }
    if (zero_column == -1) {
      throw ZeroPatternError("no zero outcome for input " +
                             to_string(kAllLabels[row]));
    }
    assignment[row] = zero_column;
    used.insert(zero_column);
  }
  if (used.size() != 4) {
    throw ZeroPatternError("forbidden outcomes are not pairwise distinct");
  }
  return assignment;
}

}  // namespace

ProbabilityMatrix probability_matrix_for(const Unitary& circuit,
                                         const CrosstalkConfig& config,
                                         double noise_p) {
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) {
    throw std::invalid_argument("probability_matrix: noise_p must lie in [0, 1]");
  }
  ProbabilityMatrix result;
  result.outcome_assignment = discover_outcome_assignment(circuit);
  for (std::size_t row = 0; row < kAllLabels.size(); ++row) {
    result.entries.row(row) =
        outcome_distribution(circuit, prepare_input(kAllLabels[row], config),
                             noise_p)
            .transpose();
  }
  return result;
}

ProbabilityMatrix probability_matrix(const CrosstalkConfig& config,
                                     double noise_p,
                                     MeasurementCircuit circuit) {
  const Unitary u = circuit == MeasurementCircuit::hcz
                        ? measurement_circuit(kPi, 0.0)
                        : measurement_circuit_ms();
  return probability_matrix_for(u, config, noise_p);
}

Eigen::Vector4d forbidden_probabilities(const ProbabilityMatrix& matrix) {
  Eigen::Vector4d eps;
  for (int row = 0; row < 4; ++row) {
    eps(row) = matrix.entries(row, matrix.outcome_assignment[row]);
  }
  return eps;
}

}  // namespace psiepi::protocol
