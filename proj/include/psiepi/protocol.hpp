// The two-ion preparation/measurement protocol: the four (crosstalk-perturbed)
// input preparations built gate-by-gate from the pulse sequence, the joint
// measurement circuit in both its H/CZ and MS realizations, and the 4x4
// outcome-probability matrix with its forbidden-outcome assignment.

#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "psiepi/quantum.hpp"

namespace psiepi::protocol {

/// The four input preparations, ordered to match the bound's ordering
/// psi0 x psi0, psi0' x psi1, psi1 x psi0', psi1' x psi1'.
enum class PreparationLabel { p00, p0p1, p10p, p1p1p };

inline constexpr std::array<PreparationLabel, 4> kAllLabels = {
    PreparationLabel::p00, PreparationLabel::p0p1, PreparationLabel::p10p,
    PreparationLabel::p1p1p};

std::string to_string(PreparationLabel label);
PreparationLabel label_from_string(const std::string& s);

struct CrosstalkConfig {
  // Fraction of an addressed pi phase pulse leaked onto the neighbour ion.
  double kappa = 0.0;

  explicit CrosstalkConfig(double kappa_value) : kappa(kappa_value) {
    if (!(kappa >= 0.0 && kappa <= 0.5)) {
      throw std::invalid_argument("CrosstalkConfig: kappa must lie in [0, 0.5]");
    }
  }
};

enum class MeasurementCircuit { hcz, ms };

std::string to_string(MeasurementCircuit circuit);
MeasurementCircuit circuit_from_string(const std::string& s);

/// Thrown when the ideal-parameter zero pattern is not a bijection, which
/// signals a broken gate convention.
struct ZeroPatternError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed-form single-qubit states; kappa enters as the leaked phase e^{i kappa pi}
// on the |1> amplitude.
PureState phi0();
PureState phi1();
PureState primed_phi0(double kappa);
PureState primed_phi1(double kappa);

/// Closed-form product state for a preparation label (the oracle the gate-built
/// preparation is checked against).
PureState closed_form_input(PreparationLabel label, double kappa);

/// Builds the input state by composing gates exactly as the pulse sequence
/// does: a global U(pi/4, -pi/2) on |11>, then the addressed Uz(pi) pulses,
/// each accompanied by a leaked Uz(kappa*pi) on the other ion.
PureState prepare_input(PreparationLabel label, const CrosstalkConfig& config);

/// (H x H) * R_alpha * (Z_beta x Z_beta); the protocol's measurement is this
/// unitary followed by a computational-basis measurement.
Unitary measurement_circuit(double alpha, double beta);

/// MS(pi/2, 0) * U(pi/2, pi): the pulse-sequence realization, which produces
/// the same outcome distribution as measurement_circuit(pi, 0) on every input.
Unitary measurement_circuit_ms();

struct ProbabilityMatrix {
  // Rows follow kAllLabels; columns are outcomes |11>,|10>,|01>,|00|.
  Eigen::Matrix4d entries;
  // Row -> forbidden outcome column, discovered at ideal parameters.
  std::array<int, 4> outcome_assignment;
};

/// Outcome distribution of each prepared input under the chosen circuit, with
/// optional depolarizing noise applied to the prepared state. Throws
/// ZeroPatternError if the ideal-parameter zero pattern is not a bijection.
ProbabilityMatrix probability_matrix(const CrosstalkConfig& config,
                                     double noise_p,
                                     MeasurementCircuit circuit);

/// Same, for an arbitrary measurement unitary (used by the protocol checker).
ProbabilityMatrix probability_matrix_for(const Unitary& circuit,
                                         const CrosstalkConfig& config,
                                         double noise_p);

/// The diagonal under the forbidden-outcome assignment, ordered by label.
Eigen::Vector4d forbidden_probabilities(const ProbabilityMatrix& matrix);

}  // namespace psiepi::protocol
