#include "psiepi/cli.hpp"

#include <cmath>
#include <sstream>

#include "psiepi/bounds.hpp"
#include "psiepi/experiment.hpp"
#include "psiepi/ontic.hpp"
#include "psiepi/version.hpp"

namespace psiepi::cli {

namespace {

using nlohmann::json;

json config_json(const RunConfig& config) {
  return {{"kappa", config.kappa},
          {"noise_p", config.noise_p},
          {"shots", config.shots},
          {"seed", config.seed},
          {"grid_resolution", config.grid_resolution},
          {"circuit", protocol::to_string(config.circuit)}};
}

json base_output(const char* command, const RunConfig& config) {
  return {{"schema", 1},
          {"command", command},
          {"version", kVersion},
          {"seed", config.seed},
          {"config", config_json(config)}};
}

json matrix_json(const Eigen::Matrix4d& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json assignment_json(const std::array<int, 4>& assignment) {
  json out = json::object();
  for (std::size_t row = 0; row < assignment.size(); ++row) {
    out[protocol::to_string(protocol::kAllLabels[row])] =
        basis_label(assignment[row], 2);
  }
  return out;
}

json epsilon_report_json(const experiment::EpsilonReport& report) {
  json out = {{"eps", report.eps},
              {"eps_err", report.eps_err},
              {"mean", report.mean},
              {"mean_err_propagated", report.mean_err_propagated},
              {"mean_err", report.mean_err},
              {"threshold", report.threshold},
              {"sigma_defined", report.sigma_defined}};
  out["mean_err_override"] = report.mean_err_override
                                 ? json(*report.mean_err_override)
                                 : json(nullptr);
  out["sigma_distance"] =
      report.sigma_defined ? json(report.sigma_distance) : json(nullptr);
  out["tail_probability"] =
      report.sigma_defined ? json(report.tail_probability) : json(nullptr);
  return out;
}

json bound_report_json(const bounds::BoundReport& report) {
  return {{"epsilon_mean", report.epsilon_mean},
          {"rhs", report.rhs},
          {"quantum_distance_sum", report.quantum_distance_sum},
          {"epsilon_threshold", report.epsilon_threshold},
          {"violated", report.violated}};
}

double max_row_tvd(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) {
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    worst = std::max(worst, 0.5 * (a.row(r) - b.row(r)).cwiseAbs().sum());
  }
  return worst;
}

}  // namespace

CommandResult cmd_verify_protocol(const RunConfig& config, double alpha,
                                  double beta) {
  CommandResult result;
  result.output = base_output("verify-protocol", config);
  result.output["alpha"] = alpha;
  result.output["beta"] = beta;

  const protocol::CrosstalkConfig crosstalk(config.kappa);
  const Unitary circuit = config.circuit == protocol::MeasurementCircuit::hcz
                              ? protocol::measurement_circuit(alpha, beta)
                              : protocol::measurement_circuit_ms();
  protocol::ProbabilityMatrix matrix;
  try {
    matrix = protocol::probability_matrix_for(circuit, crosstalk,
                                              config.noise_p);
  } catch (const protocol::ZeroPatternError& error) {
    result.output["zero_pattern_bijection"] = false;
    result.output["error"] = error.what();
    result.exit_code = kExitProtocolFailure;
    return result;
  }

  const protocol::ProbabilityMatrix ideal = protocol::probability_matrix_for(
      circuit, protocol::CrosstalkConfig(0.0), 0.0);

  json row_labels = json::array();
  for (auto label : protocol::kAllLabels) {
    row_labels.push_back(protocol::to_string(label));
  }
  json outcome_labels = json::array();
  for (int c = 0; c < 4; ++c) outcome_labels.push_back(basis_label(c, 2));

  result.output["row_labels"] = row_labels;
  result.output["outcome_labels"] = outcome_labels;
  result.output["probability_matrix"] = matrix_json(matrix.entries);
  result.output["outcome_assignment"] = assignment_json(matrix.outcome_assignment);
  result.output["forbidden_probabilities"] =
      std::vector<double>(protocol::forbidden_probabilities(matrix).data(),
                          protocol::forbidden_probabilities(matrix).data() + 4);
  result.output["max_forbidden_probability_ideal"] =
      protocol::forbidden_probabilities(ideal).maxCoeff();
  result.output["zero_pattern_bijection"] = true;

  // Cross-check the two measurement realizations at the current parameters.
  const auto hcz = protocol::probability_matrix(
      crosstalk, config.noise_p, protocol::MeasurementCircuit::hcz);
  const auto ms = protocol::probability_matrix(crosstalk, config.noise_p,
                                               protocol::MeasurementCircuit::ms);
  result.output["circuit_equivalence_tvd"] = max_row_tvd(hcz.entries, ms.entries);
  return result;
}

CommandResult cmd_threshold(const RunConfig& config) {
  CommandResult result;
  result.output = base_output("threshold", config);
  const auto distances = bounds::protocol_trace_distances(config.kappa);
  const double sum = distances[0] + distances[1] + distances[2];
  result.output["kappa"] = config.kappa;
  result.output["quantum_trace_distances"] = {{"phi0_phi1", distances[0]},
                                              {"phi0_phi0p", distances[1]},
                                              {"phi1_phi1p", distances[2]}};
  result.output["distance_sum"] = sum;
  result.output["epsilon_threshold"] = bounds::epsilon_threshold(config.kappa);
  result.output["clamped"] = sum >= 1.0;
  return result;
}

CommandResult cmd_simulate(const RunConfig& config) {
  CommandResult result;
  result.output = base_output("simulate", config);

  const protocol::CrosstalkConfig crosstalk(config.kappa);
  const auto matrix =
      protocol::probability_matrix(crosstalk, config.noise_p, config.circuit);
  const auto records =
      experiment::simulate_run(matrix, config.shots, config.seed);
  const auto estimate =
      experiment::estimate_epsilons(records, matrix.outcome_assignment);
  const auto analysis =
      experiment::analyze(estimate.eps, estimate.eps_err, config.kappa);

  json record_list = json::array();
  for (const auto& record : records) {
    json frequencies = json::array();
    for (int c = 0; c < 4; ++c) {
      frequencies.push_back(static_cast<double>(record.counts[c]) /
                            static_cast<double>(record.shots));
    }
    record_list.push_back({{"label", protocol::to_string(record.label)},
                           {"shots", record.shots},
                           {"seed", record.seed},
                           {"counts", record.counts},
                           {"frequencies", frequencies}});
  }
  result.output["records"] = record_list;
  result.output["probability_matrix"] = matrix_json(matrix.entries);
  result.output["outcome_assignment"] = assignment_json(matrix.outcome_assignment);
  result.output["epsilon_report"] = epsilon_report_json(analysis.epsilon);
  result.output["bound_report"] = bound_report_json(analysis.bound);

  std::ostringstream csv;
  csv << "input,outcome,predicted_probability,observed_frequency,forbidden\n";
  for (std::size_t row = 0; row < records.size(); ++row) {
    for (int col = 0; col < 4; ++col) {
      csv << protocol::to_string(records[row].label) << ','
          << basis_label(col, 2) << ','
          << matrix.entries(static_cast<int>(row), col) << ','
          << static_cast<double>(records[row].counts[col]) /
                 static_cast<double>(records[row].shots)
          << ',' << (matrix.outcome_assignment[row] == col ? 1 : 0) << '\n';
    }
  }
  result.csv = csv.str();
  return result;
}

CommandResult cmd_analyze(const std::array<double, 4>& eps,
                          const std::array<double, 4>& eps_err, double kappa,
                          std::optional<double> mean_err_override) {
  RunConfig config;
  config.kappa = kappa;
  CommandResult result;
  result.output = base_output("analyze", config);
  const auto analysis =
      experiment::analyze(eps, eps_err, kappa, mean_err_override);
  result.output["epsilon_report"] = epsilon_report_json(analysis.epsilon);
  result.output["bound_report"] = bound_report_json(analysis.bound);
  return result;
}

CommandResult cmd_ksmodel(const std::vector<double>& angles,
                          std::int64_t grid_resolution) {
  RunConfig config;
  config.grid_resolution = grid_resolution;
  CommandResult result;
  result.output = base_output("ksmodel", config);

  const ontic::SphereGrid grid(grid_resolution);
  const PureState pole = PureState::single_qubit(0.0, 1.0);  // |0>
  json entries = json::array();
  for (double theta : angles) {
    if (!(theta >= 0.0 && theta <= kPi)) {
      throw std::invalid_argument(
          "ksmodel: Bloch angles must lie in [0, pi]");
    }
    const PureState rotated = PureState::single_qubit(
        std::sin(theta / 2), std::cos(theta / 2));
    const double d_ks = ontic::classical_trace_distance(
        ontic::ks_density(pole), ontic::ks_density(rotated), grid);
    const double d_q = quantum_trace_distance(pole, rotated);
    entries.push_back({{"theta", theta},
                       {"d_ks", d_ks},
                       {"d_q", d_q},
                       {"abs_gap", std::abs(d_ks - d_q)}});
  }
  result.output["entries"] = entries;
  return result;
}

}  // namespace psiepi::cli
