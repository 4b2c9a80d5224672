// psiepi: simulator and analysis tool for the two-ion overlap-bound protocol.
//
// Subcommands: verify-protocol, threshold, simulate, analyze, ksmodel.
// Every command prints a JSON document to stdout; exit codes are 0 (success),
// 2 (protocol-structure failure) and 3 (configuration error).

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psiepi/cli.hpp"

namespace {

using psiepi::cli::CommandResult;
using psiepi::cli::RunConfig;

void add_config_file(CLI::App* cmd) {
  cmd->set_config("--config", "", "Read options from a key=value file");
}

void add_common_options(CLI::App* cmd, RunConfig& config,
                        std::string& circuit_name) {
  cmd->add_option("--kappa", config.kappa,
                  "Crosstalk fraction of an addressed pi pulse")
      ->capture_default_str();
  cmd->add_option("--seed", config.seed, "Master seed")->capture_default_str();
  cmd->add_option("--circuit", circuit_name,
                  "Measurement realization: hcz or ms")
      ->check(CLI::IsMember({"hcz", "ms"}))
      ->capture_default_str();
}

int emit(const CommandResult& result, const std::string& out_path,
         const std::string& format) {
  const std::string text = result.output.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    file << (format == "csv" ? result.csv : text);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-ion overlap-bound protocol simulator and analyzer"};
  app.require_subcommand(1);

  RunConfig config;
  std::string circuit_name = "hcz";
  std::string out_path;
  std::string format = "json";
  double alpha = psiepi::kPi;
  double beta = 0.0;
  std::vector<double> eps_values;
  std::vector<double> err_values;
  std::optional<double> mean_err_override;
  double override_value = -1.0;
  std::vector<double> angles = {psiepi::kPi / 6, psiepi::kPi / 4,
                                psiepi::kPi / 2, 3 * psiepi::kPi / 4};

  CLI::App* verify = app.add_subcommand(
      "verify-protocol", "Check the zero pattern and circuit equivalence");
  add_common_options(verify, config, circuit_name);
  verify->add_option("--noise-p", config.noise_p, "Depolarizing strength")
      ->capture_default_str();
  verify->add_option("--alpha", alpha, "Conditional phase")->capture_default_str();
  verify->add_option("--beta", beta, "Z_beta phase")->capture_default_str();
  verify->add_option("--out", out_path, "Write the JSON document here");
  add_config_file(verify);

  CLI::App* threshold =
      app.add_subcommand("threshold", "Epsilon threshold for a given kappa");
  add_common_options(threshold, config, circuit_name);
  threshold->add_option("--out", out_path, "Write the JSON document here");
  add_config_file(threshold);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Sample shots from the protocol and analyze them");
  add_common_options(simulate, config, circuit_name);
  simulate
      ->add_option("--noise-p", config.noise_p,
                   "Depolarizing strength (default calibrated to a ~1.1% mean "
                   "forbidden rate at kappa=0.01)")
      ->default_str("0.0436");
  simulate->add_option("--shots", config.shots, "Shots per input state")
      ->capture_default_str();
  simulate->add_option("--out", out_path, "Output path (JSON, or CSV with --format csv)");
  simulate->add_option("--format", format, "Output file format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  add_config_file(simulate);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Analyze externally measured forbidden-outcome rates");
  analyze->add_option("--eps", eps_values, "Four forbidden rates (fractions)")
      ->delimiter(',')
      ->required();
  analyze->add_option("--err", err_values, "Four statistical errors")
      ->delimiter(',')
      ->required();
  analyze->add_option("--kappa", config.kappa, "Crosstalk fraction")
      ->capture_default_str();
  analyze->add_option("--mean-err-override", override_value,
                      "Use this mean error for the sigma distance");
  analyze->add_option("--out", out_path, "Write the JSON document here");
  add_config_file(analyze);

  CLI::App* ksmodel = app.add_subcommand(
      "ksmodel", "Classical vs quantum trace distance of the KS qubit model");
  ksmodel->add_option("--angles", angles, "Bloch angles in radians")
      ->delimiter(',');
  ksmodel->add_option("--grid", config.grid_resolution, "Sphere grid nodes")
      ->capture_default_str();
  ksmodel->add_option("--out", out_path, "Write the JSON document here");
  add_config_file(ksmodel);

  try {
    app.parse(argc, argv);

    config.circuit = psiepi::protocol::circuit_from_string(circuit_name);
    if (simulate->parsed() && simulate->count("--noise-p") == 0) {
      config.noise_p = psiepi::cli::kCalibratedNoiseP;
    }
    if (format == "csv" && !simulate->parsed()) {
      throw std::invalid_argument("--format csv is only available for simulate");
    }
    if (format == "csv" && out_path.empty()) {
      throw std::invalid_argument("--format csv requires --out");
    }

    CommandResult result;
    if (verify->parsed()) {
      result = psiepi::cli::cmd_verify_protocol(config, alpha, beta);
    } else if (threshold->parsed()) {
      result = psiepi::cli::cmd_threshold(config);
    } else if (simulate->parsed()) {
      result = psiepi::cli::cmd_simulate(config);
    } else if (analyze->parsed()) {
      if (eps_values.size() != 4 || err_values.size() != 4) {
        throw std::invalid_argument("analyze: --eps and --err need 4 values");
      }
      if (analyze->count("--mean-err-override") > 0) {
        mean_err_override = override_value;
      }
      std::array<double, 4> eps{};
      std::array<double, 4> err{};
      std::copy(eps_values.begin(), eps_values.end(), eps.begin());
      std::copy(err_values.begin(), err_values.end(), err.begin());
      result = psiepi::cli::cmd_analyze(eps, err, config.kappa,
                                        mean_err_override);
    } else {
      result = psiepi::cli::cmd_ksmodel(angles, config.grid_resolution);
    }
    return emit(result, out_path, format);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? psiepi::cli::kExitOk : psiepi::cli::kExitConfigError;
  } catch (const psiepi::protocol::ZeroPatternError& error) {
    std::cerr << "protocol failure: " << error.what() << "\n";
    return psiepi::cli::kExitProtocolFailure;
  } catch (const std::exception& error) {
    std::cerr << "configuration error: " << error.what() << "\n";
    return psiepi::cli::kExitConfigError;
  }
}
