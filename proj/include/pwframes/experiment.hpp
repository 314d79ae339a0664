// Experiment harness: JSON configuration, the model -> lattice ->
// functionals -> frame -> reconstruct pipeline, and flat-file outputs
// (lattice CSV, reconstruction report JSON, sweep CSV).

#ifndef PWFRAMES_EXPERIMENT_HPP
#define PWFRAMES_EXPERIMENT_HPP

#include <optional>

#include "pwframes/frames.hpp"

namespace pwframes {

/// Configuration rejection; the message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class ModelKind { Euclid1d, Hyperbolic };

struct ModelConfig {
    ModelKind kind = ModelKind::Hyperbolic;
    double omega = 1.0;
    int k = 0;        // euclid1d node count
    QuadRule rule = QuadRule::Midpoint;
    int k_t = 0;      // hyperbolic t-node count
    int k_phi = 0;    // hyperbolic phi-node count
};

struct FunctionalConfig {
    FunctionalKind kind = FunctionalKind::Dirac;
    int n = 0;
    MultiplierKind multiplier = MultiplierKind::Shifted;
    std::vector<double> masses = {1.0};
    double c_phi = 0.5;
    double big_c_phi = 2.0;
    int sub_count = 3;
    double sub_radius = 0.0;  // 0 = rho/4 default at build time
};

struct SolverConfig {
    double tol = 1e-8;
    int max_iter = 0;  // 0 = contraction-derived default
    bool accelerated = false;
};

struct SweepConfig {
    std::vector<double> rho;
    std::vector<int> n;
    std::vector<MultiplierKind> multiplier;
};

struct ExperimentConfig {
    ModelConfig model;
    DomainBox domain;
    double rho = 0.25;
    int candidate_count = 0;  // 0 = density-derived default
    FunctionalConfig functional;
    SolverConfig solver;
    int trials = 20;
    std::uint64_t seed = 1;
    std::optional<SweepConfig> sweep;
};

/// Parses and validates a config; unknown fields are rejected and every
/// violation message names the field.
ExperimentConfig load_config_string(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

ModelPtr build_model(const ModelConfig& config);

struct CommandResult {
    int exit_code = 0;  // 0 ok, 2 uncertified frame
    std::string message;
};

/// Writes <out>/lattice.csv and <out>/lattice_certificate.json.
CommandResult cmd_lattice(const ExperimentConfig& config, const std::string& out_dir);

/// Synthesizes a random bandlimited function, samples it with the
/// configured family, reconstructs, and writes <out>/report.json. An
/// uncertified frame is reported with a failure flag and exit code 2.
CommandResult cmd_reconstruct(const ExperimentConfig& config, const std::string& out_dir);

/// Grid sweep over rho / n / multiplier; writes <out>/sweep.csv with header
/// rho,n,multiplier,A,B,contraction,iterations,rel_error,certified and rows
/// sorted by (rho, n).
CommandResult cmd_sweep(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace pwframes

#endif
