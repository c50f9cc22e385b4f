#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crnkit/dynamics.hpp"
#include "crnkit/structure.hpp"

namespace crnkit {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIndeterminate = 3;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "crnkit";
inline constexpr const char* kToolVersion = "0.1.0";

struct CommandResult {
    int exit_code = kExitOk;
    Json report;
    /// The command's main artifact: network text, CSV, or the serialized report.
    std::string primary;
};

struct InputOptions {
    std::string path;
    bool timestamp = false;
};

struct CheckOptions {
    InputOptions input;
    bool verify_projective = false;
    std::size_t reaction_limit = kDefaultReactionLimit;
};

struct ReduceOptions {
    InputOptions input;
    std::vector<std::string> keep;
};

struct SimulationOptions {
    double t_end = 10.0;
    double h = 1e-3;
    double dt = 1.0;
    RateScheme scheme = RateScheme::Midpoint;
    std::uint64_t seed = 0;
    std::optional<Vector> x_init;
};

struct SimulateOptions {
    InputOptions input;
    SimulationOptions simulation;
};

struct VerifyOptions {
    InputOptions input;
    std::vector<std::string> keep;
    double eps = 0.1;
    double tol = 1e-4;
    SimulationOptions simulation;
    /// Reduced network file to check against instead of the constructed projection.
    std::optional<std::string> against;
};

struct EnsembleOptions {
    std::size_t n_traj = 100;
    std::uint64_t seed = 0;
    std::optional<Vector> init_lo;  // default: the point x0
    std::optional<Vector> init_hi;
    double dt = 1.0;
    double t_end = 10.0;
    double h = 1e-3;
    RateScheme scheme = RateScheme::UniformRandom;
    unsigned threads = 0;
};

struct PersistenceOptions {
    InputOptions input;
    EnsembleOptions ensemble;
};

struct RepulsionOptions {
    InputOptions input;
    std::string target;  // one of 0, 1, * per species
    std::vector<double> d1;
    EnsembleOptions ensemble;
};

struct PermanenceOptions {
    InputOptions input;
    Vector k_lo;
    Vector k_hi;
    Vector kplus_lo;
    Vector kplus_hi;
    EnsembleOptions ensemble;
};

CommandResult cmd_check(const CheckOptions& options);
CommandResult cmd_reduce(const ReduceOptions& options);
CommandResult cmd_simulate(const SimulateOptions& options);
CommandResult cmd_verify_vertexical(const VerifyOptions& options);
CommandResult cmd_persistence(const PersistenceOptions& options);
CommandResult cmd_repulsion(const RepulsionOptions& options);
CommandResult cmd_permanence(const PermanenceOptions& options);

/// Runs a command, turning parse and usage failures into exit code 2 and numerical
/// indeterminacy into exit code 3, each with an error report.
template <class Options>
CommandResult run_command(CommandResult (*command)(const Options&), const Options& options, const std::string& name);

CommandResult error_result(const std::string& command, int exit_code, const std::string& message,
                           std::optional<std::size_t> line = std::nullopt);

}  // namespace crnkit

#include "crnkit/errors.hpp"
#include "crnkit/reduction.hpp"

namespace crnkit {

template <class Options>
CommandResult run_command(CommandResult (*command)(const Options&), const Options& options, const std::string& name) {
    try {
        return command(options);
    } catch (const ParseError& e) {
        return error_result(name, kExitUsage, e.what(), e.line());
    } catch (const NumericalIndeterminacy& e) {
        return error_result(name, kExitIndeterminate, e.what());
    } catch (const IntegrationError& e) {
        return error_result(name, kExitIndeterminate, e.what());
    } catch (const std::exception& e) {
        return error_result(name, kExitUsage, e.what());
    }
}

}  // namespace crnkit
