#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "crnkit/commands.hpp"

namespace {

using namespace crnkit;

struct Outputs {
    std::string out;
    std::string json;
};

void add_io(CLI::App* cmd, InputOptions& input, Outputs& outputs) {
    cmd->add_option("network", input.path, "network file")->required();
    cmd->add_option("--out", outputs.out, "write the primary output here instead of stdout");
    cmd->add_option("--json", outputs.json, "write the JSON report here");
    cmd->add_flag("--timestamp", input.timestamp, "add a timestamp to the report");
}

void add_simulation(CLI::App* cmd, SimulationOptions& sim, std::string& scheme, std::vector<double>& x_init) {
    cmd->add_option("--t-end", sim.t_end, "integration horizon")->capture_default_str();
    cmd->add_option("--h", sim.h, "RK4 step")->capture_default_str();
    cmd->add_option("--dt", sim.dt, "rate path piece length")->capture_default_str();
    cmd->add_option("--scheme", scheme, "midpoint, uniform-random, or extremal-cycling")->capture_default_str();
    cmd->add_option("--seed", sim.seed, "rate path seed")->capture_default_str();
    cmd->add_option("--x-init", x_init, "initial state (defaults to x0)")->delimiter(',');
}

void add_ensemble(CLI::App* cmd, EnsembleOptions& e, std::string& scheme, std::vector<double>& lo,
                  std::vector<double>& hi) {
    cmd->add_option("--n-traj", e.n_traj, "trajectories per ensemble")->capture_default_str();
    cmd->add_option("--seed", e.seed, "seed of the first trajectory")->capture_default_str();
    cmd->add_option("--init-lo", lo, "lower corner of the start box (defaults to x0)")->delimiter(',');
    cmd->add_option("--init-hi", hi, "upper corner of the start box")->delimiter(',');
    cmd->add_option("--t-end", e.t_end, "integration horizon")->capture_default_str();
    cmd->add_option("--h", e.h, "RK4 step")->capture_default_str();
    cmd->add_option("--dt", e.dt, "rate path piece length")->capture_default_str();
    cmd->add_option("--scheme", scheme, "midpoint, uniform-random, or extremal-cycling")->capture_default_str();
    cmd->add_option("--threads", e.threads, "worker threads (0: all cores)")->capture_default_str();
}

std::optional<Vector> optional_vector(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return v;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int emit(const CommandResult& result, const Outputs& outputs) {
    try {
        if (result.report.contains("error")) {
            std::cerr << "crnkit: " << result.report["error"]["message"].get<std::string>() << "\n";
        } else {
            const auto& payload = result.report["payload"];
            if (payload.contains("note")) std::cerr << "crnkit: " << payload["note"].get<std::string>() << "\n";
            if (outputs.out.empty()) {
                std::cout << result.primary;
            } else {
                write_file(outputs.out, result.primary);
            }
        }
        if (!outputs.json.empty()) write_file(outputs.json, result.report.dump(2) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "crnkit: " << e.what() << "\n";
        return kExitUsage;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reaction network classification, reduction, simulation, and boundary diagnostics"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Outputs outputs;

    CheckOptions check;
    auto* c_check = app.add_subcommand("check", "classify a network");
    add_io(c_check, check.input, outputs);
    c_check->add_flag("--verify-projective", check.verify_projective, "re-check every single-species reduction");
    c_check->add_option("--reaction-limit", check.reaction_limit, "cap on reactions for the exact deciders")
        ->capture_default_str();

    ReduceOptions reduce;
    auto* c_reduce = app.add_subcommand("reduce", "project a system onto kept species");
    add_io(c_reduce, reduce.input, outputs);
    c_reduce->add_option("--keep", reduce.keep, "kept species")->required()->delimiter(',');

    SimulateOptions simulate;
    std::string sim_scheme = "midpoint";
    std::vector<double> sim_x;
    auto* c_sim = app.add_subcommand("simulate", "integrate one trajectory to CSV");
    add_io(c_sim, simulate.input, outputs);
    add_simulation(c_sim, simulate.simulation, sim_scheme, sim_x);

    VerifyOptions verify;
    std::string verify_scheme = "midpoint";
    std::vector<double> verify_x;
    std::string against;
    auto* c_verify = app.add_subcommand("verify-vertexical", "check block segments against the reduced system");
    add_io(c_verify, verify.input, outputs);
    c_verify->add_option("--keep", verify.keep, "kept species")->required()->delimiter(',');
    c_verify->add_option("--eps", verify.eps, "block width")->capture_default_str();
    c_verify->add_option("--tol", verify.tol, "fiber residual tolerance")->capture_default_str();
    c_verify->add_option("--against", against, "reduced network file to check against");
    add_simulation(c_verify, verify.simulation, verify_scheme, verify_x);

    PersistenceOptions persistence;
    std::string pers_scheme = "uniform-random";
    std::vector<double> pers_lo, pers_hi;
    auto* c_pers = app.add_subcommand("persistence", "boundary distances over a seeded ensemble");
    add_io(c_pers, persistence.input, outputs);
    add_ensemble(c_pers, persistence.ensemble, pers_scheme, pers_lo, pers_hi);

    RepulsionOptions repulsion;
    std::string rep_scheme = "uniform-random";
    std::vector<double> rep_lo, rep_hi;
    auto* c_rep = app.add_subcommand("repulsion", "start-distance versus attained-distance table");
    add_io(c_rep, repulsion.input, outputs);
    c_rep->add_option("--target", repulsion.target, "face pattern, one of 0, 1, * per species")->required();
    c_rep->add_option("--d1", repulsion.d1, "start distance grid")->required()->delimiter(',');
    add_ensemble(c_rep, repulsion.ensemble, rep_scheme, rep_lo, rep_hi);

    PermanenceOptions permanence;
    std::string perm_scheme = "uniform-random";
    std::vector<double> perm_lo, perm_hi;
    auto* c_perm = app.add_subcommand("permanence", "absorption of ensembles started in K by K+");
    add_io(c_perm, permanence.input, outputs);
    c_perm->add_option("--k-lo", permanence.k_lo, "lower corner of K")->required()->delimiter(',');
    c_perm->add_option("--k-hi", permanence.k_hi, "upper corner of K")->required()->delimiter(',');
    c_perm->add_option("--kplus-lo", permanence.kplus_lo, "lower corner of K+")->required()->delimiter(',');
    c_perm->add_option("--kplus-hi", permanence.kplus_hi, "upper corner of K+")->required()->delimiter(',');
    add_ensemble(c_perm, permanence.ensemble, perm_scheme, perm_lo, perm_hi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_check) return emit(run_command(&cmd_check, check, "check"), outputs);
        if (*c_reduce) return emit(run_command(&cmd_reduce, reduce, "reduce"), outputs);
        if (*c_sim) {
            simulate.simulation.scheme = parse_rate_scheme(sim_scheme);
            simulate.simulation.x_init = optional_vector(sim_x);
            return emit(run_command(&cmd_simulate, simulate, "simulate"), outputs);
        }
        if (*c_verify) {
            verify.simulation.scheme = parse_rate_scheme(verify_scheme);
            verify.simulation.x_init = optional_vector(verify_x);
            if (!against.empty()) verify.against = against;
            return emit(run_command(&cmd_verify_vertexical, verify, "verify-vertexical"), outputs);
        }
        if (*c_pers) {
            persistence.ensemble.scheme = parse_rate_scheme(pers_scheme);
            persistence.ensemble.init_lo = optional_vector(pers_lo);
            persistence.ensemble.init_hi = optional_vector(pers_hi);
            return emit(run_command(&cmd_persistence, persistence, "persistence"), outputs);
        }
        if (*c_rep) {
            repulsion.ensemble.scheme = parse_rate_scheme(rep_scheme);
            repulsion.ensemble.init_lo = optional_vector(rep_lo);
            repulsion.ensemble.init_hi = optional_vector(rep_hi);
            return emit(run_command(&cmd_repulsion, repulsion, "repulsion"), outputs);
        }
        if (*c_perm) {
            permanence.ensemble.scheme = parse_rate_scheme(perm_scheme);
            permanence.ensemble.init_lo = optional_vector(perm_lo);
            permanence.ensemble.init_hi = optional_vector(perm_hi);
            return emit(run_command(&cmd_permanence, permanence, "permanence"), outputs);
        }
    } catch (const std::exception& e) {
        std::cerr << "crnkit: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
