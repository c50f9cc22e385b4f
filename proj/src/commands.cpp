#include "crnkit/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <set>
#include <sstream>

#include "crnkit/cube.hpp"
#include "crnkit/diagnostics.hpp"
#include "crnkit/io.hpp"
#include "crnkit/reduction.hpp"

namespace crnkit {

namespace {

struct LoadedInput {
    std::string digest;
    NetworkFile file;
};

LoadedInput load(const InputOptions& input) {
    const auto text = read_text_file(input.path);
    return {content_digest(text), parse_network(text)};
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

Json document(const std::string& command, const InputOptions& input, const std::string& digest, Json payload) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = kToolName;
    doc["tool_version"] = kToolVersion;
    doc["command"] = command;
    doc["input_digest"] = digest;
    if (input.timestamp) doc["timestamp"] = utc_timestamp();
    doc["payload"] = std::move(payload);
    return doc;
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(number_or_null(x));
    return a;
}

Json interval_json(const PositiveInterval& k) {
    return Json{{"lo", k.lo()},
                {"hi", number_or_null(k.hi())},
                {"lo_open", k.lo_open()},
                {"hi_open", k.hi_open()},
                {"text", format_interval(k)}};
}

Json verdict_flag(const GeometricVerdict& v) {
    if (v.verdict == Verdict::Indeterminate) return nullptr;
    return v.verdict == Verdict::True;
}

Json verdict_json(const GeometricVerdict& v, const ReactionNetwork& net) {
    Json j;
    j["verdict"] = v.verdict == Verdict::True ? "true" : v.verdict == Verdict::False ? "false" : "indeterminate";
    j["witness"] = v.witness ? vector_json(*v.witness) : Json(nullptr);
    j["violator"] = v.violator ? Json(format_reaction(net.reactions()[*v.violator], net.species())) : Json(nullptr);
    j["note"] = v.note;
    return j;
}

Json classification_json(const ClassificationReport& c, const ReactionNetwork& net) {
    Json j;
    j["species"] = net.species().names();
    j["complex_count"] = net.complexes().size();
    j["reaction_count"] = net.reactions().size();
    j["integer"] = c.integer;
    j["chemical"] = c.chemical;
    j["reversible"] = c.reversible;
    j["strongly_connected"] = c.strongly_connected;
    j["weakly_reversible"] = c.weakly_reversible;
    j["endotactic"] = verdict_flag(c.endotactic);
    j["strongly_endotactic"] = verdict_flag(c.strongly_endotactic);
    j["linkage_class_count"] = c.linkage_class_count;
    j["stoichiometric_rank"] = c.stoichiometric_rank;
    j["details"] = {{"endotactic", verdict_json(c.endotactic, net)},
                    {"strongly_endotactic", verdict_json(c.strongly_endotactic, net)}};
    return j;
}

std::vector<std::pair<std::string, std::optional<bool>>> property_flags(const ClassificationReport& c) {
    auto tri = [](const GeometricVerdict& v) -> std::optional<bool> {
        if (v.verdict == Verdict::Indeterminate) return std::nullopt;
        return v.verdict == Verdict::True;
    };
    return {{"integer", c.integer},
            {"chemical", c.chemical},
            {"reversible", c.reversible},
            {"strongly_connected", c.strongly_connected},
            {"weakly_reversible", c.weakly_reversible},
            {"endotactic", tri(c.endotactic)},
            {"strongly_endotactic", tri(c.strongly_endotactic)}};
}

CommandResult finish(Json doc, int exit_code) {
    CommandResult out;
    out.exit_code = exit_code;
    out.primary = doc.dump(2) + "\n";
    out.report = std::move(doc);
    return out;
}

/// A point of the allotment closure, used when a file carries no x0.
Vector placeholder_point(const Allotment& allotment) {
    Vector x;
    for (const auto& k : allotment.intervals()) x.push_back(std::clamp(1.0, k.lo(), k.hi()));
    return x;
}

SubconfinedSystem require_system(const NetworkFile& file) {
    if (!file.x0) throw std::invalid_argument("this command needs an x0 line in the network file");
    return file.system();
}

Json simulation_json(const SimulationOptions& sim, double dt, const Trajectory& traj, const ReactionNetwork& net) {
    Json j;
    j["t_end"] = sim.t_end;
    j["h"] = sim.h;
    j["dt"] = dt;
    j["scheme"] = to_string(sim.scheme);
    j["seed"] = sim.seed;
    j["status"] = to_string(traj.status);
    j["samples"] = traj.states.size();
    j["t_final"] = traj.times.back();
    j["initial_state"] = vector_json(traj.states.front());
    j["final_state"] = vector_json(traj.states.back());
    j["conservation_residual"] = conservation_residual(net, traj);
    j["abort_state"] = traj.abort_state ? vector_json(*traj.abort_state) : Json(nullptr);
    j["warnings"] = traj.warnings;
    return j;
}

struct SimulationRun {
    double dt;
    Trajectory trajectory;
};

SimulationRun run_simulation(const SubconfinedSystem& system, const SimulationOptions& sim) {
    const double dt = std::min(sim.dt, sim.t_end);
    const auto path = sample_rate_path(system, dt, sim.t_end, sim.seed, sim.scheme);
    const Vector start = sim.x_init.value_or(system.base_point());
    return {dt, simulate(system, start, path, sim.t_end, sim.h)};
}

EnsembleSpec ensemble_spec(const EnsembleOptions& o, const SubconfinedSystem& system) {
    EnsembleSpec e;
    e.n_traj = o.n_traj;
    e.seed = o.seed;
    e.init = Box{o.init_lo.value_or(system.base_point()), o.init_hi.value_or(o.init_lo.value_or(system.base_point()))};
    e.dt = std::min(o.dt, o.t_end);
    e.t_end = o.t_end;
    e.h = o.h;
    e.scheme = o.scheme;
    e.threads = o.threads;
    return e;
}

Json ensemble_json(const EnsembleSpec& e) {
    return Json{{"n_traj", e.n_traj},   {"seed", e.seed},         {"init_lo", vector_json(e.init.lo)},
                {"init_hi", vector_json(e.init.hi)}, {"dt", e.dt}, {"t_end", e.t_end},
                {"h", e.h},             {"scheme", to_string(e.scheme)}};
}

Json optional_number(const std::optional<double>& v) { return v ? number_or_null(*v) : Json(nullptr); }

}  // namespace

CommandResult error_result(const std::string& command, int exit_code, const std::string& message,
                           std::optional<std::size_t> line) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["tool"] = kToolName;
    doc["tool_version"] = kToolVersion;
    doc["command"] = command;
    doc["error"] = {{"message", message}, {"line", line ? Json(*line) : Json(nullptr)}};
    CommandResult out;
    out.exit_code = exit_code;
    out.report = std::move(doc);
    return out;
}

CommandResult cmd_check(const CheckOptions& options) {
    const auto in = load(options.input);
    const auto& net = in.file.network;
    const auto report = classify(net, options.reaction_limit);

    Json payload;
    payload["classification"] = classification_json(report, net);
    bool indeterminate = report.indeterminate();
    bool violated = false;
    if (options.verify_projective) {
        Json checks = Json::array();
        const auto original = property_flags(report);
        for (std::size_t s = 0; s < net.species().size() && net.species().size() > 1; ++s) {
            SpeciesSubset kept;
            for (std::size_t t = 0; t < net.species().size(); ++t) {
                if (t != s) kept.push_back(t);
            }
            const auto reduced = reduce_network(net, kept);
            const auto rc = classify(reduced, options.reaction_limit);
            indeterminate = indeterminate || rc.indeterminate();
            const auto flags = property_flags(rc);
            Json lost = Json::array();
            for (std::size_t p = 0; p < flags.size(); ++p) {
                if (original[p].second == true && flags[p].second == false) lost.push_back(flags[p].first);
            }
            violated = violated || !lost.empty();
            checks.push_back({{"removed", net.species().name(s)},
                              {"classification", classification_json(rc, reduced)},
                              {"lost_properties", lost}});
        }
        payload["projectivity"] = {{"reductions", checks}, {"holds", !violated}};
    }
    const int code = indeterminate ? kExitIndeterminate : violated ? kExitFalse : kExitOk;
    return finish(document("check", options.input, in.digest, std::move(payload)), code);
}

CommandResult cmd_reduce(const ReduceOptions& options) {
    const auto in = load(options.input);
    const auto& file = in.file;
    const auto& species = file.network.species();
    const auto kept = species.subset(options.keep);

    std::optional<std::vector<std::string>> repulsing;
    if (file.repulsing) {
        repulsing.emplace();
        for (auto s : kept) {
            const auto& name = species.name(s);
            if (std::find(file.repulsing->begin(), file.repulsing->end(), name) != file.repulsing->end()) {
                repulsing->push_back(name);
            }
        }
    }
    Json removed = Json::array();
    for (std::size_t s = 0; s < species.size(); ++s) {
        if (!std::binary_search(kept.begin(), kept.end(), s)) removed.push_back(species.name(s));
    }

    const auto allotment = file.allotments();
    const auto unbounded = file.has_rates() ? unbounded_removed_species(
                                                  SubconfinedSystem(file.network, file.tempering(), allotment,
                                                                    file.x0.value_or(placeholder_point(allotment))),
                                                  kept)
                                            : std::vector<std::string>{};
    if (!file.has_rates() || !unbounded.empty()) {
        const auto rnet = reduce_network(file.network, kept);
        std::vector<PositiveInterval> kept_allotment;
        for (auto s : kept) kept_allotment.push_back(file.allotment[s]);
        std::optional<Vector> x0;
        if (file.x0) x0 = project_vector(*file.x0, kept);
        const NetworkFile out_file{rnet, std::vector<std::optional<PositiveInterval>>(rnet.reactions().size()),
                                   kept_allotment, x0, repulsing};
        const auto text = serialize_network(out_file);
        Json reactions = Json::array();
        for (const auto& r : rnet.reactions()) reactions.push_back({{"reaction", format_reaction(r, rnet.species())}});
        Json payload;
        payload["kept"] = rnet.species().names();
        payload["removed"] = removed;
        payload["projectable"] = false;
        payload["unbounded_species"] = unbounded;
        payload["note"] = file.has_rates()
                              ? "removed species with unbounded allotment; reduced network emitted without rates"
                              : "input has reactions without rates; reduced network emitted without rates";
        payload["reactions"] = reactions;
        payload["x0"] = x0 ? vector_json(*x0) : Json(nullptr);
        payload["network"] = text;
        CommandResult result;
        result.report = document("reduce", options.input, in.digest, std::move(payload));
        result.primary = text;
        result.exit_code = file.has_rates() ? kExitFalse : kExitOk;
        return result;
    }

    const SubconfinedSystem system(file.network, file.tempering(), allotment,
                                   file.x0.value_or(placeholder_point(allotment)));
    const auto projection = project_system_detailed(system, kept);
    const auto& reduced = projection.system;
    const auto& rnet = reduced.network();
    auto out_file = network_file_from_system(reduced, repulsing);
    if (!file.x0) out_file.x0.reset();
    const auto text = serialize_network(out_file);

    Json reactions = Json::array();
    for (std::size_t r = 0; r < rnet.reactions().size(); ++r) {
        Json sources = Json::array();
        for (const auto& src : projection.sources) {
            if (src.reduced != r) continue;
            sources.push_back({{"reaction", format_reaction(file.network.reactions()[src.source], species)},
                               {"k", interval_json(*file.rates[src.source])},
                               {"k_projected", interval_json(src.rate)}});
        }
        reactions.push_back({{"reaction", format_reaction(rnet.reactions()[r], rnet.species())},
                             {"k", interval_json(reduced.tempering()[r])},
                             {"merged", sources.size() > 1},
                             {"sources", sources}});
    }
    Json payload;
    payload["kept"] = rnet.species().names();
    payload["removed"] = removed;
    payload["projectable"] = true;
    payload["merge_rule"] = "hull";
    payload["reactions"] = reactions;
    payload["x0"] = out_file.x0 ? vector_json(*out_file.x0) : Json(nullptr);
    payload["network"] = text;

    CommandResult result;
    result.report = document("reduce", options.input, in.digest, std::move(payload));
    result.primary = text;
    return result;
}

CommandResult cmd_simulate(const SimulateOptions& options) {
    const auto in = load(options.input);
    const auto system = require_system(in.file);
    const auto run = run_simulation(system, options.simulation);

    Json payload;
    payload["simulation"] = simulation_json(options.simulation, run.dt, run.trajectory, system.network());
    CommandResult result;
    result.report = document("simulate", options.input, in.digest, std::move(payload));
    result.primary = trajectory_csv(run.trajectory, system.species());
    result.exit_code = run.trajectory.aborted() ? kExitFalse : kExitOk;
    return result;
}

CommandResult cmd_verify_vertexical(const VerifyOptions& options) {
    const auto in = load(options.input);
    const auto system = require_system(in.file);
    const auto kept = system.species().subset(options.keep);
    const auto run = run_simulation(system, options.simulation);

    std::optional<std::string> against_digest;
    FactorizationReport report;
    if (options.against) {
        const auto text = read_text_file(*options.against);
        against_digest = content_digest(text);
        const auto reduced_file = parse_network(text);
        const auto allotment = reduced_file.allotments();
        const SubconfinedSystem reduced(reduced_file.network, reduced_file.tempering(), allotment,
                                        reduced_file.x0.value_or(placeholder_point(allotment)));
        report = verify_factorization_against(system, reduced, run.trajectory, kept, options.eps, options.tol);
    } else {
        report = verify_factorization(system, run.trajectory, kept, options.eps, options.tol);
    }

    Json faces = Json::array();
    std::size_t sample_count = 0;
    for (const auto& f : report.faces) {
        Json segs = Json::array();
        for (const auto& s : f.segments) segs.push_back({s.first, s.last});
        Json skipped = Json::array();
        for (const auto& s : f.skipped_segments) skipped.push_back({s.first, s.last});
        sample_count += f.samples.size();
        faces.push_back({{"face", f.face.pattern()},
                         {"projected_vertex", f.projected.pattern()},
                         {"segments", segs},
                         {"skipped_segments", skipped},
                         {"straddling_samples", f.straddling_samples},
                         {"samples", f.samples.size()},
                         {"max_residual", number_or_null(f.max_residual)},
                         {"max_tangent_defect", f.max_tangent_defect},
                         {"pass", f.pass}});
    }
    Json payload;
    payload["kept"] = system.species().restrict(kept).names();
    payload["eps"] = options.eps;
    payload["tol"] = options.tol;
    payload["against"] = options.against ? Json{{"path", *options.against}, {"digest", *against_digest}} : Json(nullptr);
    payload["simulation"] = simulation_json(options.simulation, run.dt, run.trajectory, system.network());
    payload["factorization"] = {{"faces", faces},
                                {"segment_count", report.segment_count},
                                {"sample_count", sample_count},
                                {"max_residual", number_or_null(report.max_residual)},
                                {"max_tangent_defect", report.max_tangent_defect},
                                {"reparametrization", report.reparametrization},
                                {"pass", report.pass}};
    return finish(document("verify-vertexical", options.input, in.digest, std::move(payload)),
                  report.pass ? kExitOk : kExitFalse);
}

CommandResult cmd_persistence(const PersistenceOptions& options) {
    const auto in = load(options.input);
    const auto system = require_system(in.file);
    const auto ensemble = ensemble_spec(options.ensemble, system);
    const auto report = persistence_probe(system, ensemble);

    Json trajectories = Json::array();
    for (const auto& t : report.trajectories) {
        trajectories.push_back({{"seed", t.seed},
                                {"sampled", t.sampled},
                                {"start", vector_json(t.start)},
                                {"status", to_string(t.status)},
                                {"samples", t.samples},
                                {"t_final", t.final_time},
                                {"min_state", vector_json(t.min_state)},
                                {"max_state", vector_json(t.max_state)},
                                {"min_boundary_distance", number_or_null(t.min_boundary_distance)},
                                {"tail_min_boundary_distance", number_or_null(t.tail_min_boundary_distance)},
                                {"tail_mean_boundary_distance", number_or_null(t.tail_mean_boundary_distance)}});
    }
    Json payload;
    payload["ensemble"] = ensemble_json(ensemble);
    payload["persistence"] = {{"min_boundary_distance", optional_number(report.min_boundary_distance)},
                              {"min_vertex_distances", vector_json(report.min_vertex_distances)},
                              {"min_zero_facet_distances", vector_json(report.min_zero_facet_distances)},
                              {"min_one_facet_distances", vector_json(report.min_one_facet_distances)},
                              {"floor_aborts", report.floor_aborts},
                              {"ceiling_aborts", report.ceiling_aborts},
                              {"unsampled", report.unsampled},
                              {"trajectories", trajectories}};
    const bool clean = report.floor_aborts == 0 && report.ceiling_aborts == 0 && report.unsampled == 0;
    return finish(document("persistence", options.input, in.digest, std::move(payload)), clean ? kExitOk : kExitFalse);
}

CommandResult cmd_repulsion(const RepulsionOptions& options) {
    const auto in = load(options.input);
    const auto system = require_system(in.file);
    const auto ensemble = ensemble_spec(options.ensemble, system);
    const auto target = Face::parse(system.species(), options.target);
    const auto table = repulsion_probe(system, target, options.d1, ensemble);

    std::set<std::string> repulsing;
    if (in.file.repulsing) repulsing.insert(in.file.repulsing->begin(), in.file.repulsing->end());
    Json entries = Json::array();
    for (const auto& e : table.entries) {
        entries.push_back({{"d1", e.d1},
                           {"sampled", e.sampled},
                           {"unsampled", e.unsampled},
                           {"aborted", e.aborted},
                           {"min_start_distance", optional_number(e.min_start_distance)},
                           {"d2", optional_number(e.d2)}});
    }
    Json payload;
    payload["ensemble"] = ensemble_json(ensemble);
    payload["repulsion"] = {{"target", target.pattern()},
                            {"target_class", in.file.repulsing ? Json(to_string(classify_face(target, repulsing)))
                                                               : Json(nullptr)},
                            {"entries", entries},
                            {"flat_positive", table.flat_positive()}};
    return finish(document("repulsion", options.input, in.digest, std::move(payload)),
                  table.flat_positive() ? kExitOk : kExitFalse);
}

CommandResult cmd_permanence(const PermanenceOptions& options) {
    const auto in = load(options.input);
    const auto system = require_system(in.file);
    const auto ensemble = ensemble_spec(options.ensemble, system);
    const Box k{options.k_lo, options.k_hi};
    const Box kplus{options.kplus_lo, options.kplus_hi};
    const auto report = permanence_probe(system, k, kplus, ensemble);

    Json trajectories = Json::array();
    for (const auto& t : report.trajectories) {
        trajectories.push_back({{"seed", t.seed},
                                {"sampled", t.sampled},
                                {"start", vector_json(t.start)},
                                {"status", to_string(t.status)},
                                {"entry_time", optional_number(t.entry_time)},
                                {"exit_time", optional_number(t.exit_time)}});
    }
    Json payload;
    payload["ensemble"] = ensemble_json(ensemble);
    payload["permanence"] = {{"k_lo", vector_json(k.lo)},         {"k_hi", vector_json(k.hi)},
                             {"kplus_lo", vector_json(kplus.lo)}, {"kplus_hi", vector_json(kplus.hi)},
                             {"exits", report.exits},             {"aborts", report.aborts},
                             {"unsampled", report.unsampled},     {"pass", report.pass},
                             {"trajectories", trajectories}};
    return finish(document("permanence", options.input, in.digest, std::move(payload)),
                  report.pass ? kExitOk : kExitFalse);
}

}  // namespace crnkit
