#include "crnkit/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "crnkit/reduction.hpp"
#include "crnkit/stoichiometry.hpp"

namespace crnkit {

namespace {

constexpr std::uint64_t kStartStream = 0x9E3779B97F4A7C15ULL;

double max_abs_difference(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Vector clamp_into(const Allotment& allotment, Vector x) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], allotment[i].lo(), allotment[i].hi());
    return x;
}

using ReducedFor = std::function<SubconfinedSystem(const Vector& block_sample)>;

FactorizationReport run_factorization(const SubconfinedSystem& system, const Trajectory& trajectory,
                                      const SpeciesSubset& kept, double eps, double tol, const ReducedFor& reduced_for) {
    const auto& species = system.species();
    if (kept.empty() || kept.size() >= species.size()) {
        throw std::invalid_argument("kept species must be a proper nonempty subset");
    }
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");

    FactorizationReport report;
    report.kept = kept;
    report.eps = eps;
    report.tol = tol;
    const auto& t = trajectory.times;
    const auto& x = trajectory.states;
    const auto& path = trajectory.rate_path;

    for (const auto& face : faces_collapsed_by(species, kept)) {
        FaceFactorization ff{face, face.project(kept), {}, {}, 0, {}, 0.0, 0.0, true};
        ff.segments = block_segments(trajectory, face, eps);
        std::optional<SubconfinedSystem> reduced;
        for (const auto& seg : ff.segments) {
            if (seg.size() < 3) {
                ff.skipped_segments.push_back(seg);
                continue;
            }
            if (!reduced) reduced = reduced_for(x[seg.first]);
            for (std::size_t i = seg.first + 1; i < seg.last; ++i) {
                if (path.at(t[i - 1]) != path.at(t[i])) {
                    ++ff.straddling_samples;
                    continue;
                }
                const double h1 = t[i] - t[i - 1];
                const double h2 = t[i + 1] - t[i];
                const double a = -h2 / (h1 * (h1 + h2));
                const double b = (h2 - h1) / (h1 * h2);
                const double c = h1 / (h2 * (h1 + h2));
                Vector derivative(x[i].size());
                for (std::size_t s = 0; s < derivative.size(); ++s) {
                    derivative[s] = a * x[i - 1][s] + b * x[i][s] + c * x[i + 1][s];
                }

                TangentSample sample;
                sample.index = i;
                sample.time = t[i];
                sample.point = project_vector(x[i], kept);
                sample.tangent = project_vector(derivative, kept);
                const auto fiber = fiber_contains(*reduced, sample.point, sample.tangent, tol);
                sample.residual = fiber.residual;
                sample.coefficients = fiber.coefficients;
                const auto realized = project_vector(mass_action_rhs(system.network(), path.at(t[i]), x[i]), kept);
                sample.tangent_defect = max_abs_difference(sample.tangent, realized);
                ff.max_residual = std::max(ff.max_residual, sample.residual);
                ff.max_tangent_defect = std::max(ff.max_tangent_defect, sample.tangent_defect);
                ff.samples.push_back(std::move(sample));
            }
        }
        ff.pass = ff.max_residual <= tol;
        report.segment_count += ff.segments.size();
        report.max_residual = std::max(report.max_residual, ff.max_residual);
        report.max_tangent_defect = std::max(report.max_tangent_defect, ff.max_tangent_defect);
        report.pass = report.pass && ff.pass;
        report.faces.push_back(std::move(ff));
    }
    return report;
}

template <class Summary, class Body>
std::vector<Summary> run_ensemble(const EnsembleSpec& ensemble, Body body) {
    std::vector<Summary> out(ensemble.n_traj);
    parallel_for(ensemble.n_traj, ensemble.threads, [&](std::size_t i) { out[i] = body(i, ensemble.seed + i); });
    return out;
}

void check_ensemble(const SubconfinedSystem& system, const EnsembleSpec& ensemble, bool needs_init) {
    if (needs_init && ensemble.n_traj > 0) ensemble.init.validate(system.species().size());
    if (!(ensemble.h > 0.0) || !(ensemble.dt > 0.0) || !(ensemble.t_end >= ensemble.dt)) {
        throw std::invalid_argument("ensemble needs h > 0, dt > 0, t_end >= dt");
    }
}

Trajectory run_one(const SubconfinedSystem& system, const EnsembleSpec& ensemble, const Vector& start,
                   std::uint64_t seed) {
    const auto path = sample_rate_path(system, ensemble.dt, ensemble.t_end, seed, ensemble.scheme);
    return simulate(system, start, path, ensemble.t_end, ensemble.h);
}

}  // namespace

std::vector<IndexRange> block_segments(const Trajectory& trajectory, const Face& face, double eps) {
    std::vector<IndexRange> out;
    bool open = false;
    for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
        const bool inside = block_contains(face, eps, to_cube(trajectory.states[i]));
        if (inside && !open) out.push_back({i, i});
        if (inside) out.back().last = i;
        open = inside;
    }
    return out;
}

Allotment vertexical_allotment(const SpeciesSet& species, const SpeciesSubset& kept, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
    const auto band = PositiveInterval::open(eps / (1.0 - eps), (1.0 - eps) / eps);
    std::vector<PositiveInterval> intervals;
    for (std::size_t s = 0; s < species.size(); ++s) {
        intervals.push_back(std::binary_search(kept.begin(), kept.end(), s) ? PositiveInterval::whole() : band);
    }
    return Allotment(species, std::move(intervals));
}

FactorizationReport verify_factorization(const SubconfinedSystem& system, const Trajectory& trajectory,
                                         const SpeciesSubset& kept, double eps, double tol) {
    return run_factorization(system, trajectory, kept, eps, tol, [&](const Vector& sample) {
        auto allotment = vertexical_allotment(system.species(), kept, eps);
        auto base = clamp_into(allotment, sample);
        return project_system(system.with_allotment(std::move(allotment), std::move(base)), kept);
    });
}

FactorizationReport verify_factorization_against(const SubconfinedSystem& system, const SubconfinedSystem& reduced,
                                                 const Trajectory& trajectory, const SpeciesSubset& kept, double eps,
                                                 double tol) {
    if (reduced.species() != system.species().restrict(kept)) {
        throw std::invalid_argument("reduced system species do not match the kept species");
    }
    return run_factorization(system, trajectory, kept, eps, tol, [&](const Vector&) { return reduced; });
}

void Box::validate(std::size_t dimension) const {
    if (lo.size() != dimension || hi.size() != dimension) throw std::invalid_argument("box has wrong dimension");
    for (std::size_t i = 0; i < dimension; ++i) {
        if (!(lo[i] <= hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
            throw std::invalid_argument("box needs finite lo <= hi");
        }
    }
}

bool Box::contains(const Vector& x, double rel_tol) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double slack = rel_tol * std::max(1.0, std::abs(x[i]));
        if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
    }
    return true;
}

bool Box::contains(const Box& inner) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (inner.lo[i] < lo[i] || inner.hi[i] > hi[i]) return false;
    }
    return true;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> guard(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::optional<Vector> sample_start(const SubconfinedSystem& system, const Box& box, std::uint64_t seed,
                                   std::size_t max_attempts, const std::function<bool(const Vector&)>& accept) {
    const auto ortho = orthonormalize(stoichiometric_basis(system.network()));
    std::mt19937_64 rng(seed ^ kStartStream);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Vector x(box.lo.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = box.lo[i] + unit_uniform(rng) * (box.hi[i] - box.lo[i]);
        x = project_onto_affine(ortho, system.base_point(), x);
        const bool positive = std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0 && std::isfinite(v); });
        if (!positive || !system.allotment().closure_contains(x)) continue;
        if (accept && !accept(x)) continue;
        return x;
    }
    return std::nullopt;
}

PersistenceReport persistence_probe(const SubconfinedSystem& system, const EnsembleSpec& ensemble) {
    check_ensemble(system, ensemble, true);
    const std::size_t n = system.species().size();

    struct Work {
        TrajectorySummary summary;
        std::vector<double> vertex;
        std::vector<double> zero_facet;
        std::vector<double> one_facet;
    };
    auto results = run_ensemble<Work>(ensemble, [&](std::size_t, std::uint64_t seed) {
        Work w;
        w.summary.seed = seed;
        const auto start = sample_start(system, ensemble.init, seed, ensemble.max_attempts);
        if (!start) return w;
        w.summary.sampled = true;
        w.summary.start = *start;
        const auto traj = run_one(system, ensemble, *start, seed);
        auto& s = w.summary;
        s.status = traj.status;
        s.samples = traj.states.size();
        s.final_time = traj.times.back();
        s.min_state = s.max_state = traj.states.front();
        s.min_boundary_distance = kInfinity;
        w.zero_facet.assign(n, kInfinity);
        w.one_facet.assign(n, kInfinity);
        const std::size_t tail_from = traj.states.size() - std::max<std::size_t>(1, traj.states.size() / 10);
        double tail_sum = 0.0;
        s.tail_min_boundary_distance = kInfinity;
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            const auto& x = traj.states[k];
            for (std::size_t i = 0; i < n; ++i) {
                s.min_state[i] = std::min(s.min_state[i], x[i]);
                s.max_state[i] = std::max(s.max_state[i], x[i]);
            }
            const auto d = boundary_distances(to_cube(x));
            s.min_boundary_distance = std::min(s.min_boundary_distance, d.boundary);
            if (w.vertex.empty()) w.vertex.assign(d.vertices.size(), kInfinity);
            for (std::size_t v = 0; v < d.vertices.size(); ++v) w.vertex[v] = std::min(w.vertex[v], d.vertices[v]);
            for (std::size_t i = 0; i < n; ++i) {
                w.zero_facet[i] = std::min(w.zero_facet[i], d.zero_facets[i]);
                w.one_facet[i] = std::min(w.one_facet[i], d.one_facets[i]);
            }
            if (k >= tail_from) {
                tail_sum += d.boundary;
                s.tail_min_boundary_distance = std::min(s.tail_min_boundary_distance, d.boundary);
            }
        }
        s.tail_mean_boundary_distance = tail_sum / static_cast<double>(traj.states.size() - tail_from);
        return w;
    });

    PersistenceReport report;
    auto fold = [](std::vector<double>& into, const std::vector<double>& from) {
        if (into.empty()) into = from;
        for (std::size_t i = 0; i < from.size(); ++i) into[i] = std::min(into[i], from[i]);
    };
    for (auto& w : results) {
        if (!w.summary.sampled) {
            ++report.unsampled;
        } else {
            if (w.summary.status == TrajectoryStatus::FloorAbort) ++report.floor_aborts;
            if (w.summary.status == TrajectoryStatus::CeilingAbort) ++report.ceiling_aborts;
            report.min_boundary_distance =
                std::min(report.min_boundary_distance.value_or(kInfinity), w.summary.min_boundary_distance);
            fold(report.min_vertex_distances, w.vertex);
            fold(report.min_zero_facet_distances, w.zero_facet);
            fold(report.min_one_facet_distances, w.one_facet);
        }
        report.trajectories.push_back(std::move(w.summary));
    }
    return report;
}

bool RepulsionTable::flat_positive() const {
    return std::all_of(entries.begin(), entries.end(), [](const RepulsionEntry& e) { return !e.d2 || *e.d2 > 0.0; });
}

RepulsionTable repulsion_probe(const SubconfinedSystem& system, const Face& target, const std::vector<double>& d1_grid,
                               const EnsembleSpec& ensemble) {
    check_ensemble(system, ensemble, true);
    if (target.species() != system.species()) throw std::invalid_argument("target face is over different species");
    for (std::size_t j = 0; j < d1_grid.size(); ++j) {
        if (!(d1_grid[j] > 0.0) || (j > 0 && !(d1_grid[j] > d1_grid[j - 1]))) {
            throw std::invalid_argument("d1 grid must be positive and increasing");
        }
    }

    struct Work {
        bool sampled = false;
        bool aborted = false;
        double start_distance = 0.0;
        double min_distance = 0.0;
    };
    RepulsionTable table{target, {}};
    for (std::size_t j = 0; j < d1_grid.size(); ++j) {
        const double d1 = d1_grid[j];
        EnsembleSpec column = ensemble;
        column.seed = ensemble.seed + j * ensemble.n_traj;
        auto results = run_ensemble<Work>(column, [&](std::size_t, std::uint64_t seed) {
            Work w;
            auto far_enough = [&](const Vector& x) { return face_distance(target, to_cube(x)) >= d1; };
            const auto start = sample_start(system, ensemble.init, seed, ensemble.max_attempts, far_enough);
            if (!start) return w;
            w.sampled = true;
            w.start_distance = face_distance(target, to_cube(*start));
            const auto traj = run_one(system, ensemble, *start, seed);
            w.aborted = traj.aborted();
            w.min_distance = kInfinity;
            for (const auto& x : traj.states) w.min_distance = std::min(w.min_distance, face_distance(target, to_cube(x)));
            return w;
        });
        RepulsionEntry entry;
        entry.d1 = d1;
        for (const auto& w : results) {
            if (!w.sampled) {
                ++entry.unsampled;
                continue;
            }
            ++entry.sampled;
            if (w.aborted) ++entry.aborted;
            entry.min_start_distance = std::min(entry.min_start_distance.value_or(kInfinity), w.start_distance);
            entry.d2 = std::min(entry.d2.value_or(kInfinity), w.min_distance);
        }
        table.entries.push_back(entry);
    }
    return table;
}

PermanenceReport permanence_probe(const SubconfinedSystem& system, const Box& k, const Box& kplus,
                                  const EnsembleSpec& ensemble) {
    check_ensemble(system, ensemble, false);
    const std::size_t n = system.species().size();
    k.validate(n);
    kplus.validate(n);
    if (!kplus.contains(k)) throw std::invalid_argument("K must lie inside K+");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(k.lo[i] > 0.0)) throw std::invalid_argument("boxes must lie in the positive orthant");
    }

    auto results = run_ensemble<PermanenceTrajectory>(ensemble, [&](std::size_t, std::uint64_t seed) {
        PermanenceTrajectory p;
        p.seed = seed;
        const auto start = sample_start(system, k, seed, ensemble.max_attempts,
                                        [&](const Vector& x) { return k.contains(x); });
        if (!start) return p;
        p.sampled = true;
        p.start = *start;
        const auto traj = run_one(system, ensemble, *start, seed);
        p.status = traj.status;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const bool inside = kplus.contains(traj.states[i]);
            if (!p.entry_time && inside) p.entry_time = traj.times[i];
            if (p.entry_time && !inside) {
                p.exit_time = traj.times[i];
                break;
            }
        }
        return p;
    });

    PermanenceReport report{k, kplus, {}, 0, 0, 0, true};
    for (auto& p : results) {
        if (!p.sampled) ++report.unsampled;
        if (p.exit_time) ++report.exits;
        if (p.sampled && p.status != TrajectoryStatus::Completed) ++report.aborts;
        report.trajectories.push_back(std::move(p));
    }
    report.pass = report.exits == 0 && report.aborts == 0 && report.unsampled == 0;
    return report;
}

}  // namespace crnkit
