#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crnkit/cube.hpp"
#include "crnkit/dynamics.hpp"
#include "crnkit/system.hpp"

namespace crnkit {

/// Inclusive range of sample indices.
struct IndexRange {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t size() const noexcept { return last - first + 1; }
    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Maximal runs of consecutive samples whose cube image lies in the eps-block of face.
std::vector<IndexRange> block_segments(const Trajectory& trajectory, const Face& face, double eps);

/// Allotment (0, inf) on kept species and to_orthant of (eps, 1 - eps) elsewhere.
Allotment vertexical_allotment(const SpeciesSet& species, const SpeciesSubset& kept, double eps);

struct TangentSample {
    std::size_t index = 0;
    double time = 0.0;
    Vector point;          // projected state
    Vector tangent;        // central-difference estimate of the projected velocity
    Vector coefficients;   // fitted reduced rates
    double residual = 0.0;        // distance from the reduced fiber
    double tangent_defect = 0.0;  // distance from the projected realized velocity
};

struct FaceFactorization {
    Face face;
    Face projected;  // image of the face in the reduced cube
    std::vector<IndexRange> segments;
    std::vector<IndexRange> skipped_segments;  // fewer than three samples
    std::size_t straddling_samples = 0;        // stencils crossing a rate change
    std::vector<TangentSample> samples;
    double max_residual = 0.0;
    double max_tangent_defect = 0.0;
    bool pass = true;
};

struct FactorizationReport {
    SpeciesSubset kept;
    double eps = 0.0;
    double tol = 0.0;
    std::vector<FaceFactorization> faces;
    std::size_t segment_count = 0;
    double max_residual = 0.0;
    double max_tangent_defect = 0.0;
    bool pass = true;
    std::string reparametrization = "identity";
};

/// Checks on a simulated trajectory that every segment inside an eps-block of a face
/// collapsed by the projection onto `kept` projects to a trajectory of the reduced
/// system built from the vertexical allotment. Tangents are central differences at
/// segment-interior samples.
FactorizationReport verify_factorization(const SubconfinedSystem& system, const Trajectory& trajectory,
                                         const SpeciesSubset& kept, double eps, double tol);

/// Same check against a caller-supplied reduced system.
FactorizationReport verify_factorization_against(const SubconfinedSystem& system, const SubconfinedSystem& reduced,
                                                 const Trajectory& trajectory, const SpeciesSubset& kept, double eps,
                                                 double tol);

/// Axis-aligned box in the orthant.
struct Box {
    Vector lo;
    Vector hi;

    /// Throws std::invalid_argument unless lo <= hi componentwise with matching sizes.
    void validate(std::size_t dimension) const;
    bool contains(const Vector& x, double rel_tol = 1e-9) const;
    bool contains(const Box& inner) const;
};

struct EnsembleSpec {
    std::size_t n_traj = 0;
    std::uint64_t seed = 0;  // trajectory i uses seed + i
    Box init;
    double dt = 1.0;
    double t_end = 10.0;
    double h = 1e-3;
    RateScheme scheme = RateScheme::UniformRandom;
    unsigned threads = 0;  // 0: hardware concurrency
    std::size_t max_attempts = 1000;
};

/// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

/// Uniform draws from `box`, projected onto the invariant polyhedron of the base point,
/// until one is strictly positive, inside the allotment closure, and accepted by
/// `accept`. Empty after max_attempts failures.
std::optional<Vector> sample_start(const SubconfinedSystem& system, const Box& box, std::uint64_t seed,
                                   std::size_t max_attempts,
                                   const std::function<bool(const Vector&)>& accept = nullptr);

struct TrajectorySummary {
    std::uint64_t seed = 0;
    bool sampled = false;
    Vector start;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    std::size_t samples = 0;
    double final_time = 0.0;
    Vector min_state;
    Vector max_state;
    double min_boundary_distance = 0.0;
    double tail_min_boundary_distance = 0.0;
    double tail_mean_boundary_distance = 0.0;
};

struct PersistenceReport {
    std::vector<TrajectorySummary> trajectories;
    std::optional<double> min_boundary_distance;
    std::vector<double> min_vertex_distances;
    std::vector<double> min_zero_facet_distances;
    std::vector<double> min_one_facet_distances;
    std::size_t floor_aborts = 0;
    std::size_t ceiling_aborts = 0;
    std::size_t unsampled = 0;
};

PersistenceReport persistence_probe(const SubconfinedSystem& system, const EnsembleSpec& ensemble);

struct RepulsionEntry {
    double d1 = 0.0;
    std::size_t sampled = 0;
    std::size_t unsampled = 0;
    std::size_t aborted = 0;
    std::optional<double> min_start_distance;
    std::optional<double> d2;  // smallest distance to the target reached
};

struct RepulsionTable {
    Face target;
    std::vector<RepulsionEntry> entries;

    /// Every sampled column keeps a positive distance.
    bool flat_positive() const;
};

/// For each d1, trajectories start at cube distance at least d1 from the target.
/// Requires a positive increasing grid.
RepulsionTable repulsion_probe(const SubconfinedSystem& system, const Face& target, const std::vector<double>& d1_grid,
                               const EnsembleSpec& ensemble);

struct PermanenceTrajectory {
    std::uint64_t seed = 0;
    bool sampled = false;
    Vector start;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    std::optional<double> entry_time;
    std::optional<double> exit_time;
};

struct PermanenceReport {
    Box k;
    Box kplus;
    std::vector<PermanenceTrajectory> trajectories;
    std::size_t exits = 0;
    std::size_t aborts = 0;
    std::size_t unsampled = 0;
    bool pass = true;
};

/// Starts are drawn in K (the ensemble's init box is ignored); a trajectory fails when
/// it leaves K+ after first entering it, or aborts.
PermanenceReport permanence_probe(const SubconfinedSystem& system, const Box& k, const Box& kplus,
                                  const EnsembleSpec& ensemble);

}  // namespace crnkit
