#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crnkit/dynamics.hpp"
#include "crnkit/interval.hpp"
#include "crnkit/network.hpp"
#include "crnkit/system.hpp"

namespace crnkit {

/// In-memory form of a network file. `rates` and `allotment` are aligned with the
/// network's reactions and species. A reaction written without `; k = ...` has no rate;
/// such files describe a bare network.
struct NetworkFile {
    ReactionNetwork network;
    std::vector<std::optional<PositiveInterval>> rates;
    std::vector<PositiveInterval> allotment;
    std::optional<Vector> x0;
    std::optional<std::vector<std::string>> repulsing;

    bool has_rates() const;
    /// Throws std::invalid_argument when some reaction has no rate.
    Tempering tempering() const;
    Allotment allotments() const { return Allotment(network.species(), allotment); }
    /// Throws std::invalid_argument when x0 is missing.
    SubconfinedSystem system() const;

    friend bool operator==(const NetworkFile&, const NetworkFile&) = default;
};

/// Parses the line-oriented network format:
///
///     species A B
///     complex 3C
///     reaction 2A + B -> 0 ; k = [1, 2]
///     reaction A -> B
///     allotment B = (0.5, inf)
///     x0 = [1, 0.25]
///     repulsing = {A}
///
/// `#` starts a comment. Intervals take `[`/`(` and `]`/`)` for closed and open
/// endpoints. Throws ParseError with the offending line.
NetworkFile parse_network(std::string_view text);
NetworkFile read_network_file(const std::string& path);

/// Canonical text: species, isolated complexes, reactions, non-default allotments,
/// x0, repulsing set, in that order.
std::string serialize_network(const NetworkFile& file);

NetworkFile network_file_from_system(const SubconfinedSystem& system,
                                     std::optional<std::vector<std::string>> repulsing = std::nullopt);

/// Shortest decimal text that reads back to the same double; "inf" for infinity.
std::string format_number(double v);
std::string format_interval(const PositiveInterval& interval);
std::string format_complex(const Complex& complex, const SpeciesSet& species);
std::string format_reaction(const Reaction& reaction, const SpeciesSet& species);

/// Header `t,x_<name>...` and one row per sample.
std::string trajectory_csv(const Trajectory& trajectory, const SpeciesSet& species);

std::string read_text_file(const std::string& path);
/// "sha256:" followed by the hex digest of `bytes`.
std::string content_digest(std::string_view bytes);

}  // namespace crnkit
