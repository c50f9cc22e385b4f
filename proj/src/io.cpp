#include "crnkit/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "crnkit/errors.hpp"

namespace crnkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool starts_with_word(std::string_view s, std::string_view word) {
    if (s.substr(0, word.size()) != word) return false;
    return s.size() == word.size() || std::isspace(static_cast<unsigned char>(s[word.size()])) ||
           s[word.size()] == '=';
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::vector<std::string> split_names(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

class LineParser {
public:
    LineParser(std::size_t line, std::string_view text) : line_(line), text_(text) {}

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

    double number(std::string_view s) const {
        s = trim(s);
        if (s == "inf" || s == "+inf") return kInfinity;
        double v = 0.0;
        const char* begin = s.data();
        if (!s.empty() && s.front() == '+') ++begin;
        auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            fail("expected a number, got '" + std::string(s) + "'");
        }
        return v;
    }

    PositiveInterval interval(std::string_view s) const {
        s = trim(s);
        if (s.size() < 2) fail("expected an interval");
        const char open = s.front();
        const char close = s.back();
        if ((open != '[' && open != '(') || (close != ']' && close != ')')) {
            fail("interval must be enclosed in [ or ( and ] or )");
        }
        const auto body = s.substr(1, s.size() - 2);
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) fail("interval needs two comma-separated endpoints");
        const double lo = number(body.substr(0, comma));
        const double hi = number(body.substr(comma + 1));
        try {
            return PositiveInterval(lo, hi, open == '(', close == ')');
        } catch (const std::invalid_argument& e) {
            fail(std::string("invalid interval: ") + e.what());
        }
    }

    Vector vector(std::string_view s) const {
        s = trim(s);
        if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail("expected a bracketed list");
        Vector out;
        auto body = trim(s.substr(1, s.size() - 2));
        if (body.empty()) return out;
        std::size_t pos = 0;
        while (true) {
            const auto comma = body.find(',', pos);
            out.push_back(number(body.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        return out;
    }

    Complex complex(std::string_view s, const SpeciesSet& species) const {
        s = trim(s);
        if (s.empty()) fail("empty complex");
        Vector coeffs(species.size(), 0.0);
        if (s == "0") return Complex(coeffs);
        std::vector<bool> seen(species.size(), false);
        std::size_t i = 0;
        auto skip_space = [&] {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        };
        while (true) {
            skip_space();
            double coeff = 1.0;
            const bool digit_next = i + 1 < s.size() && (std::isdigit(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '.');
            if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.' || (s[i] == '-' && digit_next))) {
                auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), coeff);
                if (ec != std::errc() || !std::isfinite(coeff)) fail("bad coefficient in complex '" + std::string(s) + "'");
                i = static_cast<std::size_t>(ptr - s.data());
                skip_space();
            } else if (i < s.size() && s[i] == '-') {
                coeff = -1.0;
                ++i;
            }
            if (i >= s.size() || !is_name_start(s[i])) fail("expected a species name in complex '" + std::string(s) + "'");
            const auto start = i;
            while (i < s.size() && is_name_char(s[i])) ++i;
            const std::string name(s.substr(start, i - start));
            const auto idx = species.index_of(name);
            if (!idx) fail("undeclared species '" + name + "'");
            if (seen[*idx]) fail("species '" + name + "' repeated in complex");
            seen[*idx] = true;
            coeffs[*idx] = coeff;
            skip_space();
            if (i == s.size()) break;
            if (s[i] != '+') fail("expected '+' between terms of complex '" + std::string(s) + "'");
            ++i;
        }
        return Complex(coeffs);
    }

private:
    std::size_t line_;
    std::string_view text_;
};

}  // namespace

bool NetworkFile::has_rates() const {
    return std::all_of(rates.begin(), rates.end(), [](const auto& k) { return k.has_value(); });
}

Tempering NetworkFile::tempering() const {
    std::vector<PositiveInterval> k;
    for (std::size_t r = 0; r < rates.size(); ++r) {
        if (!rates[r]) {
            throw std::invalid_argument("reaction " + format_reaction(network.reactions()[r], network.species()) +
                                        " has no rate");
        }
        k.push_back(*rates[r]);
    }
    return Tempering(network, std::move(k));
}

SubconfinedSystem NetworkFile::system() const {
    if (!x0) throw std::invalid_argument("network file has no x0 line");
    return SubconfinedSystem(network, tempering(), allotments(), *x0);
}

NetworkFile parse_network(std::string_view text) {
    std::optional<SpeciesSet> species;
    std::vector<Complex> isolated;
    std::vector<Reaction> reactions;
    std::vector<std::optional<PositiveInterval>> rates;
    std::vector<std::optional<PositiveInterval>> allotment;
    std::optional<Vector> x0;
    std::optional<std::vector<std::string>> repulsing;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        auto raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        const auto line = trim(raw);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        LineParser p(line_no, line);
        auto need_species = [&] {
            if (!species) p.fail("the species line must come first");
            return *species;
        };
        auto after_equals = [&](std::string_view s) {
            const auto eq = s.find('=');
            if (eq == std::string_view::npos) p.fail("expected '='");
            return std::pair{trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
        };

        if (starts_with_word(line, "species")) {
            if (species) p.fail("species declared twice");
            try {
                species.emplace(split_names(line.substr(7)));
            } catch (const std::invalid_argument& e) {
                p.fail(e.what());
            }
            allotment.assign(species->size(), std::nullopt);
        } else if (starts_with_word(line, "complex")) {
            isolated.push_back(p.complex(line.substr(7), need_species()));
        } else if (starts_with_word(line, "reaction")) {
            const auto& sp = need_species();
            const auto body = line.substr(8);
            const auto semi = std::min(body.find(';'), body.size());
            const auto arrow = body.find("->");
            if (arrow == std::string_view::npos || arrow > semi) p.fail("reaction needs '->'");
            Reaction r{p.complex(body.substr(0, arrow), sp), p.complex(body.substr(arrow + 2, semi - arrow - 2), sp)};
            std::optional<PositiveInterval> k;
            if (semi < body.size()) {
                const auto [key, value] = after_equals(body.substr(semi + 1));
                if (key != "k") p.fail("reaction tempering must be written 'k = ...'");
                k = p.interval(value);
                if (!k->bounded_away()) p.fail("reaction rate interval must lie within (0, inf)");
            }
            if (std::find(reactions.begin(), reactions.end(), r) != reactions.end()) p.fail("duplicate reaction");
            reactions.push_back(std::move(r));
            rates.push_back(k);
        } else if (starts_with_word(line, "allotment")) {
            const auto& sp = need_species();
            const auto [name, value] = after_equals(line.substr(9));
            const auto idx = sp.index_of(std::string(name));
            if (!idx) p.fail("undeclared species '" + std::string(name) + "'");
            if (allotment[*idx]) p.fail("allotment for '" + std::string(name) + "' given twice");
            allotment[*idx] = p.interval(value);
        } else if (starts_with_word(line, "x0")) {
            const auto& sp = need_species();
            if (x0) p.fail("x0 given twice");
            const auto [key, value] = after_equals(line);
            x0 = p.vector(value);
            if (x0->size() != sp.size()) p.fail("x0 has " + std::to_string(x0->size()) + " entries, expected " +
                                                 std::to_string(sp.size()));
            for (double v : *x0) {
                if (!(v > 0.0) || !std::isfinite(v)) p.fail("x0 entries must be positive and finite");
            }
        } else if (starts_with_word(line, "repulsing")) {
            const auto& sp = need_species();
            if (repulsing) p.fail("repulsing set given twice");
            const auto [key, value] = after_equals(line);
            if (value.size() < 2 || value.front() != '{' || value.back() != '}') p.fail("repulsing set needs braces");
            auto names = split_names(value.substr(1, value.size() - 2));
            for (const auto& n : names) {
                if (!sp.index_of(n)) p.fail("undeclared species '" + n + "'");
            }
            repulsing = std::move(names);
        } else {
            p.fail("unrecognized line '" + std::string(line) + "'");
        }
        if (end == text.size()) break;
    }
    if (!species) throw ParseError(line_no, "missing species line");

    std::vector<PositiveInterval> allot;
    for (const auto& a : allotment) allot.push_back(a.value_or(PositiveInterval::whole()));
    auto network = ReactionNetwork::from_reactions(*species, reactions, isolated);
    return NetworkFile{std::move(network), std::move(rates), std::move(allot), std::move(x0), std::move(repulsing)};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

NetworkFile read_network_file(const std::string& path) { return parse_network(read_text_file(path)); }

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

std::string format_interval(const PositiveInterval& k) {
    return std::string(k.lo_open() ? "(" : "[") + format_number(k.lo()) + ", " + format_number(k.hi()) +
           (k.hi_open() ? ")" : "]");
}

std::string format_complex(const Complex& complex, const SpeciesSet& species) {
    std::string out;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        const double c = complex[i];
        if (c == 0.0) continue;
        if (!out.empty()) out += " + ";
        const auto& name = species.name(i);
        if (c == 1.0) {
            out += name;
        } else if (c == -1.0) {
            out += "-" + name;
        } else {
            out += format_number(c);
            if (name.front() == 'e' || name.front() == 'E') out += ' ';
            out += name;
        }
    }
    return out.empty() ? "0" : out;
}

std::string format_reaction(const Reaction& reaction, const SpeciesSet& species) {
    return format_complex(reaction.reactant, species) + " -> " + format_complex(reaction.product, species);
}

std::string serialize_network(const NetworkFile& file) {
    const auto& net = file.network;
    const auto& sp = net.species();
    std::ostringstream out;
    out << "species";
    for (const auto& n : sp.names()) out << ' ' << n;
    out << '\n';
    std::vector<bool> used(net.complexes().size(), false);
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        used[net.reactant_index(r)] = used[net.product_index(r)] = true;
    }
    for (std::size_t c = 0; c < net.complexes().size(); ++c) {
        if (!used[c]) out << "complex " << format_complex(net.complexes()[c], sp) << '\n';
    }
    for (std::size_t r = 0; r < net.reactions().size(); ++r) {
        out << "reaction " << format_reaction(net.reactions()[r], sp);
        if (file.rates[r]) out << " ; k = " << format_interval(*file.rates[r]);
        out << '\n';
    }
    for (std::size_t s = 0; s < sp.size(); ++s) {
        if (file.allotment[s] != PositiveInterval::whole()) {
            out << "allotment " << sp.name(s) << " = " << format_interval(file.allotment[s]) << '\n';
        }
    }
    if (file.x0) {
        out << "x0 = [";
        for (std::size_t s = 0; s < file.x0->size(); ++s) out << (s ? ", " : "") << format_number((*file.x0)[s]);
        out << "]\n";
    }
    if (file.repulsing) {
        out << "repulsing = {";
        for (std::size_t s = 0; s < file.repulsing->size(); ++s) out << (s ? ", " : "") << (*file.repulsing)[s];
        out << "}\n";
    }
    return out.str();
}

NetworkFile network_file_from_system(const SubconfinedSystem& system,
                                     std::optional<std::vector<std::string>> repulsing) {
    const auto& k = system.tempering().intervals();
    return NetworkFile{system.network(), std::vector<std::optional<PositiveInterval>>(k.begin(), k.end()),
                       system.allotment().intervals(), system.base_point(), std::move(repulsing)};
}

std::string trajectory_csv(const Trajectory& trajectory, const SpeciesSet& species) {
    std::string out = "t";
    for (const auto& n : species.names()) out += ",x_" + n;
    out += '\n';
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out += format_number(trajectory.times[i]);
        for (double v : trajectory.states[i]) out += ',' + format_number(v);
        out += '\n';
    }
    return out;
}

std::string content_digest(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 0xF];
    }
    return out;
}

}  // namespace crnkit
