#include "locell/registry.hpp"

#include "locell/abelian.hpp"
#include "locell/errors.hpp"
#include "locell/group_ops.hpp"
#include "locell/todd_coxeter.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace locell {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split(const std::string& s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(trim(std::string_view(s).substr(start)));
            return out;
        }
        out.push_back(trim(std::string_view(s).substr(start, pos - start)));
        start = pos + 1;
    }
}

// "file.reg line 7" for error messages.
struct Where {
    std::string file;
    std::size_t line = 0;

    std::string str() const { return file + " line " + std::to_string(line); }
};

std::uint64_t parse_unsigned(const std::string& text, const Where& at) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(at.str() + ": expected a number, got '" + text + "'");
    return v;
}

// Strip a trailing comment; returns the remaining text and stores the
// comment (the entry's citation when the line holds an entry).
std::string strip_comment(const std::string& line, std::string& citation) {
    std::size_t pos = line.find('#');
    if (pos == std::string::npos) {
        citation.clear();
        return trim(line);
    }
    citation = trim(std::string_view(line).substr(pos + 1));
    return trim(std::string_view(line).substr(0, pos));
}

RegistryEntry parse_group_line(const std::string& text, const std::string& citation,
                               const Where& at) {
    std::size_t assign = text.find(":=");
    if (assign == std::string::npos)
        throw ParseError(at.str() + ": expected 'label := construction'");
    RegistryEntry e;
    e.label = trim(std::string_view(text).substr(0, assign));
    e.citation = citation;
    if (e.label.empty()) throw ParseError(at.str() + ": empty label");

    std::string rhs = trim(std::string_view(text).substr(assign + 2));
    std::size_t open = rhs.find('[');
    std::size_t close = rhs.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError(at.str() + ": expected 'kind[...]' in entry '" + e.label + "'");
    std::string kind = trim(std::string_view(rhs).substr(0, open));
    e.body = trim(std::string_view(rhs).substr(open + 1, close - open - 1));

    if (kind == "perm") e.kind = EntryKind::Perm;
    else if (kind == "pres") e.kind = EntryKind::Pres;
    else if (kind == "fp") e.kind = EntryKind::FpOnly;
    else if (kind == "product") e.kind = EntryKind::Product;
    else throw ParseError(at.str() + ": unknown construction '" + kind + "'");

    std::istringstream options(rhs.substr(close + 1));
    std::string token;
    while (options >> token) {
        if (token == "expect") continue;
        std::size_t eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError(at.str() + ": stray token '" + token + "'");
        std::string key = token.substr(0, eq);
        std::uint64_t value = parse_unsigned(token.substr(eq + 1), at);
        if (key == "order") e.expected_order = value;
        else if (key == "center") e.expected_center_order = value;
        else if (key == "max_cosets") e.max_cosets = static_cast<std::uint32_t>(value);
        else throw ParseError(at.str() + ": unknown option '" + key + "'");
    }
    if (e.kind == EntryKind::FpOnly && (e.expected_order || e.expected_center_order))
        throw ParseError(at.str() + ": fp entry '" + e.label +
                         "' is never realized, so expectations cannot be checked");
    return e;
}

PermGroup realize_perm_body(const std::string& body, const Where& at) {
    std::vector<Permutation> gens;
    std::uint32_t degree = 0;
    for (const std::string& piece : split(body, ',')) {
        if (piece.empty()) throw ParseError(at.str() + ": empty generator");
        Permutation p = Permutation::from_cycles(piece);
        degree = std::max(degree, p.degree());
        gens.push_back(std::move(p));
    }
    for (auto& g : gens) g = g.extended(degree);
    return PermGroup(std::move(gens), degree);
}

// Body "a, b; a^3, (a*b)^2" -> the fp module's presentation grammar.
Presentation parse_pres_body(const std::string& body, const Where& at) {
    std::size_t semi = body.find(';');
    std::string gens = semi == std::string::npos ? body : body.substr(0, semi);
    std::string rels = semi == std::string::npos ? std::string() : body.substr(semi + 1);
    try {
        return Presentation::parse("gens: " + trim(gens) + "; rels: " + trim(rels));
    } catch (const ParseError& e) {
        throw ParseError(at.str() + ": " + e.what());
    }
}

std::vector<std::int64_t> parse_invariant_list(const std::string& text, const Where& at) {
    std::string inner = trim(text);
    if (inner.size() >= 2 && inner.front() == '[' && inner.back() == ']')
        inner = trim(std::string_view(inner).substr(1, inner.size() - 2));
    std::vector<std::int64_t> out;
    if (inner.empty()) return out;
    for (const std::string& piece : split(inner, ','))
        out.push_back(static_cast<std::int64_t>(parse_unsigned(piece, at)));
    return out;
}

// Iterate non-empty payload lines of a file.
template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    Where at{path.filename().string(), 0};
    std::string line;
    while (std::getline(in, line)) {
        ++at.line;
        std::string citation;
        std::string text = strip_comment(line, citation);
        if (text.empty()) continue;
        fn(text, citation, at);
    }
}

} // namespace

bool Catalogue::has(const std::string& label) const {
    return index_.count(label) != 0;
}

const RegistryEntry& Catalogue::entry(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw DomainError("unknown registry label '" + label + "'");
    return entries_[it->second];
}

const PermGroup& Catalogue::realization(const std::string& label) const {
    const RegistryEntry& e = entry(label);
    auto it = realizations_.find(label);
    if (it == realizations_.end())
        throw DomainError("entry '" + e.label + "' is fp-only and has no finite realization");
    return it->second;
}

const Presentation& Catalogue::presentation(const std::string& label) const {
    const RegistryEntry& e = entry(label);
    auto it = presentations_.find(label);
    if (it == presentations_.end())
        throw DomainError("entry '" + e.label + "' was not given by a presentation");
    return it->second;
}

std::vector<CoverFact> Catalogue::covers() const {
    std::vector<CoverFact> out;
    out.reserve(cover_entries_.size());
    for (const auto& ce : cover_entries_) out.push_back(ce.fact);
    return out;
}

FunctorEngine Catalogue::make_engine(const Limits& limits) const {
    return FunctorEngine(limits, multipliers_, covers());
}

Catalogue load_registry(const std::filesystem::path& dir, const Limits& limits) {
    Catalogue cat;

    for_each_line(dir / "groups.reg", [&](const std::string& text, const std::string& citation,
                                          const Where& at) {
        RegistryEntry e = parse_group_line(text, citation, at);
        if (cat.index_.count(e.label))
            throw ParseError(at.str() + ": duplicate label '" + e.label + "'");

        switch (e.kind) {
            case EntryKind::Perm:
                cat.realizations_.emplace(e.label, realize_perm_body(e.body, at));
                break;
            case EntryKind::Pres: {
                Presentation pres = parse_pres_body(e.body, at);
                Limits local = limits;
                if (e.max_cosets) local.max_cosets = *e.max_cosets;
                cat.realizations_.emplace(e.label, realize_presentation(pres, local));
                cat.presentations_.emplace(e.label, std::move(pres));
                break;
            }
            case EntryKind::FpOnly:
                cat.presentations_.emplace(e.label, parse_pres_body(e.body, at));
                break;
            case EntryKind::Product: {
                std::vector<std::string> factors = split(e.body, ',');
                if (factors.size() < 2)
                    throw ParseError(at.str() + ": product needs at least two factors");
                PermGroup acc = [&] {
                    auto it = cat.realizations_.find(factors[0]);
                    if (it == cat.realizations_.end())
                        throw ParseError(at.str() + ": product factor '" + factors[0] +
                                         "' is not defined above");
                    return it->second;
                }();
                for (std::size_t i = 1; i < factors.size(); ++i) {
                    auto it = cat.realizations_.find(factors[i]);
                    if (it == cat.realizations_.end())
                        throw ParseError(at.str() + ": product factor '" + factors[i] +
                                         "' is not defined above");
                    acc = direct_product(acc, it->second);
                }
                cat.realizations_.emplace(e.label, std::move(acc));
                break;
            }
        }

        if (e.expected_order || e.expected_center_order) {
            const PermGroup& g = cat.realizations_.at(e.label);
            if (e.expected_order && g.order() != *e.expected_order)
                throw ValidationError("entry '" + e.label + "': expected order " +
                                      std::to_string(*e.expected_order) + ", realized " +
                                      std::to_string(g.order()));
            if (e.expected_center_order) {
                std::uint64_t z = center(g, limits).order();
                if (z != *e.expected_center_order)
                    throw ValidationError("entry '" + e.label + "': expected center order " +
                                          std::to_string(*e.expected_center_order) +
                                          ", realized " + std::to_string(z));
            }
        }

        cat.index_.emplace(e.label, cat.entries_.size());
        cat.entries_.push_back(std::move(e));
    });

    if (std::filesystem::exists(dir / "multipliers.reg"))
        for_each_line(dir / "multipliers.reg", [&](const std::string& text,
                                                   const std::string& citation, const Where& at) {
            std::size_t colon = text.find(':');
            if (colon == std::string::npos)
                throw ParseError(at.str() + ": expected 'label: invariants'");
            std::string label = trim(std::string_view(text).substr(0, colon));
            auto it = cat.realizations_.find(label);
            if (it == cat.realizations_.end())
                throw ParseError(at.str() + ": multiplier for unknown group '" + label + "'");
            cat.multipliers_.push_back({label, it->second,
                                        parse_invariant_list(text.substr(colon + 1), at),
                                        citation});
        });

    if (std::filesystem::exists(dir / "covers.reg"))
        for_each_line(dir / "covers.reg", [&](const std::string& text,
                                              const std::string& citation, const Where& at) {
            std::size_t arrow = text.find("->");
            if (arrow == std::string::npos)
                throw ParseError(at.str() + ": expected 'base, p, kernel -> label: presentation'");
            std::string lhs = trim(std::string_view(text).substr(0, arrow));
            std::string rhs = trim(std::string_view(text).substr(arrow + 2));

            std::size_t c1 = lhs.find(',');
            std::size_t c2 = c1 == std::string::npos ? std::string::npos : lhs.find(',', c1 + 1);
            if (c2 == std::string::npos)
                throw ParseError(at.str() + ": expected 'base, p, kernel' before '->'");
            std::string base_label = trim(std::string_view(lhs).substr(0, c1));
            std::int64_t p = static_cast<std::int64_t>(
                parse_unsigned(trim(std::string_view(lhs).substr(c1 + 1, c2 - c1 - 1)), at));
            std::vector<std::int64_t> kernel =
                parse_invariant_list(lhs.substr(c2 + 1), at);

            std::size_t colon = rhs.find(':');
            if (colon == std::string::npos)
                throw ParseError(at.str() + ": expected 'label: presentation' after '->'");
            CoverEntry ce;
            ce.p = p;
            ce.body = trim(std::string_view(rhs).substr(colon + 1));
            ce.fact.base_label = base_label;
            ce.fact.cover_label = trim(std::string_view(rhs).substr(0, colon));
            ce.fact.kernel = std::move(kernel);
            ce.fact.citation = citation;

            auto it = cat.realizations_.find(base_label);
            if (it == cat.realizations_.end())
                throw ParseError(at.str() + ": cover over unknown base '" + base_label + "'");
            ce.fact.base = it->second;
            ce.fact.cover = realize_presentation(parse_pres_body(ce.body, at), limits);

            validate_cover_fact(ce.fact, limits);
            if (s_p(ce.fact.cover, p, limits).order() != ce.fact.cover.order())
                throw ValidationError("cover '" + ce.fact.cover_label +
                                      "': not generated by its elements of order " +
                                      std::to_string(p));
            cat.cover_entries_.push_back(std::move(ce));
        });

    return cat;
}

void save_registry(const Catalogue& catalogue, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::trunc);
        if (!out) throw DomainError("cannot write " + (dir / name).string());
        return out;
    };

    {
        std::ofstream out = open("groups.reg");
        for (const auto& e : catalogue.entries()) {
            const char* kind = e.kind == EntryKind::Perm      ? "perm"
                               : e.kind == EntryKind::Pres    ? "pres"
                               : e.kind == EntryKind::FpOnly  ? "fp"
                                                              : "product";
            out << e.label << " := " << kind << '[' << e.body << ']';
            if (e.max_cosets) out << " max_cosets=" << *e.max_cosets;
            if (e.expected_order || e.expected_center_order) {
                out << " expect";
                if (e.expected_order) out << " order=" << *e.expected_order;
                if (e.expected_center_order) out << " center=" << *e.expected_center_order;
            }
            if (!e.citation.empty()) out << "  # " << e.citation;
            out << '\n';
        }
    }
    {
        std::ofstream out = open("multipliers.reg");
        for (const auto& m : catalogue.multipliers()) {
            out << m.label << ": ";
            if (m.invariants.empty()) {
                out << '1';
            } else {
                for (std::size_t i = 0; i < m.invariants.size(); ++i)
                    out << (i ? "," : "") << m.invariants[i];
            }
            if (!m.citation.empty()) out << "  # " << m.citation;
            out << '\n';
        }
    }
    {
        std::ofstream out = open("covers.reg");
        for (const auto& ce : catalogue.cover_entries()) {
            out << ce.fact.base_label << ", " << ce.p << ", [";
            for (std::size_t i = 0; i < ce.fact.kernel.size(); ++i)
                out << (i ? "," : "") << ce.fact.kernel[i];
            out << "] -> " << ce.fact.cover_label << ": " << ce.body;
            if (!ce.fact.citation.empty()) out << "  # " << ce.fact.citation;
            out << '\n';
        }
    }
}

} // namespace locell
