#include "locell/orbit.hpp"

#include "locell/group_ops.hpp"
#include "locell/isomorphism.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <utility>

namespace locell {

// ------------------------------------------------------------------- atoms

std::string Atom::label() const {
    std::string name;
    switch (kind) {
    case AtomKind::Cell:       name = "cell"; break;
    case AtomKind::Nullify:    name = "P"; break;
    case AtomKind::Localize:   name = "L"; break;
    case AtomKind::Abelianize: return "Lab";
    case AtomKind::Socle:      name = "S"; break;
    case AtomKind::Radical:    name = "T"; break;
    }
    return name + "_" + (large_prime ? "p" : std::to_string(prime));
}

namespace {

Atom parse_atom(const std::string& token, const std::string& whole) {
    auto fail = [&](const std::string& why) -> Atom {
        throw ParseError("functor expression \"" + whole + "\": " + why);
    };

    if (token == "Lab")
        return Atom{AtomKind::Abelianize, 0, false};

    const std::size_t underscore = token.find('_');
    if (underscore == std::string::npos)
        return fail("unknown atom '" + token + "' (expected cell_p, P_p, L_p, Lab, S_p or T_p)");

    const std::string name = token.substr(0, underscore);
    const std::string suffix = token.substr(underscore + 1);

    AtomKind kind;
    if (name == "cell")
        kind = AtomKind::Cell;
    else if (name == "P")
        kind = AtomKind::Nullify;
    else if (name == "L")
        kind = AtomKind::Localize;
    else if (name == "S")
        kind = AtomKind::Socle;
    else if (name == "T")
        kind = AtomKind::Radical;
    else
        return fail("unknown atom '" + token + "'");

    if (kind == AtomKind::Localize && suffix == "ab")
        return Atom{AtomKind::Abelianize, 0, false};
    if (suffix == "p")
        return Atom{kind, 0, true};

    std::int64_t prime = 0;
    auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), prime);
    if (ec != std::errc{} || ptr != suffix.data() + suffix.size())
        return fail("atom '" + token + "' has a malformed prime suffix");
    if (!is_prime(static_cast<std::uint64_t>(prime)))
        return fail("atom '" + token + "': " + std::to_string(prime) + " is not prime");
    return Atom{kind, prime, false};
}

std::string trimmed(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos)
        return "";
    std::size_t end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

} // namespace

FunctorExpr FunctorExpr::parse(const std::string& text) {
    FunctorExpr expr;
    std::size_t pos = 0;
    while (true) {
        const std::size_t dot = text.find('.', pos);
        const std::string token =
            trimmed(dot == std::string::npos ? text.substr(pos) : text.substr(pos, dot - pos));
        if (token.empty())
            throw ParseError("functor expression \"" + text + "\": empty atom");
        expr.atoms.push_back(parse_atom(token, text));
        if (dot == std::string::npos)
            break;
        pos = dot + 1;
    }
    return expr;
}

std::string FunctorExpr::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i > 0)
            out += '.';
        out += atoms[i].label();
    }
    return out;
}

// ------------------------------------------------------------ group values

std::string GroupValue::describe() const {
    switch (tag()) {
    case Tag::Finite: {
        const PermGroup& g = finite();
        if (g.order() == 1)
            return "trivial group";
        return "group of order " + std::to_string(g.order());
    }
    case Tag::Abelian: {
        const AbelianGroup& a = abelian();
        if (a.is_trivial())
            return "trivial group";
        return "abelian group " + a.to_string();
    }
    case Tag::Cover: {
        const CellularCover& c = cover();
        std::string out = "central extension of an order-" + std::to_string(c.base.order()) +
                          " base by " + c.kernel.to_string();
        if (c.realization)
            out += ", realized as " + (c.cover_label.empty() ? "a cover" : c.cover_label) +
                   " of order " + std::to_string(c.realization->order());
        else
            out += ", unrealized";
        return out;
    }
    case Tag::Symbolic:
        return symbolic().to_string();
    }
    return "";
}

// --------------------------------------------------------- atom application

namespace {

std::int64_t concrete_prime(const Atom& atom) {
    if (atom.large_prime)
        throw DomainError("the indeterminate prime applies only to symbolic terms; " +
                          atom.label() + " needs a concrete prime here");
    return atom.prime;
}

SymPrime symbolic_prime(const Atom& atom) {
    return atom.large_prime ? SymPrime::large() : SymPrime::from_value(atom.prime);
}

// cell_p on a realized group.  Mirrors FunctorEngine::cellularize_p, but
// instead of failing on a missing cover it returns the honest descriptor:
// socle, kernel, and no realization.
GroupValue cell_finite(const PermGroup& g, std::int64_t p, FunctorEngine& engine,
                       const Limits& limits) {
    PermGroup socle = s_p(g, p, limits);
    const AbelianGroup kernel = engine.schur().multiplier(socle).away_from_p(p);
    if (kernel.is_trivial())
        return GroupValue{std::move(socle)};

    for (const CoverFact& fact : engine.covers()) {
        if (AbelianGroup::from_orders(fact.kernel) == kernel &&
            fact.base.order() == socle.order() && is_isomorphic(fact.base, socle, limits))
            return GroupValue{CellularCover{std::move(socle), kernel, fact.cover_label, fact.cover}};
    }
    return GroupValue{CellularCover{std::move(socle), kernel, "", std::nullopt}};
}

GroupValue apply_atom(const Atom& atom, const GroupValue& value, FunctorEngine& engine,
                      const Limits& limits) {
    switch (value.tag()) {
    case GroupValue::Tag::Cover: {
        const CellularCover& c = value.cover();
        if (!c.realization)
            throw DomainError(value.describe() +
                              ": no registry cover realizes this extension, so no further "
                              "functor applies");
        return apply_atom(atom, GroupValue{*c.realization}, engine, limits);
    }

    case GroupValue::Tag::Finite: {
        const PermGroup& g = value.finite();
        switch (atom.kind) {
        case AtomKind::Cell:
            return cell_finite(g, concrete_prime(atom), engine, limits);
        case AtomKind::Nullify:
            return GroupValue{nullify_p(g, concrete_prime(atom), limits)};
        case AtomKind::Localize:
            return GroupValue{localize_p(g, concrete_prime(atom), limits)};
        case AtomKind::Abelianize:
            return GroupValue{abelian_invariants(g, limits)};
        case AtomKind::Socle:
            return GroupValue{s_p(g, concrete_prime(atom), limits)};
        case AtomKind::Radical:
            return GroupValue{t_p(g, concrete_prime(atom), limits)};
        }
        break;
    }

    case GroupValue::Tag::Abelian: {
        const AbelianGroup& a = value.abelian();
        switch (atom.kind) {
        case AtomKind::Cell:
        case AtomKind::Socle:
            // For abelian groups the cellular approximation is the socle
            // itself: the kernel would be the away-from-p part of the
            // multiplier of an elementary abelian p-group, which is trivial.
            return GroupValue{a.socle_p(concrete_prime(atom))};
        case AtomKind::Nullify:
            return GroupValue{a.away_from_p(concrete_prime(atom))};
        case AtomKind::Localize:
            return GroupValue{a.mod_p(concrete_prime(atom))};
        case AtomKind::Abelianize:
            return value;
        case AtomKind::Radical:
            return GroupValue{a.primary_part(concrete_prime(atom))};
        }
        break;
    }

    case GroupValue::Tag::Symbolic: {
        const SymGroup& s = value.symbolic();
        switch (atom.kind) {
        case AtomKind::Cell:
            return GroupValue{sym_cellularize_p(s, symbolic_prime(atom), limits)};
        case AtomKind::Localize:
            return GroupValue{sym_localize_p(s, symbolic_prime(atom), limits)};
        default:
            throw NoRuleError("the symbolic calculus covers cell and L only; " + atom.label() +
                              " needs a realized group");
        }
    }
    }
    throw DomainError("unhandled atom " + atom.label());
}

} // namespace

GroupValue apply_expr(const FunctorExpr& expr, GroupValue start, FunctorEngine& engine,
                      const Limits& limits) {
    if (expr.atoms.empty())
        throw DomainError("empty functor expression");
    for (std::size_t i = expr.atoms.size(); i-- > 0;) {
        const Atom& atom = expr.atoms[i];
        const std::string where = "applying " + atom.label() + " (step " +
                                  std::to_string(expr.atoms.size() - i) + " of " +
                                  std::to_string(expr.atoms.size()) + "): ";
        try {
            start = apply_atom(atom, start, engine, limits);
        } catch (const CapError& e) {
            throw CapError(where + e.what(), e.cap_name(), e.limit());
        } catch (const NoRuleError& e) {
            throw NoRuleError(where + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(where + e.what());
        } catch (const ParseError& e) {
            throw ParseError(where + e.what());
        } catch (const DomainError& e) {
            throw DomainError(where + e.what());
        }
    }
    return start;
}

// ------------------------------------------------------------ node equality

namespace {

NodeMatch compare_perm(const PermGroup& x, const PermGroup& y, const Limits& limits) {
    if (x.order() != y.order())
        return {};
    if (x.order() <= limits.iso_cap)
        return {is_isomorphic(x, y, limits), false};
    // Too large for the backtracking search: fingerprint equality merges,
    // flagged as such; fingerprint inequality is a sound separation.
    const bool same = fingerprint(x, limits) == fingerprint(y, limits);
    return {same, same};
}

const PermGroup* perm_view(const GroupValue& v) {
    switch (v.tag()) {
    case GroupValue::Tag::Finite:
        return &v.finite();
    case GroupValue::Tag::Cover:
        return v.cover().realization ? &*v.cover().realization : nullptr;
    default:
        return nullptr;
    }
}

} // namespace

NodeMatch same_value(const GroupValue& a, const GroupValue& b, const Limits& limits) {
    using Tag = GroupValue::Tag;

    if (a.tag() == Tag::Symbolic || b.tag() == Tag::Symbolic) {
        if (a.tag() != b.tag())
            return {};
        return {a.symbolic() == b.symbolic(), false};
    }

    // An unrealized cover is known only through its base and kernel, so it
    // can merge only with another unrealized cover presenting the same data.
    const bool a_unrealized = a.tag() == Tag::Cover && !a.cover().realization;
    const bool b_unrealized = b.tag() == Tag::Cover && !b.cover().realization;
    if (a_unrealized || b_unrealized) {
        if (!(a_unrealized && b_unrealized))
            return {};
        if (!(a.cover().kernel == b.cover().kernel))
            return {};
        return compare_perm(a.cover().base, b.cover().base, limits);
    }

    const PermGroup* pa = perm_view(a);
    const PermGroup* pb = perm_view(b);
    if (pa && pb)
        return compare_perm(*pa, *pb, limits);

    if (a.tag() == Tag::Abelian && b.tag() == Tag::Abelian)
        return {a.abelian() == b.abelian(), false};

    // Abelian value against a realized group: exact, since finite abelian
    // groups are classified by their invariants.
    const AbelianGroup& inv = a.tag() == Tag::Abelian ? a.abelian() : b.abelian();
    const PermGroup& g = pa ? *pa : *pb;
    if (g.order() != inv.order() || !is_abelian(g))
        return {};
    return {abelian_invariants(g, limits) == inv, false};
}

// -------------------------------------------------------------- idempotency

IdemReport idempotency_check(const FunctorExpr& expr, const GroupValue& start,
                             FunctorEngine& engine, const Limits& limits) {
    GroupValue once = apply_expr(expr, start, engine, limits);
    GroupValue twice = apply_expr(expr, once, engine, limits);

    IdemReport report{"", "", std::move(once), std::move(twice), false, std::nullopt};

    if (report.once.tag() == GroupValue::Tag::Symbolic &&
        report.twice.tag() == GroupValue::Tag::Symbolic) {
        const SymGroup& s1 = report.once.symbolic();
        const SymGroup& s2 = report.twice.symbolic();
        report.certificate = sym_distinguish(s1, s2);
        if (s1 == s2) {
            report.verdict = "idempotent";
            report.detail = "the second application reproduces the same term";
        } else if (report.certificate->conclusion == "not isomorphic") {
            report.verdict = "not-idempotent";
            report.detail = report.certificate->claim;
        } else {
            report.verdict = "indeterminate";
            report.detail = "the two terms differ syntactically but no center invariant "
                            "separates them";
        }
        return report;
    }

    const NodeMatch match = same_value(report.once, report.twice, limits);
    report.fingerprint_only = match.fingerprint_only;
    if (match.same) {
        report.verdict = "idempotent";
        report.detail = match.fingerprint_only
                            ? "once and twice agree on every computed invariant (orders exceed "
                              "the isomorphism cap, fingerprint comparison only)"
                            : "once and twice are isomorphic: " + report.once.describe();
    } else {
        report.verdict = "not-idempotent";
        report.detail = "once gives " + report.once.describe() + " but twice gives " +
                        report.twice.describe();
    }
    return report;
}

// -------------------------------------------------------------------- orbit

OrbitGraph orbit_explore(const GroupValue& start, std::vector<Atom> atoms, std::uint32_t depth,
                         FunctorEngine& engine, const Limits& limits) {
    if (depth > limits.orbit_depth_cap)
        throw CapError("orbit depth " + std::to_string(depth) + " exceeds the configured cap",
                       "orbit_depth_cap", limits.orbit_depth_cap);
    if (atoms.empty())
        throw DomainError("orbit exploration needs at least one atom");

    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& x, const Atom& y) { return x.label() < y.label(); });
    atoms.erase(std::unique(atoms.begin(), atoms.end(),
                            [](const Atom& x, const Atom& y) { return x.label() == y.label(); }),
                atoms.end());

    OrbitGraph graph;
    const bool start_terminal =
        start.tag() == GroupValue::Tag::Cover && !start.cover().realization;
    graph.nodes.push_back(OrbitNode{start, 0, false, start_terminal});

    // Nodes are appended in discovery order with nondecreasing depth, so a
    // single cursor walks them breadth-first.
    for (std::size_t cursor = 0; cursor < graph.nodes.size(); ++cursor) {
        const std::uint32_t node_depth = graph.nodes[cursor].depth;
        if (node_depth >= depth || graph.nodes[cursor].terminal)
            continue;

        for (const Atom& atom : atoms) {
            std::optional<GroupValue> result;
            try {
                result.emplace(apply_atom(atom, graph.nodes[cursor].value, engine, limits));
            } catch (const Error& e) {
                graph.skipped.push_back(atom.label() + " on node " + std::to_string(cursor) +
                                        ": " + e.what());
                continue;
            }

            std::size_t target = graph.nodes.size();
            bool fingerprint_merge = false;
            for (std::size_t j = 0; j < graph.nodes.size(); ++j) {
                const NodeMatch match = same_value(graph.nodes[j].value, *result, limits);
                if (match.same) {
                    target = j;
                    fingerprint_merge = match.fingerprint_only;
                    break;
                }
            }

            if (target == graph.nodes.size()) {
                if (graph.nodes.size() >= limits.orbit_node_cap)
                    throw CapError("orbit node count exceeds the configured cap",
                                   "orbit_node_cap", limits.orbit_node_cap);
                const bool terminal =
                    result->tag() == GroupValue::Tag::Cover && !result->cover().realization;
                graph.nodes.push_back(
                    OrbitNode{std::move(*result), node_depth + 1, false, terminal});
            } else if (fingerprint_merge) {
                graph.nodes[target].fingerprint_merged = true;
                graph.fingerprint_merges = true;
            }
            graph.edges.push_back(OrbitEdge{cursor, target, atom.label()});
        }
    }
    return graph;
}

} // namespace locell
