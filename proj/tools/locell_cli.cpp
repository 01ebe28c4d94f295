// Command-line front end: applies functor expressions to catalogue groups,
// checks idempotency, computes multipliers, walks orbits, and replays the
// large-prime counterexample derivation.  Reports are JSON by default
// (schema in data/report.schema.json) and byte-identical for a fixed seed
// apart from the trailing timing field.

#include "CLI11.hpp"
#include "json.hpp"

#include "locell/abelian.hpp"
#include "locell/errors.hpp"
#include "locell/exponent_p.hpp"
#include "locell/group_ops.hpp"
#include "locell/homology.hpp"
#include "locell/orbit.hpp"
#include "locell/registry.hpp"
#include "locell/symbolic.hpp"

#include <chrono>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace locell;

#ifndef LOCELL_VERSION
#define LOCELL_VERSION "0.0.0"
#endif

namespace {

struct Session {
    Limits limits;
    std::string registry_path = "data";
    bool text = false;

    std::optional<Catalogue> catalogue;
    std::optional<FunctorEngine> engine;

    // The registry is loaded only when a command actually names a realized
    // group, so purely symbolic invocations need no data directory.
    const Catalogue& cat() {
        if (!catalogue)
            catalogue.emplace(load_registry(registry_path, limits));
        return *catalogue;
    }
    FunctorEngine& eng() {
        if (!engine)
            engine.emplace(cat().make_engine(limits));
        return *engine;
    }
    // Symbolic rewriting never consults multiplier or cover tables.
    FunctorEngine& bare_engine() {
        static FunctorEngine bare{};
        return bare;
    }
};

std::uint64_t exponent_of(const PermGroup& g, const Limits& limits) {
    std::uint64_t exp = 1;
    for (const auto& [order, count] : element_order_histogram(g, limits))
        exp = std::lcm(exp, order);
    return exp;
}

json abelian_json(const AbelianGroup& a) {
    json out;
    out["invariant_factors"] = a.invariants();
    json primary = json::array();
    for (const auto& [p, exps] : a.primary())
        for (std::uint32_t e : exps) {
            std::int64_t q = 1;
            for (std::uint32_t i = 0; i < e; ++i)
                q *= p;
            primary.push_back(q);
        }
    out["primary"] = primary;
    out["order"] = a.order();
    out["description"] = a.to_string();
    return out;
}

json group_json(const PermGroup& g, const Limits& limits) {
    json out;
    out["kind"] = "group";
    out["order"] = g.order();
    out["center_order"] = center(g, limits).order();
    out["abelian_invariants"] = abelian_invariants(g, limits).invariants();
    out["exponent"] = exponent_of(g, limits);
    return out;
}

json value_json(const GroupValue& v, const Limits& limits) {
    json out;
    switch (v.tag()) {
    case GroupValue::Tag::Finite:
        out = group_json(v.finite(), limits);
        break;
    case GroupValue::Tag::Abelian:
        out = abelian_json(v.abelian());
        out["kind"] = "abelian";
        break;
    case GroupValue::Tag::Cover: {
        const CellularCover& c = v.cover();
        out["kind"] = "cover";
        out["base_order"] = c.base.order();
        out["kernel"] = c.kernel.invariants();
        out["realized"] = c.realization.has_value();
        if (c.realization) {
            out["cover_label"] = c.cover_label;
            out["realization"] = group_json(*c.realization, limits);
        }
        break;
    }
    case GroupValue::Tag::Symbolic:
        out["kind"] = "symbolic";
        out["term"] = v.symbolic().to_string();
        break;
    }
    out["description"] = v.describe();
    return out;
}

json certificate_json(const Certificate& cert) {
    return json{{"claim", cert.claim},
                {"invariant", cert.invariant_name},
                {"left", cert.value_left},
                {"right", cert.value_right},
                {"conclusion", cert.conclusion}};
}

json steps_json(const std::vector<RuleStep>& steps) {
    json out = json::array();
    for (const RuleStep& s : steps)
        out.push_back(json{{"rule", s.rule}, {"why", s.why}, {"before", s.before},
                           {"after", s.after}});
    return out;
}

// ---------------------------------------------------------------- rendering

void render_value_text(const json& value, const std::string& indent) {
    std::cout << indent << value["description"].get<std::string>() << "\n";
    if (value["kind"] == "group")
        std::cout << indent << "  order " << value["order"] << ", center order "
                  << value["center_order"] << ", abelianization "
                  << value["abelian_invariants"].dump() << ", exponent " << value["exponent"]
                  << "\n";
    else if (value["kind"] == "symbolic")
        std::cout << indent << "  term: " << value["term"].get<std::string>() << "\n";
}

void render_text(const json& report) {
    const std::string command = report["command"].get<std::string>();
    const json& result = report["result"];
    std::cout << "locell " << command << " (version " << LOCELL_VERSION << ", seed "
              << report["seed"] << ")\n";

    if (command == "apply") {
        render_value_text(result["value"], "  ");
    } else if (command == "idem") {
        std::cout << "  verdict: " << result["verdict"].get<std::string>() << "\n"
                  << "  " << result["detail"].get<std::string>() << "\n"
                  << "  once:\n";
        render_value_text(result["once"], "    ");
        std::cout << "  twice:\n";
        render_value_text(result["twice"], "    ");
        if (result.contains("certificate"))
            std::cout << "  certificate: " << result["certificate"]["claim"].get<std::string>()
                      << "\n";
    } else if (command == "h2") {
        std::cout << "  H2(" << result["group"].get<std::string>() << ") = "
                  << result["multiplier"]["description"].get<std::string>() << "  (primary "
                  << result["multiplier"]["primary"].dump() << ", canonical "
                  << result["multiplier"]["invariant_factors"].dump() << ", method "
                  << result["method"].get<std::string>() << ")\n";
    } else if (command == "orbit") {
        std::cout << "  " << result["nodes"].size() << " nodes, " << result["edges"].size()
                  << " edges, depth " << result["depth"] << "\n";
        for (const json& node : result["nodes"]) {
            std::cout << "  [" << node["id"] << "] depth " << node["depth"] << ": "
                      << node["value"]["description"].get<std::string>();
            if (node["terminal"].get<bool>())
                std::cout << "  (terminal)";
            std::cout << "\n";
        }
        for (const json& edge : result["edges"])
            std::cout << "    " << edge["from"] << " --" << edge["atom"].get<std::string>()
                      << "--> " << edge["to"] << "\n";
        for (const json& skip : result["skipped"])
            std::cout << "  skipped: " << skip.get<std::string>() << "\n";
    } else if (command == "counterexample") {
        std::cout << "  start: F = " << result["start"].get<std::string>() << "\n";
        for (const json& step : result["chain"]) {
            std::cout << "  " << step["op"].get<std::string>() << ": "
                      << step["input"].get<std::string>() << "  ->  "
                      << step["output"].get<std::string>() << "\n";
            for (const json& rule : step["rules"])
                std::cout << "      [" << rule["rule"].get<std::string>() << "] "
                          << rule["why"].get<std::string>() << "\n";
        }
        for (const auto& [name, cert] : result["certificates"].items()) {
            std::cout << "  certificate " << name << ": "
                      << cert["conclusion"].get<std::string>() << "\n"
                      << "      " << cert["certificate"]["claim"].get<std::string>() << "\n";
        }
    }
}

int emit(const Session& session, const std::string& command, json inputs, json result,
         std::chrono::steady_clock::time_point started) {
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    json report;
    report["schema_version"] = 1;
    report["version"] = LOCELL_VERSION;
    report["command"] = command;
    report["inputs"] = std::move(inputs);
    report["seed"] = session.limits.seed;
    report["result"] = std::move(result);
    report["timing_ms"] = elapsed;
    if (session.text)
        render_text(report);
    else
        std::cout << report.dump(2) << "\n";
    return 0;
}

// --------------------------------------------------------- start resolution

struct StartFlags {
    bool fp = false;
    bool symbolic = false;
    bool large_prime = false;
};

// Turns a group label into a value the expression can start from.  Plain
// labels are catalogue lookups; --symbolic switches to term syntax with
// Fsym and Bsym as rank-2 shorthands; --fp realizes a free presentation
// through the rightmost L_<prime> atom of the expression.
GroupValue resolve_start(Session& session, const std::string& label, const FunctorExpr& expr,
                         const StartFlags& flags) {
    if (flags.fp && flags.symbolic)
        throw DomainError("--fp and --symbolic are mutually exclusive");

    if (flags.symbolic) {
        if (label == "Fsym" || label == "Bsym") {
            if (!flags.large_prime)
                throw DomainError(label + " denotes the indeterminate large prime regime; pass "
                                          "--large-prime, or spell out a term such as "
                                          "\"FreeProductCp(3, 2)\"");
            const SymPrime p = SymPrime::large();
            return GroupValue{label == "Fsym" ? SymGroup::free_product_cp(p, 2)
                                              : SymGroup::burnside(p, 2)};
        }
        return GroupValue{SymGroup::parse(label)};
    }

    if (flags.fp) {
        const Presentation& pres = session.cat().presentation(label);
        if (!pres.relators.empty())
            throw DomainError("--fp realizes free presentations only, and '" + label + "' has " +
                              std::to_string(pres.relators.size()) + " relators");
        if (expr.atoms.empty())
            throw DomainError("--fp needs an expression ending in L_<prime>");
        const Atom& first = expr.atoms.back();
        if (first.kind != AtomKind::Localize || first.large_prime)
            throw DomainError("with --fp the first functor applied must be L_<prime>: the free "
                              "group itself is never realized, only its exponent-p quotient");
        return GroupValue{exponent_p_quotient(static_cast<std::uint32_t>(pres.gen_names.size()),
                                              static_cast<std::uint64_t>(first.prime),
                                              session.limits)};
    }

    return GroupValue{session.cat().realization(label)};
}

FunctorEngine& engine_for(Session& session, const GroupValue& start) {
    return start.tag() == GroupValue::Tag::Symbolic ? session.bare_engine() : session.eng();
}

json start_inputs(const std::string& expr, const std::string& label, const StartFlags& flags) {
    return json{{"expr", expr},
                {"group", label},
                {"fp", flags.fp},
                {"symbolic", flags.symbolic},
                {"large_prime", flags.large_prime}};
}

// ----------------------------------------------------------------- commands

int cmd_apply(Session& session, const std::string& expr_text, const std::string& label,
              const StartFlags& flags) {
    const auto started = std::chrono::steady_clock::now();
    FunctorExpr expr = FunctorExpr::parse(expr_text);
    GroupValue start = resolve_start(session, label, expr, flags);
    FunctorEngine& engine = engine_for(session, start);
    GroupValue out = apply_expr(expr, std::move(start), engine, session.limits);
    json result;
    result["value"] = value_json(out, session.limits);
    return emit(session, "apply", start_inputs(expr_text, label, flags), std::move(result),
                started);
}

int cmd_idem(Session& session, const std::string& expr_text, const std::string& label,
             const StartFlags& flags) {
    const auto started = std::chrono::steady_clock::now();
    FunctorExpr expr = FunctorExpr::parse(expr_text);
    GroupValue start = resolve_start(session, label, expr, flags);
    IdemReport report =
        idempotency_check(expr, start, engine_for(session, start), session.limits);
    json result;
    result["verdict"] = report.verdict;
    result["detail"] = report.detail;
    result["once"] = value_json(report.once, session.limits);
    result["twice"] = value_json(report.twice, session.limits);
    result["fingerprint_only"] = report.fingerprint_only;
    if (report.certificate)
        result["certificate"] = certificate_json(*report.certificate);
    return emit(session, "idem", start_inputs(expr_text, label, flags), std::move(result),
                started);
}

int cmd_h2(Session& session, const std::string& label) {
    const auto started = std::chrono::steady_clock::now();
    const PermGroup& g = session.cat().realization(label);
    SchurEngine& schur = session.eng().schur();

    // Small groups are computed from scratch so the answer is independent
    // of the curated table; past the bar ceiling the table is the method.
    AbelianGroup h2;
    std::string method;
    if (g.order() <= session.limits.bar_cap) {
        h2 = schur.multiplier_bar(g);
        method = "bar";
    } else {
        h2 = schur.multiplier(g);
        method = schur.last_source() == "table" ? "registry" : schur.last_source();
    }

    json result;
    result["group"] = label;
    result["order"] = g.order();
    result["multiplier"] = abelian_json(h2);
    result["method"] = method;
    return emit(session, "h2", json{{"group", label}}, std::move(result), started);
}

int cmd_orbit(Session& session, const std::string& label, const std::string& atoms_text,
              std::uint32_t depth, const StartFlags& flags) {
    const auto started = std::chrono::steady_clock::now();

    std::vector<Atom> atoms;
    std::size_t pos = 0;
    while (pos <= atoms_text.size()) {
        const std::size_t comma = atoms_text.find(',', pos);
        const std::string token =
            comma == std::string::npos ? atoms_text.substr(pos) : atoms_text.substr(pos, comma - pos);
        FunctorExpr one = FunctorExpr::parse(token);
        if (one.atoms.size() != 1)
            throw ParseError("orbit atoms are single functors separated by commas, got '" +
                             token + "'");
        atoms.push_back(one.atoms[0]);
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }

    GroupValue start = resolve_start(session, label, FunctorExpr{}, flags);
    OrbitGraph graph =
        orbit_explore(start, std::move(atoms), depth, engine_for(session, start), session.limits);

    json nodes = json::array();
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
        const OrbitNode& node = graph.nodes[i];
        nodes.push_back(json{{"id", i},
                             {"depth", node.depth},
                             {"terminal", node.terminal},
                             {"fingerprint_merged", node.fingerprint_merged},
                             {"value", value_json(node.value, session.limits)}});
    }
    json edges = json::array();
    for (const OrbitEdge& edge : graph.edges)
        edges.push_back(json{{"from", edge.from}, {"to", edge.to}, {"atom", edge.atom}});

    json result;
    result["depth"] = depth;
    result["nodes"] = std::move(nodes);
    result["edges"] = std::move(edges);
    result["skipped"] = graph.skipped;
    result["fingerprint_merges"] = graph.fingerprint_merges;

    json inputs{{"group", label}, {"atoms", atoms_text}, {"depth", depth},
                {"symbolic", flags.symbolic}, {"large_prime", flags.large_prime}};
    return emit(session, "orbit", std::move(inputs), std::move(result), started);
}

int cmd_counterexample(Session& session, bool large_prime) {
    const auto started = std::chrono::steady_clock::now();
    if (!large_prime) {
        std::cerr << "counterexample: at the small primes 2 and 3 both composites are "
                     "idempotent, so there is nothing to separate; pass --large-prime for the "
                     "indeterminate regime where the derivation goes through\n";
        return 1;
    }

    const SymPrime p = SymPrime::large();
    const SymGroup F = SymGroup::free_product_cp(p, 2);

    std::vector<RuleStep> to_b, to_c, to_e, to_h;
    const SymGroup B = sym_localize_p(F, p, session.limits, &to_b);
    const SymGroup C = sym_cellularize_p(B, p, session.limits, &to_c);
    const SymGroup E = sym_localize_p(C, p, session.limits, &to_e);
    const SymGroup H = sym_cellularize_p(E, p, session.limits, &to_h);

    const Certificate lc = sym_distinguish(B, E);  // L_p.cell_p once vs twice
    const Certificate cl = sym_distinguish(C, H);  // cell_p.L_p once vs twice
    if (lc.conclusion != "not isomorphic" || cl.conclusion != "not isomorphic")
        throw DomainError("derivation reached terms the center invariants cannot separate");

    auto step = [](const char* op, const SymGroup& in, const SymGroup& out,
                   const std::vector<RuleStep>& rules) {
        return json{{"op", op}, {"input", in.to_string()}, {"output", out.to_string()},
                    {"rules", steps_json(rules)}};
    };

    json result;
    result["prime"] = "large";
    result["start"] = F.to_string();
    result["chain"] = json::array({step("L_p", F, B, to_b), step("cell_p", B, C, to_c),
                                   step("L_p", C, E, to_e), step("cell_p", E, H, to_h)});
    result["certificates"] = json{
        {"L_p.cell_p", json{{"once", B.to_string()}, {"twice", E.to_string()},
                            {"certificate", certificate_json(lc)},
                            {"conclusion", lc.conclusion}}},
        {"cell_p.L_p", json{{"once", C.to_string()}, {"twice", H.to_string()},
                            {"certificate", certificate_json(cl)},
                            {"conclusion", cl.conclusion}}}};

    return emit(session, "counterexample", json{{"large_prime", true}}, std::move(result),
                started);
}

} // namespace

int main(int argc, char** argv) {
    Session session;

    CLI::App app{"locell: cellular covers and localizations of groups"};
    app.require_subcommand(1);
    app.add_option("--registry", session.registry_path,
                   "registry directory (groups.reg, multipliers.reg, covers.reg)");
    app.add_option("--seed", session.limits.seed, "seed for randomized tie-breaking");
    app.add_option("--max-cosets", session.limits.max_cosets, "coset enumeration ceiling");
    app.add_option("--bar-cap", session.limits.bar_cap,
                   "largest order fed to the bar-resolution multiplier");
    bool json_flag = false;
    auto* text_opt = app.add_flag("--text", session.text, "human-readable output");
    app.add_flag("--json", json_flag, "JSON output (default)")->excludes(text_opt);

    std::string expr, label, atoms;
    StartFlags flags;
    std::uint32_t depth = 3;
    bool large_prime = false;

    auto add_start_flags = [&](CLI::App* cmd) {
        cmd->add_flag("--fp", flags.fp, "realize a free presentation through the rightmost L_p");
        cmd->add_flag("--symbolic", flags.symbolic,
                      "treat the group as a symbolic term (Fsym, Bsym, or term syntax)");
        cmd->add_flag("--large-prime", flags.large_prime,
                      "interpret Fsym/Bsym at the indeterminate large prime");
    };

    auto* apply_cmd = app.add_subcommand("apply", "apply a functor expression to a group");
    apply_cmd->add_option("expr", expr, "composition such as \"P_3.cell_2\"")->required();
    apply_cmd->add_option("group", label, "registry label or symbolic term")->required();
    add_start_flags(apply_cmd);

    auto* idem_cmd = app.add_subcommand("idem", "apply twice and compare against once");
    idem_cmd->add_option("expr", expr, "composition such as \"L_p.cell_p\"")->required();
    idem_cmd->add_option("group", label, "registry label or symbolic term")->required();
    add_start_flags(idem_cmd);

    auto* h2_cmd = app.add_subcommand("h2", "Schur multiplier of a registry group");
    h2_cmd->add_option("group", label, "registry label")->required();

    auto* orbit_cmd = app.add_subcommand("orbit", "explore the orbit under a set of functors");
    orbit_cmd->add_option("group", label, "registry label or symbolic term")->required();
    orbit_cmd->add_option("atoms", atoms, "comma-separated functors, e.g. \"P_2,P_3\"")
        ->required();
    orbit_cmd->add_option("--depth", depth, "exploration depth (default 3)");
    add_start_flags(orbit_cmd);

    auto* ce_cmd = app.add_subcommand(
        "counterexample", "derive the large-prime failure of idempotency, with certificates");
    ce_cmd->add_flag("--large-prime", large_prime, "indeterminate prime regime (required)");

    for (CLI::App* cmd : {apply_cmd, idem_cmd, h2_cmd, orbit_cmd, ce_cmd})
        cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // every usage problem exits 1
    }

    try {
        if (apply_cmd->parsed())
            return cmd_apply(session, expr, label, flags);
        if (idem_cmd->parsed())
            return cmd_idem(session, expr, label, flags);
        if (h2_cmd->parsed())
            return cmd_h2(session, label);
        if (orbit_cmd->parsed())
            return cmd_orbit(session, label, atoms, depth, flags);
        if (ce_cmd->parsed())
            return cmd_counterexample(session, large_prime);
    } catch (const Error& e) {
        std::cerr << app.get_name() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << app.get_name() << ": internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
