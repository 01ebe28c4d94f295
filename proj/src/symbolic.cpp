#include "locell/symbolic.hpp"

#include "locell/group_ops.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

namespace locell {

// ---------------------------------------------------------------- SymPrime

SymPrime SymPrime::small(std::int64_t p) {
    if (p != 2 && p != 3)
        throw DomainError("small symbolic primes are 2 and 3, got " + std::to_string(p));
    return SymPrime(false, p);
}

SymPrime SymPrime::large() { return SymPrime(true, 0); }

SymPrime SymPrime::from_value(std::int64_t p) {
    if (p == 2 || p == 3)
        return small(p);
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw DomainError("not a prime: " + std::to_string(p));
    if (p < 665)
        throw DomainError("prime " + std::to_string(p) +
                          " is in the unknown regime: the exponent-p calculus covers 2, 3, and "
                          "primes at least 665, where the free Burnside group of rank 2 is known "
                          "to be infinite");
    return large();
}

std::int64_t SymPrime::value() const {
    if (large_)
        throw DomainError("the large prime is an indeterminate and has no concrete value");
    return value_;
}

std::string SymPrime::to_string() const { return large_ ? "p" : std::to_string(value_); }

bool SymPrime::operator==(const SymPrime& other) const noexcept {
    return large_ == other.large_ && (large_ || value_ == other.value_);
}

// -------------------------------------------------------------------- Rank

std::uint64_t Rank::count() const {
    if (infinite_)
        throw DomainError("rank omega has no finite count");
    return count_;
}

Rank Rank::operator+(const Rank& other) const {
    if (infinite_ || other.infinite_)
        return omega();
    return of(count_ + other.count_);
}

std::string Rank::to_string() const { return infinite_ ? "omega" : std::to_string(count_); }

// ---------------------------------------------------------------- SymGroup

struct SymGroup::Node {
    SymKind kind = SymKind::Trivial;
    SymPrime prime = SymPrime::large();
    Rank rank = Rank::of(0);
    std::uint64_t copies = 0;        // FreeProductCp copies, Burnside rank
    std::string label;               // FiniteRef
    std::vector<SymGroup> children;  // CentralExt {kernel, base}, Product factors
};

namespace {

// Canonical position of a factor inside a normalized product.  Abelian
// pieces come first, matching the usual way these splittings are written.
int product_sort_key(SymKind kind) {
    switch (kind) {
    case SymKind::FpVectorSpace: return 0;
    case SymKind::FreeAbelian:   return 1;
    case SymKind::FreeProductCp: return 2;
    case SymKind::Burnside:      return 3;
    case SymKind::CentralExt:    return 4;
    case SymKind::FiniteRef:     return 5;
    default:                     return 6;  // Trivial and Product never survive flattening
    }
}

} // namespace

SymGroup SymGroup::trivial() {
    return SymGroup(std::make_shared<const Node>());
}

SymGroup SymGroup::finite_ref(std::string label) {
    if (label.empty())
        throw DomainError("a finite reference needs a nonempty label");
    auto node = std::make_shared<Node>();
    node->kind = SymKind::FiniteRef;
    node->label = std::move(label);
    return SymGroup(std::move(node));
}

SymGroup SymGroup::free_product_cp(SymPrime p, std::uint64_t copies) {
    if (copies == 0)
        return trivial();
    auto node = std::make_shared<Node>();
    node->kind = SymKind::FreeProductCp;
    node->prime = p;
    node->copies = copies;
    return SymGroup(std::move(node));
}

SymGroup SymGroup::burnside(SymPrime p, std::uint64_t rank) {
    if (rank == 0)
        return trivial();
    auto node = std::make_shared<Node>();
    node->kind = SymKind::Burnside;
    node->prime = p;
    node->copies = rank;
    return SymGroup(std::move(node));
}

SymGroup SymGroup::free_abelian(Rank rank) {
    if (!rank.is_infinite() && rank.count() == 0)
        return trivial();
    auto node = std::make_shared<Node>();
    node->kind = SymKind::FreeAbelian;
    node->rank = rank;
    return SymGroup(std::move(node));
}

SymGroup SymGroup::fp_vector_space(SymPrime p, Rank rank) {
    if (!rank.is_infinite() && rank.count() == 0)
        return trivial();
    auto node = std::make_shared<Node>();
    node->kind = SymKind::FpVectorSpace;
    node->prime = p;
    node->rank = rank;
    return SymGroup(std::move(node));
}

SymGroup SymGroup::central_ext(SymGroup kernel, SymGroup base) {
    if (kernel.kind() == SymKind::Trivial)
        return base;
    if (base.kind() == SymKind::Trivial)
        return kernel;
    if (!kernel.is_abelian_typed())
        throw DomainError("a central extension kernel must be abelian-typed, got " +
                          kernel.to_string());
    auto node = std::make_shared<Node>();
    node->kind = SymKind::CentralExt;
    node->children = {std::move(kernel), std::move(base)};
    return SymGroup(std::move(node));
}

SymGroup SymGroup::product(SymGroup left, SymGroup right) {
    return product(std::vector<SymGroup>{std::move(left), std::move(right)});
}

SymGroup SymGroup::product(std::vector<SymGroup> factors) {
    // Flatten nested products and drop trivial factors.
    std::vector<SymGroup> flat;
    for (auto& f : factors) {
        if (f.kind() == SymKind::Product) {
            for (const auto& inner : f.factors())
                flat.push_back(inner);
        } else if (f.kind() != SymKind::Trivial) {
            flat.push_back(std::move(f));
        }
    }

    // Merge abelian factors over the same prime: direct sums of vector
    // spaces add their dimensions, free abelian groups add their ranks,
    // with omega absorbing everything.
    std::vector<SymGroup> merged;
    for (auto& f : flat) {
        bool absorbed = false;
        if (f.kind() == SymKind::FpVectorSpace) {
            for (auto& g : merged) {
                if (g.kind() == SymKind::FpVectorSpace && g.prime() == f.prime()) {
                    g = fp_vector_space(f.prime(), g.rank() + f.rank());
                    absorbed = true;
                    break;
                }
            }
        } else if (f.kind() == SymKind::FreeAbelian) {
            for (auto& g : merged) {
                if (g.kind() == SymKind::FreeAbelian) {
                    g = free_abelian(g.rank() + f.rank());
                    absorbed = true;
                    break;
                }
            }
        }
        if (!absorbed)
            merged.push_back(std::move(f));
    }

    if (merged.empty())
        return trivial();
    if (merged.size() == 1)
        return merged.front();

    std::sort(merged.begin(), merged.end(), [](const SymGroup& a, const SymGroup& b) {
        const int ka = product_sort_key(a.kind());
        const int kb = product_sort_key(b.kind());
        if (ka != kb)
            return ka < kb;
        return a.to_string() < b.to_string();
    });

    auto node = std::make_shared<Node>();
    node->kind = SymKind::Product;
    node->children = std::move(merged);
    return SymGroup(std::move(node));
}

SymKind SymGroup::kind() const noexcept { return node_->kind; }

const SymPrime& SymGroup::prime() const {
    switch (node_->kind) {
    case SymKind::FreeProductCp:
    case SymKind::Burnside:
    case SymKind::FpVectorSpace:
        return node_->prime;
    default:
        throw DomainError("term " + to_string() + " carries no prime");
    }
}

Rank SymGroup::rank() const {
    switch (node_->kind) {
    case SymKind::FreeAbelian:
    case SymKind::FpVectorSpace:
        return node_->rank;
    default:
        throw DomainError("term " + to_string() + " carries no rank");
    }
}

std::uint64_t SymGroup::copies() const {
    switch (node_->kind) {
    case SymKind::FreeProductCp:
    case SymKind::Burnside:
        return node_->copies;
    default:
        throw DomainError("term " + to_string() + " carries no copy count");
    }
}

const std::string& SymGroup::label() const {
    if (node_->kind != SymKind::FiniteRef)
        throw DomainError("term " + to_string() + " is not a finite reference");
    return node_->label;
}

const SymGroup& SymGroup::kernel() const {
    if (node_->kind != SymKind::CentralExt)
        throw DomainError("term " + to_string() + " is not a central extension");
    return node_->children[0];
}

const SymGroup& SymGroup::base() const {
    if (node_->kind != SymKind::CentralExt)
        throw DomainError("term " + to_string() + " is not a central extension");
    return node_->children[1];
}

const std::vector<SymGroup>& SymGroup::factors() const {
    if (node_->kind != SymKind::Product)
        throw DomainError("term " + to_string() + " is not a product");
    return node_->children;
}

bool SymGroup::is_abelian_typed() const {
    switch (node_->kind) {
    case SymKind::Trivial:
    case SymKind::FreeAbelian:
    case SymKind::FpVectorSpace:
        return true;
    case SymKind::Product:
        return std::all_of(node_->children.begin(), node_->children.end(),
                           [](const SymGroup& f) { return f.is_abelian_typed(); });
    default:
        return false;
    }
}

bool SymGroup::operator==(const SymGroup& other) const {
    if (node_ == other.node_)
        return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind)
        return false;
    switch (a.kind) {
    case SymKind::Trivial:
        return true;
    case SymKind::FiniteRef:
        return a.label == b.label;
    case SymKind::FreeProductCp:
    case SymKind::Burnside:
        return a.prime == b.prime && a.copies == b.copies;
    case SymKind::FreeAbelian:
        return a.rank == b.rank;
    case SymKind::FpVectorSpace:
        return a.prime == b.prime && a.rank == b.rank;
    case SymKind::CentralExt:
    case SymKind::Product:
        return a.children == b.children;
    }
    return false;
}

std::string SymGroup::to_string() const {
    const Node& n = *node_;
    switch (n.kind) {
    case SymKind::Trivial:
        return "Trivial";
    case SymKind::FiniteRef:
        return "FiniteRef(" + n.label + ")";
    case SymKind::FreeProductCp:
        return "FreeProdCp(" + n.prime.to_string() + ", " + std::to_string(n.copies) + ")";
    case SymKind::Burnside:
        return "Burnside(" + n.prime.to_string() + ", " + std::to_string(n.copies) + ")";
    case SymKind::FreeAbelian:
        return "FreeAb(" + n.rank.to_string() + ")";
    case SymKind::FpVectorSpace:
        return "FpVec(" + n.prime.to_string() + ", " + n.rank.to_string() + ")";
    case SymKind::CentralExt:
        return "CentralExt(" + n.children[0].to_string() + ", " + n.children[1].to_string() + ")";
    case SymKind::Product: {
        std::string out = "Product(";
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i > 0)
                out += ", ";
            out += n.children[i].to_string();
        }
        return out + ")";
    }
    }
    return "Trivial";
}

// ------------------------------------------------------------------ parser

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            fail(std::string("expected '") + c + "'");
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start)
            fail("expected a constructor name");
        return text.substr(start, pos - start);
    }

    std::uint64_t number() {
        skip_ws();
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{} || ptr == text.data() + pos)
            fail("expected a number");
        pos = static_cast<std::size_t>(ptr - text.data());
        return value;
    }

    // A registry label: everything up to the closing parenthesis.
    std::string label() {
        skip_ws();
        std::size_t close = text.find(')', pos);
        if (close == std::string::npos)
            fail("unterminated label");
        std::string out = text.substr(pos, close - pos);
        while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back())))
            out.pop_back();
        pos = close;
        return out;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("symbolic term: " + why + " at offset " + std::to_string(pos) + " in \"" +
                         text + "\"");
    }
};

SymPrime parse_prime(Cursor& c) {
    c.skip_ws();
    if (c.pos < c.text.size() && c.text[c.pos] == 'p' &&
        (c.pos + 1 == c.text.size() ||
         !std::isalnum(static_cast<unsigned char>(c.text[c.pos + 1])))) {
        ++c.pos;
        return SymPrime::large();
    }
    return SymPrime::from_value(static_cast<std::int64_t>(c.number()));
}

Rank parse_rank(Cursor& c) {
    c.skip_ws();
    if (c.text.compare(c.pos, 5, "omega") == 0) {
        c.pos += 5;
        return Rank::omega();
    }
    return Rank::of(c.number());
}

SymGroup parse_term(Cursor& c) {
    const std::string name = c.ident();
    if (name == "Trivial")
        return SymGroup::trivial();
    if (name == "FiniteRef") {
        c.expect('(');
        std::string label = c.label();
        c.expect(')');
        return SymGroup::finite_ref(std::move(label));
    }
    if (name == "FreeProdCp" || name == "FreeProductCp") {
        c.expect('(');
        SymPrime p = parse_prime(c);
        c.expect(',');
        std::uint64_t copies = c.number();
        c.expect(')');
        return SymGroup::free_product_cp(p, copies);
    }
    if (name == "Burnside") {
        c.expect('(');
        SymPrime p = parse_prime(c);
        c.expect(',');
        std::uint64_t rank = c.number();
        c.expect(')');
        return SymGroup::burnside(p, rank);
    }
    if (name == "FreeAb" || name == "FreeAbelian") {
        c.expect('(');
        Rank r = parse_rank(c);
        c.expect(')');
        return SymGroup::free_abelian(r);
    }
    if (name == "FpVec" || name == "FpVectorSpace") {
        c.expect('(');
        SymPrime p = parse_prime(c);
        c.expect(',');
        Rank r = parse_rank(c);
        c.expect(')');
        return SymGroup::fp_vector_space(p, r);
    }
    if (name == "CentralExt") {
        c.expect('(');
        SymGroup kernel = parse_term(c);
        c.expect(',');
        SymGroup base = parse_term(c);
        c.expect(')');
        return SymGroup::central_ext(std::move(kernel), std::move(base));
    }
    if (name == "Product") {
        c.expect('(');
        std::vector<SymGroup> factors;
        factors.push_back(parse_term(c));
        while (c.eat(','))
            factors.push_back(parse_term(c));
        c.expect(')');
        return SymGroup::product(std::move(factors));
    }
    c.fail("unknown constructor '" + name + "'");
}

} // namespace

SymGroup SymGroup::parse(const std::string& text) {
    Cursor c{text};
    SymGroup term = parse_term(c);
    if (!c.at_end())
        c.fail("trailing characters");
    return term;
}

// -------------------------------------------------------------- extensions

void validate_extension(const SymExtension& ext) {
    if (ext.central && !ext.kernel.is_abelian_typed())
        throw DomainError("a central extension needs an abelian-typed kernel, got " +
                          ext.kernel.to_string());
}

// ----------------------------------------------------------- rewrite rules

namespace {

struct RewriteBudget {
    const Limits& limits;
    std::vector<RuleStep>* trace = nullptr;
    std::uint32_t used = 0;

    // A rule that changed the term; counts against the bound.
    void spend(const char* rule, const char* why, const SymGroup& before, const SymGroup& after) {
        if (used >= limits.rewrite_bound)
            throw CapError("symbolic rewriting exceeded the rewrite bound of " +
                               std::to_string(limits.rewrite_bound),
                           "rewrite_bound", limits.rewrite_bound);
        ++used;
        if (trace)
            trace->push_back({rule, why, before.to_string(), after.to_string()});
    }

    // A fixed point or a container summary; recorded but free.
    void note(const char* rule, const char* why, const SymGroup& before, const SymGroup& after) {
        if (trace)
            trace->push_back({rule, why, before.to_string(), after.to_string()});
    }
};

[[noreturn]] void no_rule(const char* op, const SymGroup& term, const std::string& detail) {
    throw NoRuleError(std::string(op) + ": no rule for " + term.to_string() +
                      (detail.empty() ? "" : " (" + detail + ")"));
}

SymGroup localize_term(const SymGroup& g, const SymPrime& p, RewriteBudget& budget) {
    switch (g.kind()) {
    case SymKind::Trivial:
        budget.note("localize/trivial", "the trivial group is local for every localization", g, g);
        return g;

    case SymKind::FreeProductCp: {
        if (g.prime() != p)
            no_rule("sym_localize_p", g, "its prime differs from the localization prime " +
                                             p.to_string());
        SymGroup out = SymGroup::burnside(p, g.copies());
        budget.spend("localize/free-product",
                     "C_p * ... * C_p maps onto every exponent-p group generated by as many "
                     "elements, so its exponent-p localization is the free Burnside group of "
                     "that rank",
                     g, out);
        return out;
    }

    case SymKind::Burnside:
        if (g.prime() != p)
            no_rule("sym_localize_p", g, "its prime differs from the localization prime " +
                                             p.to_string());
        budget.note("localize/burnside-fixed", "a free Burnside group already has exponent p", g,
                    g);
        return g;

    case SymKind::FpVectorSpace:
        if (g.prime() != p)
            no_rule("sym_localize_p", g, "its prime differs from the localization prime " +
                                             p.to_string());
        budget.note("localize/fp-fixed", "an F_p-vector space already has exponent p", g, g);
        return g;

    case SymKind::FreeAbelian: {
        SymGroup out = SymGroup::fp_vector_space(p, g.rank());
        budget.spend("localize/free-abelian",
                     "on a free abelian group the coaugmentation is reduction mod p, "
                     "Z^r -> (Z/p)^r",
                     g, out);
        return out;
    }

    case SymKind::CentralExt: {
        const SymGroup& k = g.kernel();
        const SymGroup& b = g.base();
        if (p.is_large() && k == SymGroup::free_abelian(Rank::omega()) &&
            b.kind() == SymKind::Burnside && b.prime() == p && b.copies() >= 2) {
            SymGroup out =
                SymGroup::product(SymGroup::fp_vector_space(p, Rank::omega()), b);
            budget.spend(
                "localize/central-ext",
                "fiberwise localization reduces the free abelian kernel mod p; the rewritten "
                "extension is central since the base is centerless (Adian, Atabekyan) and splits "
                "because the base is free in the variety of exponent-p groups",
                g, out);
            return out;
        }
        no_rule("sym_localize_p", g,
                "only the central extension of a large-prime Burnside group of rank >= 2 by "
                "FreeAb(omega) is covered");
    }

    case SymKind::Product: {
        std::vector<SymGroup> out;
        out.reserve(g.factors().size());
        for (const auto& f : g.factors())
            out.push_back(localize_term(f, p, budget));
        SymGroup result = SymGroup::product(std::move(out));
        if (result != g)
            budget.note("localize/product",
                        "verbal subgroups of a direct product split componentwise, so exponent-p "
                        "localization acts factor by factor",
                        g, result);
        return result;
    }

    case SymKind::FiniteRef:
        no_rule("sym_localize_p", g,
                "finite references are handled by realizing them through the registry");
    }
    no_rule("sym_localize_p", g, "");
}

SymGroup cellularize_term(const SymGroup& g, const SymPrime& p, RewriteBudget& budget) {
    switch (g.kind()) {
    case SymKind::Trivial:
        budget.note("cell/trivial", "cellular approximation fixes the trivial group", g, g);
        return g;

    case SymKind::FreeProductCp:
        if (g.prime() != p)
            no_rule("sym_cellularize_p", g, "its prime differs from the cellularization prime " +
                                                p.to_string());
        budget.note("cell/free-product-fixed",
                    "a free product of copies of C_p is C_p-cellular (Rodriguez, Scherer)", g, g);
        return g;

    case SymKind::FpVectorSpace:
        if (g.prime() != p)
            no_rule("sym_cellularize_p", g, "its prime differs from the cellularization prime " +
                                                p.to_string());
        budget.note("cell/fp-fixed",
                    "an F_p-vector space is a colimit of copies of C_p, hence C_p-cellular", g, g);
        return g;

    case SymKind::Burnside: {
        if (g.prime() != p)
            no_rule("sym_cellularize_p", g, "its prime differs from the cellularization prime " +
                                                p.to_string());
        if (!p.is_large()) {
            budget.note("cell/burnside-small-fixed",
                        "at p = 2 this is C_2 x C_2 and at p = 3 the extraspecial group of order "
                        "27; both are finite p-groups generated by order-p elements with "
                        "p-torsion Schur multiplier, hence C_p-cellular",
                        g, g);
            return g;
        }
        if (g.copies() == 1) {
            budget.note("cell/burnside-rank1-fixed", "the rank-1 Burnside group is C_p itself", g,
                        g);
            return g;
        }
        SymGroup out = SymGroup::central_ext(SymGroup::free_abelian(Rank::omega()), g);
        budget.spend("cell/burnside-large",
                     "the C_p-cellular approximation of an infinite free Burnside group is a "
                     "central extension by its Schur multiplier, a free abelian group of "
                     "countable rank (Ol'shanskii)",
                     g, out);
        return out;
    }

    case SymKind::CentralExt: {
        const SymGroup& k = g.kernel();
        const SymGroup& b = g.base();
        if (p.is_large() && k == SymGroup::free_abelian(Rank::omega()) &&
            b.kind() == SymKind::Burnside && b.prime() == p && b.copies() >= 2) {
            budget.note("cell/approximation-fixed",
                        "this term is itself a C_p-cellular approximation and cellularization is "
                        "idempotent",
                        g, g);
            return g;
        }
        no_rule("sym_cellularize_p", g,
                "only the cellular approximation of a large-prime Burnside group is a known "
                "fixed point among central extensions");
    }

    case SymKind::Product: {
        std::vector<SymGroup> out;
        out.reserve(g.factors().size());
        for (const auto& f : g.factors())
            out.push_back(cellularize_term(f, p, budget));
        SymGroup result = SymGroup::product(std::move(out));
        if (result != g)
            budget.note("cell/product",
                        "the cellular approximation of a finite direct product is the product of "
                        "the approximations",
                        g, result);
        return result;
    }

    case SymKind::FreeAbelian:
        no_rule("sym_cellularize_p", g, "torsion-free terms are outside the cellular calculus");

    case SymKind::FiniteRef:
        no_rule("sym_cellularize_p", g,
                "finite references are handled by realizing them through the registry");
    }
    no_rule("sym_cellularize_p", g, "");
}

SymGroup center_term(const SymGroup& g, RewriteBudget& budget) {
    switch (g.kind()) {
    case SymKind::Trivial:
    case SymKind::FreeAbelian:
    case SymKind::FpVectorSpace:
        budget.note("center/abelian", "an abelian group is its own center", g, g);
        return g;

    case SymKind::FreeProductCp: {
        if (g.copies() == 1) {
            budget.note("center/abelian", "a single copy of C_p is abelian", g, g);
            return g;
        }
        SymGroup out = SymGroup::trivial();
        budget.spend("center/free-product",
                     "a free product of two or more nontrivial groups is centerless "
                     "(Magnus, Karrass, Solitar)",
                     g, out);
        return out;
    }

    case SymKind::Burnside: {
        if (g.copies() == 1) {
            budget.note("center/abelian", "the rank-1 Burnside group is C_p itself", g, g);
            return g;
        }
        if (!g.prime().is_large())
            no_rule("sym_center", g,
                    "small-prime Burnside groups are finite; compute the center on a "
                    "realization instead");
        SymGroup out = SymGroup::trivial();
        budget.spend("center/burnside",
                     "free Burnside groups of rank >= 2 and odd exponent >= 665 are centerless "
                     "(Adian, Atabekyan)",
                     g, out);
        return out;
    }

    case SymKind::CentralExt: {
        SymGroup base_center = center_term(g.base(), budget);
        if (base_center != SymGroup::trivial())
            no_rule("sym_center", g,
                    "the center of a central extension is determined here only over a "
                    "centerless base");
        SymGroup out = g.kernel();
        budget.spend("center/central-ext",
                     "in a central extension over a centerless group the kernel is the whole "
                     "center",
                     g, out);
        return out;
    }

    case SymKind::Product: {
        std::vector<SymGroup> out;
        out.reserve(g.factors().size());
        for (const auto& f : g.factors())
            out.push_back(center_term(f, budget));
        SymGroup result = SymGroup::product(std::move(out));
        if (result != g)
            budget.note("center/product",
                        "the center of a direct product is the product of the centers", g,
                        result);
        return result;
    }

    case SymKind::FiniteRef:
        no_rule("sym_center", g,
                "finite references are handled by realizing them through the registry");
    }
    no_rule("sym_center", g, "");
}

bool quotient_provably_centerless(const SymGroup& q, const Limits& limits) {
    RewriteBudget budget{limits};
    try {
        return center_term(q, budget) == SymGroup::trivial();
    } catch (const NoRuleError&) {
        return false;
    }
}

} // namespace

SymGroup sym_localize_p(const SymGroup& g, const SymPrime& p, const Limits& limits,
                        std::vector<RuleStep>* trace) {
    RewriteBudget budget{limits, trace};
    return localize_term(g, p, budget);
}

SymGroup sym_cellularize_p(const SymGroup& g, const SymPrime& p, const Limits& limits,
                           std::vector<RuleStep>* trace) {
    RewriteBudget budget{limits, trace};
    return cellularize_term(g, p, budget);
}

SymGroup sym_center(const SymGroup& g, const Limits& limits, std::vector<RuleStep>* trace) {
    RewriteBudget budget{limits, trace};
    return center_term(g, budget);
}

SymExtension fiberwise_localize(const SymExtension& ext, const SymPrime& p, const Limits& limits,
                                std::vector<RuleStep>* trace) {
    validate_extension(ext);

    if (ext.kernel == SymGroup::trivial()) {
        if (trace)
            trace->push_back({"fiberwise/trivial-kernel",
                              "with a trivial fiber the fiberwise construction changes nothing",
                              ext.total.to_string(), ext.total.to_string()});
        return ext;
    }

    RewriteBudget budget{limits, trace};
    SymGroup kernel = localize_term(ext.kernel, p, budget);

    // Rewrite the total when the calculus covers it; an uncovered total is
    // kept, the extension then only records the localized kernel.
    SymGroup total = ext.total;
    {
        std::vector<RuleStep> attempt;
        RewriteBudget inner{limits, trace ? &attempt : nullptr, budget.used};
        try {
            total = localize_term(ext.total, p, inner);
            budget.used = inner.used;
            if (trace)
                trace->insert(trace->end(), attempt.begin(), attempt.end());
        } catch (const NoRuleError&) {
            if (trace)
                trace->push_back({"fiberwise/total-kept",
                                  "no localization rule covers the total group, so it is kept",
                                  ext.total.to_string(), ext.total.to_string()});
        }
    }

    const bool central = ext.central && quotient_provably_centerless(ext.quotient, limits);
    if (trace && ext.central)
        trace->push_back({central ? "fiberwise/central-kept" : "fiberwise/central-dropped",
                          central ? "the quotient is provably centerless, so the localized kernel "
                                    "lands in the center"
                                  : "centrality is only propagated over a provably centerless "
                                    "quotient",
                          ext.quotient.to_string(), ext.quotient.to_string()});

    return SymExtension{std::move(kernel), std::move(total), ext.quotient, central};
}

// -------------------------------------------------------------- invariants

namespace {

bool term_has_p_torsion(const SymGroup& g) {
    switch (g.kind()) {
    case SymKind::FpVectorSpace:
    case SymKind::FreeProductCp:
    case SymKind::Burnside:
        return true;
    case SymKind::Product: {
        const auto& fs = g.factors();
        return std::any_of(fs.begin(), fs.end(), term_has_p_torsion);
    }
    default:
        return false;
    }
}

bool term_is_torsion_free(const SymGroup& g) {
    switch (g.kind()) {
    case SymKind::Trivial:
    case SymKind::FreeAbelian:
        return true;
    case SymKind::Product: {
        const auto& fs = g.factors();
        return std::all_of(fs.begin(), fs.end(), term_is_torsion_free);
    }
    default:
        return false;
    }
}

} // namespace

Certificate sym_distinguish(const SymGroup& g1, const SymGroup& g2) {
    SymGroup z1 = SymGroup::trivial();
    SymGroup z2 = SymGroup::trivial();
    try {
        z1 = sym_center(g1);
        z2 = sym_center(g2);
    } catch (const Error&) {
        Certificate c;
        c.claim = "the calculus cannot determine the centers of " + g1.to_string() + " and " +
                  g2.to_string() + ", so no invariant was evaluated";
        c.invariant_name = "center_is_trivial";
        c.value_left = false;
        c.value_right = false;
        c.conclusion = "indistinguishable by this invariant";
        return c;
    }

    struct Probe {
        const char* name;
        bool left;
        bool right;
    };
    const Probe probes[] = {
        {"center_is_trivial", z1 == SymGroup::trivial(), z2 == SymGroup::trivial()},
        {"center_has_p_torsion", term_has_p_torsion(z1), term_has_p_torsion(z2)},
        {"center_is_torsion_free", term_is_torsion_free(z1), term_is_torsion_free(z2)},
    };

    const std::string centers = "center(" + g1.to_string() + ") = " + z1.to_string() +
                                " and center(" + g2.to_string() + ") = " + z2.to_string();

    for (const Probe& probe : probes) {
        if (probe.left != probe.right) {
            Certificate c;
            c.claim = centers + "; they disagree on " + probe.name;
            c.invariant_name = probe.name;
            c.value_left = probe.left;
            c.value_right = probe.right;
            c.conclusion = "not isomorphic";
            return c;
        }
    }

    Certificate c;
    c.claim = centers + "; all three center invariants agree";
    c.invariant_name = "center_is_trivial";
    c.value_left = probes[0].left;
    c.value_right = probes[0].right;
    c.conclusion = "indistinguishable by this invariant";
    return c;
}

bool sym_exponent_p(const SymGroup& g, const SymPrime& p) {
    switch (g.kind()) {
    case SymKind::Trivial:
        return true;
    case SymKind::FpVectorSpace:
    case SymKind::Burnside:
        return g.prime() == p;
    case SymKind::Product: {
        const auto& fs = g.factors();
        return std::all_of(fs.begin(), fs.end(),
                           [&](const SymGroup& f) { return sym_exponent_p(f, p); });
    }
    default:
        return false;
    }
}

} // namespace locell
