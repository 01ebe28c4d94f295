#include "locell/words.hpp"

#include "locell/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace locell {

Word Word::inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        w.letters.push_back(-*it);
    return w;
}

Word Word::operator*(const Word& other) const {
    Word w = *this;
    w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
    return w;
}

Word Word::pow(std::int64_t e) const {
    Word base = e < 0 ? inverse() : *this;
    std::int64_t n = e < 0 ? -e : e;
    Word w;
    for (std::int64_t i = 0; i < n; ++i)
        w = w * base;
    return w;
}

Word Word::reduced() const {
    Word w;
    for (std::int32_t l : letters) {
        if (!w.letters.empty() && w.letters.back() == -l)
            w.letters.pop_back();
        else
            w.letters.push_back(l);
    }
    return w;
}

namespace {

struct WordParser {
    const std::string& text;
    std::size_t pos = 0;
    const std::vector<std::string>& names;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool consume(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError(why + " at position " + std::to_string(pos) + " in word: " + text);
    }

    std::int64_t parse_int() {
        skip_ws();
        bool neg = consume('-');
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected integer");
        std::int64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) fail("exponent too large");
            ++pos;
        }
        return neg ? -v : v;
    }

    Word parse_atom() {
        skip_ws();
        if (consume('(')) {
            Word w = parse_word();
            if (!consume(')')) fail("expected ')'");
            return w;
        }
        if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            fail("expected generator name");
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        std::string name = text.substr(start, pos - start);
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            fail("unknown generator '" + name + "'");
        return Word::gen(static_cast<std::uint32_t>(it - names.begin()));
    }

    Word parse_term() {
        Word w = parse_atom();
        skip_ws();
        if (consume('^'))
            w = w.pow(parse_int());
        return w;
    }

    Word parse_word() {
        Word w = parse_term();
        while (true) {
            skip_ws();
            if (consume('*')) {
                w = w * parse_term();
            } else {
                break;
            }
        }
        return w;
    }
};

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trimmed(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace

Word Presentation::parse_word(const std::string& text) const {
    WordParser p{text, 0, gen_names};
    Word w = p.parse_word();
    p.skip_ws();
    if (p.pos != text.size())
        p.fail("trailing input");
    return w;
}

Presentation Presentation::parse(const std::string& text) {
    auto gens_pos = text.find("gens:");
    if (gens_pos == std::string::npos)
        throw ParseError("presentation must start with 'gens:': " + text);
    auto semi = text.find(';', gens_pos);
    if (semi == std::string::npos)
        throw ParseError("presentation needs ';' between gens and rels: " + text);
    auto rels_pos = text.find("rels:", semi);
    if (rels_pos == std::string::npos)
        throw ParseError("presentation must contain 'rels:': " + text);

    Presentation p;
    for (const auto& part : split_on(text.substr(gens_pos + 5, semi - gens_pos - 5), ',')) {
        std::string name = trimmed(part);
        if (name.empty())
            throw ParseError("empty generator name in: " + text);
        for (char c : name)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                throw ParseError("bad generator name '" + name + "'");
        if (std::find(p.gen_names.begin(), p.gen_names.end(), name) != p.gen_names.end())
            throw ParseError("duplicate generator name '" + name + "'");
        p.gen_names.push_back(name);
    }
    if (p.gen_names.empty())
        throw ParseError("presentation needs at least one generator");

    std::string rels = trimmed(text.substr(rels_pos + 5));
    if (!rels.empty()) {
        for (const auto& part : split_on(rels, ',')) {
            std::string rel = trimmed(part);
            if (rel.empty())
                throw ParseError("empty relator in: " + text);
            // Equation chains w1 = w2 = w3 yield relators w1*w2^-1, w2*w3^-1.
            auto sides = split_on(rel, '=');
            std::vector<Word> words;
            for (const auto& side : sides)
                words.push_back(p.parse_word(trimmed(side)));
            if (words.size() == 1) {
                p.relators.push_back(words[0].reduced());
            } else {
                for (std::size_t i = 0; i + 1 < words.size(); ++i)
                    p.relators.push_back((words[i] * words[i + 1].inverse()).reduced());
            }
        }
    }
    for (const auto& r : p.relators)
        if (r.empty())
            throw ParseError("relator reduces to the empty word in: " + text);
    return p;
}

std::string Presentation::word_to_string(const Word& w) const {
    if (w.letters.empty())
        return "1";
    std::ostringstream out;
    std::size_t i = 0;
    bool first = true;
    while (i < w.letters.size()) {
        std::int32_t l = w.letters[i];
        std::size_t run = 1;
        while (i + run < w.letters.size() && w.letters[i + run] == l)
            ++run;
        if (!first) out << "*";
        first = false;
        std::uint32_t gi = static_cast<std::uint32_t>((l > 0 ? l : -l) - 1);
        out << gen_names.at(gi);
        std::int64_t e = l > 0 ? static_cast<std::int64_t>(run) : -static_cast<std::int64_t>(run);
        if (e != 1) out << "^" << e;
        i += run;
    }
    return out.str();
}

std::string Presentation::to_string() const {
    std::ostringstream out;
    out << "gens: ";
    for (std::size_t i = 0; i < gen_names.size(); ++i) {
        if (i) out << ", ";
        out << gen_names[i];
    }
    out << "; rels: ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
        if (i) out << ", ";
        out << word_to_string(relators[i]);
    }
    return out.str();
}

} // namespace locell
