#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace locell {

// A word in abstract generators: letter +k is generator k-1, letter -k its
// inverse.  The empty word is the identity.
struct Word {
    std::vector<std::int32_t> letters;

    static Word one() { return {}; }
    static Word gen(std::uint32_t index) { return {{static_cast<std::int32_t>(index) + 1}}; }

    Word inverse() const;
    Word operator*(const Word& other) const;
    Word pow(std::int64_t e) const;
    // Remove adjacent cancelling pairs.
    Word reduced() const;
    bool empty() const noexcept { return letters.empty(); }

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;
};

// A finite presentation < gens | relators >.
struct Presentation {
    std::vector<std::string> gen_names;
    std::vector<Word> relators;

    // Grammar: "gens: a, b; rels: a^3, b^3, (a*b)^3".  Relator entries may
    // also be equations chained with '=': "a^3 = b^3 = (a*b)^2" turns into
    // the relators a^3*(b^3)^-1 and b^3*((a*b)^2)^-1.  Exponents are any
    // integers, '*' concatenates, parentheses group.
    static Presentation parse(const std::string& text);

    std::string word_to_string(const Word& w) const;
    std::string to_string() const;

    // Parse a single word over this presentation's generator names.
    Word parse_word(const std::string& text) const;
};

} // namespace locell
