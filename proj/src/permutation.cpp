#include "locell/permutation.hpp"

#include "locell/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace locell {

Permutation::Permutation(std::uint32_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0u);
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (std::uint32_t img : images) {
        if (img >= images.size() || seen[img])
            throw DomainError("image vector is not a bijection");
        seen[img] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
}

Permutation Permutation::from_cycles(const std::string& text, std::uint32_t min_degree) {
    std::vector<std::vector<std::uint32_t>> cycles;
    std::uint32_t max_point = 0;
    bool any_point = false;

    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i == text.size())
        throw ParseError("empty permutation text");
    while (i < text.size()) {
        if (text[i] != '(')
            throw ParseError("expected '(' in cycle notation: " + text);
        ++i;
        std::vector<std::uint32_t> cycle;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("expected point number in cycle notation: " + text);
            std::uint64_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + (text[i] - '0');
                if (v > 0xffffffffull)
                    throw ParseError("point out of range in cycle notation");
                ++i;
            }
            cycle.push_back(static_cast<std::uint32_t>(v));
            max_point = std::max(max_point, static_cast<std::uint32_t>(v));
            any_point = true;
            skip_ws();
            if (i < text.size() && text[i] == ',') { ++i; skip_ws(); }
        }
        if (i == text.size())
            throw ParseError("unterminated cycle: " + text);
        ++i; // ')'
        if (!cycle.empty())
            cycles.push_back(std::move(cycle));
        skip_ws();
    }

    std::uint32_t degree = std::max(min_degree, any_point ? max_point + 1 : 0u);
    std::vector<std::uint32_t> images(degree);
    std::iota(images.begin(), images.end(), 0u);
    std::vector<bool> touched(degree, false);
    for (const auto& cycle : cycles) {
        for (std::uint32_t pt : cycle) {
            if (touched[pt])
                throw ParseError("point repeated across cycles: " + text);
            touched[pt] = true;
        }
        for (std::size_t k = 0; k < cycle.size(); ++k)
            images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
}

bool Permutation::is_identity() const noexcept {
    for (std::uint32_t x = 0; x < degree(); ++x)
        if (images_[x] != x) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<std::uint32_t> inv(images_.size());
    for (std::uint32_t x = 0; x < degree(); ++x)
        inv[images_[x]] = x;
    Permutation p;
    p.images_ = std::move(inv);
    return p;
}

Permutation Permutation::operator*(const Permutation& other) const {
    if (degree() != other.degree())
        throw DomainError("composing permutations of different degree");
    std::vector<std::uint32_t> out(images_.size());
    for (std::uint32_t x = 0; x < degree(); ++x)
        out[x] = other.images_[images_[x]];
    Permutation p;
    p.images_ = std::move(out);
    return p;
}

std::uint64_t Permutation::order() const {
    std::vector<bool> seen(degree(), false);
    std::uint64_t ord = 1;
    for (std::uint32_t x = 0; x < degree(); ++x) {
        if (seen[x]) continue;
        std::uint64_t len = 0;
        std::uint32_t y = x;
        do {
            seen[y] = true;
            y = images_[y];
            ++len;
        } while (y != x);
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::uint32_t Permutation::first_moved() const noexcept {
    for (std::uint32_t x = 0; x < degree(); ++x)
        if (images_[x] != x) return x;
    return degree();
}

Permutation Permutation::extended(std::uint32_t new_degree) const {
    if (new_degree < degree())
        throw DomainError("cannot shrink a permutation");
    std::vector<std::uint32_t> out(new_degree);
    std::iota(out.begin(), out.end(), 0u);
    std::copy(images_.begin(), images_.end(), out.begin());
    Permutation p;
    p.images_ = std::move(out);
    return p;
}

std::string Permutation::to_cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(degree(), false);
    bool any = false;
    for (std::uint32_t x = 0; x < degree(); ++x) {
        if (seen[x] || images_[x] == x) { seen[x] = true; continue; }
        any = true;
        out << '(';
        std::uint32_t y = x;
        bool first = true;
        do {
            if (!first) out << ' ';
            first = false;
            out << y;
            seen[y] = true;
            y = images_[y];
        } while (y != x);
        out << ')';
    }
    if (!any) return "()";
    return out.str();
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
    // FNV-1a over the image words; plenty for hash buckets.
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t v : p.images()) {
        h ^= v;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace locell
