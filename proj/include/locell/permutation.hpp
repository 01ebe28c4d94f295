#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace locell {

// A permutation of {0, ..., n-1}, stored as its image vector.
// Composition is left-to-right: (a * b)(x) = b(a(x)).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::uint32_t degree);                 // identity
    static Permutation from_images(std::vector<std::uint32_t> images);
    static Permutation from_cycles(const std::string& text, std::uint32_t min_degree = 0);

    std::uint32_t degree() const noexcept { return static_cast<std::uint32_t>(images_.size()); }
    std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
    const std::vector<std::uint32_t>& images() const noexcept { return images_; }

    bool is_identity() const noexcept;
    Permutation inverse() const;
    Permutation operator*(const Permutation& other) const;      // this first, then other
    std::uint64_t order() const;

    // Smallest point moved, or degree() if identity.
    std::uint32_t first_moved() const noexcept;

    // Same mapping on a possibly larger set of points.
    Permutation extended(std::uint32_t new_degree) const;

    // Disjoint cycle notation, e.g. "(0 1 2)(3 4)"; identity prints "()".
    std::string to_cycle_string() const;

    bool operator==(const Permutation& other) const noexcept { return images_ == other.images_; }
    auto operator<=>(const Permutation& other) const noexcept { return images_ <=> other.images_; }

private:
    std::vector<std::uint32_t> images_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept;
};

} // namespace locell
