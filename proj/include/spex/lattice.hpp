#ifndef SPEX_LATTICE_HPP
#define SPEX_LATTICE_HPP

#include <cmath>
#include <cstdint>

namespace spex {

/// Point (or lag) on the integer lattice Z^2.
struct LatticePoint {
    int x = 0;
    int y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend LatticePoint operator-(LatticePoint a, LatticePoint b) {
        return {a.x - b.x, a.y - b.y};
    }
    friend LatticePoint operator+(LatticePoint a, LatticePoint b) {
        return {a.x + b.x, a.y + b.y};
    }
};

inline double norm2(LatticePoint p) {
    return std::sqrt(static_cast<double>(p.x) * p.x + static_cast<double>(p.y) * p.y);
}

inline int norm_inf(LatticePoint p) {
    return std::max(std::abs(p.x), std::abs(p.y));
}

inline int norm1(LatticePoint p) {
    return std::abs(p.x) + std::abs(p.y);
}

struct LatticePointHash {
    std::size_t operator()(const LatticePoint& p) const {
        auto ux = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x));
        auto uy = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y));
        std::uint64_t z = (ux << 32) | uy;
        z ^= z >> 33;
        z *= 0xFF51AFD7ED558CCDULL;
        z ^= z >> 33;
        return static_cast<std::size_t>(z);
    }
};

} // namespace spex

#endif
