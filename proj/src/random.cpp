#include "spex/random.hpp"

#include <cmath>

namespace spex {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

} // namespace

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t index) {
    // Two mixing rounds keep sibling streams decorrelated even for
    // adjacent indices.
    std::uint64_t key = mix64(seed + kGamma) ^ mix64(index * kGamma + 0x71C67D1CE5B94E63ULL);
    return RandomStream(mix64(key));
}

std::uint64_t RandomStream::next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGamma);
}

double RandomStream::uniform() {
    // (k + 0.5) * 2^-53 with k in [0, 2^53): strictly inside (0,1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::exponential() {
    return -std::log(uniform());
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double unit_frechet(double u) {
    return -1.0 / std::log(u);
}

double unit_frechet_sample(RandomStream& stream) {
    return unit_frechet(stream.uniform());
}

ArrivalSequence gamma_arrivals(RandomStream& stream, std::size_t count) {
    ArrivalSequence seq;
    seq.gammas.reserve(count);
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        total += stream.exponential();
        seq.gammas.push_back(total);
    }
    return seq;
}

ArrivalSequence arrivals_from_increments(const std::vector<double>& increments) {
    ArrivalSequence seq;
    seq.gammas.reserve(increments.size());
    double total = 0.0;
    for (double e : increments) {
        total += e;
        seq.gammas.push_back(total);
    }
    return seq;
}

} // namespace spex
