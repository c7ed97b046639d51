#ifndef SPEX_RANDOM_HPP
#define SPEX_RANDOM_HPP

#include <cstdint>
#include <vector>

namespace spex {

/// Counter-based pseudo-random stream (SplitMix64 core).
///
/// The generator is a pure function of (key, counter), so a stream is fully
/// described by its seed and position. Sub-streams for replication r are
/// derived by remixing the key with r; derivation is pure and never touches
/// the parent stream state, which makes replication fan-out deterministic
/// under any scheduling.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : key_(seed) {}

    /// Independent sub-stream for the given index (pure, parent unchanged).
    static RandomStream derive(std::uint64_t seed, std::uint64_t index);
    RandomStream derive(std::uint64_t index) const { return derive(key_, index); }

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform();

    /// Standard exponential, -log(U).
    double exponential();

    /// Standard normal via Box-Muller; the second variate of each pair is
    /// cached so two consecutive calls consume two uniforms.
    double normal();

    std::uint64_t seed() const { return key_; }
    std::uint64_t position() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Strictly increasing Poisson arrival times: cumulative sums of iid
/// standard exponentials.
struct ArrivalSequence {
    std::vector<double> gammas;
};

/// Unit Frechet quantile transform: P(X <= x) = exp(-1/x) for X = -1/log(u).
double unit_frechet(double u);

/// One unit Frechet draw from the stream.
double unit_frechet_sample(RandomStream& stream);

ArrivalSequence gamma_arrivals(RandomStream& stream, std::size_t count);

/// Cumulative sums of the given increments (the deterministic core of
/// gamma_arrivals, exposed for direct checks).
ArrivalSequence arrivals_from_increments(const std::vector<double>& increments);

} // namespace spex

#endif
