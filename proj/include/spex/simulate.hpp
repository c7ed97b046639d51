#ifndef SPEX_SIMULATE_HPP
#define SPEX_SIMULATE_HPP

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spex/gaussian_field.hpp"
#include "spex/lattice.hpp"
#include "spex/lattice_field.hpp"
#include "spex/random.hpp"

namespace spex {

/// Finite nonnegative max-moving-average weight function.
struct WeightKernel {
    std::vector<std::pair<LatticePoint, double>> weights;
    double total = 0.0;   // w0 = sum of weights
    int radius_inf = 0;   // max |s|_inf over the support

    double weight_at(LatticePoint s) const;
    void validate() const;

private:
    friend WeightKernel make_kernel(std::vector<std::pair<LatticePoint, double>>);
    std::unordered_map<LatticePoint, double, LatticePointHash> lookup_;
};

WeightKernel make_kernel(std::vector<std::pair<LatticePoint, double>> weights);

/// Diamond kernel w(s) = phi^(|s1|+|s2|) on |s1|+|s2| <= k0.
WeightKernel mma_weight_diamond(double phi, int k0);

/// Max-moving average X_t = max_s w(s) Z_{t-s} with iid unit Frechet
/// noise Z drawn on the grid dilated by the kernel support, so boundary
/// sites see true (not wrapped) noise. Marginals are Frechet with scale
/// w0.
LatticeField simulate_mma(int n, const WeightKernel& kernel, RandomStream& stream);

struct BrSimConfig {
    enum class Mode { truncated, exact };

    VariogramSpec spec;
    Mode mode = Mode::truncated;
    int truncation_terms = 1000;
    std::uint64_t max_field_draws = 1'000'000; // exact-mode guard

    void validate() const;
};

/// Truncated Brown-Resnick construction over the sampler's sites,
/// X_s = max_{1<=j<=J} Gamma_j^{-1} V_s^(j) with log-Gaussian spectral
/// functions V normalized to mean one and calibrated so that the pair law
/// is exp{-2 Phi(sqrt(delta(h)))/y} at equal thresholds. Arrival
/// increments and field draws are interleaved per term, so a run with
/// larger J extends a smaller one on a common stream prefix and the
/// result is pointwise monotone in J.
std::vector<double> br_truncated_at_sites(const GaussianSampler& sampler,
                                          int truncation_terms,
                                          RandomStream& stream);

/// Exact Brown-Resnick simulation over the sampler's sites via the
/// extremal-functions construction: sites are visited in order; at each
/// site a record-breaking loop over fresh Poisson arrivals draws spectral
/// functions normalized at that site, accepting those that do not exceed
/// the running maximum at previously finished sites, and stopping once
/// Gamma^{-1} falls below the current value there. Throws if the field
/// draw budget is exhausted.
std::vector<double> br_exact_at_sites(const GaussianSampler& sampler,
                                      RandomStream& stream,
                                      std::uint64_t max_field_draws = 1'000'000);

LatticeField simulate_br_truncated(int n, const BrSimConfig& config,
                                   const GaussianSampler& sampler,
                                   RandomStream& stream);
LatticeField simulate_br_truncated(int n, const BrSimConfig& config, RandomStream& stream);

LatticeField simulate_br_exact(int n, const BrSimConfig& config,
                               const GaussianSampler& sampler,
                               RandomStream& stream);
LatticeField simulate_br_exact(int n, const BrSimConfig& config, RandomStream& stream);

} // namespace spex

#endif
