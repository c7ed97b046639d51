#include "spex/simulate.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spex {

double WeightKernel::weight_at(LatticePoint s) const {
    auto it = lookup_.find(s);
    return it == lookup_.end() ? 0.0 : it->second;
}

void WeightKernel::validate() const {
    if (weights.empty()) throw std::invalid_argument("WeightKernel: empty support");
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw std::invalid_argument("WeightKernel: total weight must be positive and finite");
    }
    for (const auto& [s, w] : weights) {
        (void)s;
        if (w < 0.0 || !std::isfinite(w)) {
            throw std::invalid_argument("WeightKernel: weights must be nonnegative and finite");
        }
    }
}

WeightKernel make_kernel(std::vector<std::pair<LatticePoint, double>> weights) {
    WeightKernel kernel;
    kernel.weights = std::move(weights);
    for (const auto& [s, w] : kernel.weights) {
        kernel.total += w;
        kernel.radius_inf = std::max(kernel.radius_inf, norm_inf(s));
        kernel.lookup_[s] = w;
    }
    kernel.validate();
    return kernel;
}

WeightKernel mma_weight_diamond(double phi, int k0) {
    if (!(phi > 0.0)) throw std::invalid_argument("mma_weight_diamond: phi must be positive");
    if (k0 < 0) throw std::invalid_argument("mma_weight_diamond: k0 must be nonnegative");
    std::vector<std::pair<LatticePoint, double>> weights;
    for (int x = -k0; x <= k0; ++x) {
        for (int y = -k0; y <= k0; ++y) {
            const int l1 = std::abs(x) + std::abs(y);
            if (l1 <= k0) {
                weights.push_back({{x, y}, std::pow(phi, l1)});
            }
        }
    }
    return make_kernel(std::move(weights));
}

LatticeField simulate_mma(int n, const WeightKernel& kernel, RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("simulate_mma: n must be >= 1");
    kernel.validate();

    const int r = kernel.radius_inf;
    const int m = n + 2 * r; // dilated noise grid side, coordinates 1-r .. n+r
    std::vector<double> noise(static_cast<std::size_t>(m) * m);
    for (auto& z : noise) z = unit_frechet_sample(stream);

    auto noise_at = [&](int i, int j) {
        return noise[static_cast<std::size_t>(i - (1 - r)) * m + (j - (1 - r))];
    };

    LatticeField field;
    field.n = n;
    field.seed = stream.seed();
    field.model = "mma";
    field.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            double best = 0.0;
            for (const auto& [s, w] : kernel.weights) {
                if (w <= 0.0) continue;
                best = std::max(best, w * noise_at(i - s.x, j - s.y));
            }
            field.at(i, j) = best;
        }
    }
    std::ostringstream params;
    params << "w0=" << kernel.total << ";support=" << kernel.weights.size();
    field.params = params.str();
    return field;
}

void BrSimConfig::validate() const {
    spec.validate();
    if (mode == Mode::truncated && truncation_terms < 1) {
        throw std::invalid_argument("BrSimConfig: truncation_terms must be >= 1");
    }
}

// The spectral functions are exp(sqrt(2) W_s - 2 delta(s)): the driving
// Gaussian carries doubled covariance relative to the spec, which makes
// the equal-threshold pair law exp{-2 Phi(sqrt(delta(h)))/y} and the
// extremogram 2 Phibar(sqrt(delta(h))), matching the parametric family.
std::vector<double> br_truncated_at_sites(const GaussianSampler& sampler,
                                          int truncation_terms,
                                          RandomStream& stream) {
    const std::size_t count = sampler.size();
    std::vector<double> deltas(count);
    for (std::size_t i = 0; i < count; ++i) {
        deltas[i] = sampler.spec().delta(sampler.sites()[i]);
    }

    std::vector<double> values(count, 0.0);
    std::vector<double> w(count);
    double gamma = 0.0;
    for (int j = 0; j < truncation_terms; ++j) {
        gamma += stream.exponential();
        sampler.sample(stream, w);
        for (std::size_t i = 0; i < count; ++i) {
            values[i] = std::max(values[i], std::exp(M_SQRT2 * w[i] - 2.0 * deltas[i]) / gamma);
        }
    }
    return values;
}

std::vector<double> br_exact_at_sites(const GaussianSampler& sampler,
                                      RandomStream& stream,
                                      std::uint64_t max_field_draws) {
    const std::size_t count = sampler.size();
    const auto& sites = sampler.sites();
    const auto& spec = sampler.spec();

    std::vector<double> value(count, 0.0);
    std::vector<double> log_value(count, -std::numeric_limits<double>::infinity());
    std::vector<double> w(count);
    std::vector<double> dhv(count); // half increment variance against site k
    std::uint64_t draws = 0;

    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < count; ++i) {
            dhv[i] = spec.increment_half_variance(sites[i], sites[k]);
        }
        double gamma = stream.exponential();
        while (1.0 / gamma > value[k]) {
            if (++draws > max_field_draws) {
                throw std::runtime_error("br_exact: exact simulation budget exceeded");
            }
            sampler.sample(stream, w);
            const double wk = w[k];
            const double lg = std::log(gamma);

            // Spectral function normalized at site k (exactly 1/gamma
            // there), with the same doubled-covariance convention as the
            // truncated construction: log Y(s_i) = sqrt(2)(W_i - W_k)
            // - 2 dhv(i,k). Accept only if it stays below the finished
            // maxima.
            bool accept = true;
            for (std::size_t i = 0; i < k; ++i) {
                if (M_SQRT2 * (w[i] - wk) - 2.0 * dhv[i] - lg >= log_value[i]) {
                    accept = false;
                    break;
                }
            }
            if (accept) {
                for (std::size_t i = 0; i < count; ++i) {
                    const double lv = M_SQRT2 * (w[i] - wk) - 2.0 * dhv[i] - lg;
                    if (lv > log_value[i]) {
                        log_value[i] = lv;
                        value[i] = std::exp(lv);
                    }
                }
            }
            gamma += stream.exponential();
        }
    }
    return value;
}

LatticeField simulate_br_truncated(int n, const BrSimConfig& config,
                                   const GaussianSampler& sampler,
                                   RandomStream& stream) {
    config.validate();
    if (config.mode != BrSimConfig::Mode::truncated) {
        throw std::invalid_argument("simulate_br_truncated: config mode is not truncated");
    }
    LatticeField field;
    field.n = n;
    field.seed = stream.seed();
    field.model = "br-truncated";
    field.values = br_truncated_at_sites(sampler, config.truncation_terms, stream);
    std::ostringstream params;
    params << "H=" << config.spec.hurst << ";c=" << config.spec.scale << ";mode="
           << (config.spec.mode == VariogramSpec::Mode::isotropic_fbm ? "isotropic" : "sheet")
           << ";J=" << config.truncation_terms;
    field.params = params.str();
    field.validate();
    return field;
}

LatticeField simulate_br_truncated(int n, const BrSimConfig& config, RandomStream& stream) {
    return simulate_br_truncated(n, config, grid_sampler(n, config.spec), stream);
}

LatticeField simulate_br_exact(int n, const BrSimConfig& config,
                               const GaussianSampler& sampler,
                               RandomStream& stream) {
    config.validate();
    LatticeField field;
    field.n = n;
    field.seed = stream.seed();
    field.model = "br-exact";
    field.values = br_exact_at_sites(sampler, stream, config.max_field_draws);
    std::ostringstream params;
    params << "H=" << config.spec.hurst << ";c=" << config.spec.scale << ";mode="
           << (config.spec.mode == VariogramSpec::Mode::isotropic_fbm ? "isotropic" : "sheet");
    field.params = params.str();
    field.validate();
    return field;
}

LatticeField simulate_br_exact(int n, const BrSimConfig& config, RandomStream& stream) {
    return simulate_br_exact(n, config, grid_sampler(n, config.spec), stream);
}

} // namespace spex
