#ifndef SPEX_GAUSSIAN_FIELD_HPP
#define SPEX_GAUSSIAN_FIELD_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spex/lattice.hpp"
#include "spex/random.hpp"

namespace spex {

/// Variogram family of the driving mean-zero Gaussian field W with
/// stationary increments and W_0 = 0.
///
/// isotropic_fbm:   cov(W_s,W_t) = (c/2)(|s|^2H + |t|^2H - |s-t|^2H),
///                  Euclidean norms, H in (0,1], c > 0.
/// brownian_sheet:  cov(W_s,W_t) = min(s1,t1) min(s2,t2) on the closed
///                  positive quadrant (H has the usual 1/2 semantics).
struct VariogramSpec {
    enum class Mode { isotropic_fbm, brownian_sheet };

    double hurst = 0.5;
    double scale = 2.0;
    Mode mode = Mode::isotropic_fbm;

    /// Half the variance of W_s: delta(s) = var(W_s)/2.
    double delta(LatticePoint s) const;

    double covariance(LatticePoint s, LatticePoint t) const;

    /// Half the increment variance, var(W_s - W_t)/2. Equals delta(s-t)
    /// for the isotropic mode; location-dependent for the sheet.
    double increment_half_variance(LatticePoint s, LatticePoint t) const;

    void validate() const;
};

/// Exact joint sampler over a fixed finite site set, backed by a dense
/// Cholesky factorization of the covariance matrix. Sites with zero
/// variance (the origin, sheet axes) are pinned to W = 0 by construction.
/// Immutable after build; safe to share read-only across threads, each
/// caller supplying its own stream.
class GaussianSampler {
public:
    static GaussianSampler build(std::vector<LatticePoint> sites,
                                 const VariogramSpec& spec,
                                 double jitter = 0.0);

    /// One joint draw; out[i] corresponds to sites()[i].
    void sample(RandomStream& stream, std::span<double> out) const;

    std::vector<double> sample(RandomStream& stream) const;

    const std::vector<LatticePoint>& sites() const { return sites_; }
    const VariogramSpec& spec() const { return spec_; }
    std::size_t size() const { return sites_.size(); }

    /// Max-norm factorization residual ||L L^T - C||_max against the
    /// jitter-free covariance.
    double factor_residual() const;

    /// Covariance entry as built (no jitter), for diagnostics and tests.
    double covariance(std::size_t i, std::size_t j) const;

private:
    std::vector<LatticePoint> sites_;
    VariogramSpec spec_;
    std::vector<int> active_index_; // -1 for pinned (zero-variance) sites
    Eigen::MatrixXd factor_;        // lower-triangular, active sites only
    double jitter_used_ = 0.0;
};

/// Sampler over the observation grid {1..n}^2 in row-major site order.
GaussianSampler grid_sampler(int n, const VariogramSpec& spec);

} // namespace spex

#endif
