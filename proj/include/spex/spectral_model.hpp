#ifndef SPEX_SPECTRAL_MODEL_HPP
#define SPEX_SPECTRAL_MODEL_HPP

#include <string>
#include <vector>

#include "spex/simulate.hpp"

namespace spex {

enum class ModelFamily { brown_resnick, mma_diamond };

/// Brown-Resnick extremogram 2 Phibar(sqrt((c/2) |h|^2H)), Euclidean norm.
double br_extremogram(int h1, int h2, double hurst, double scale);

/// MMA extremogram sum_s min(w(s), w(s+h)) / w0 by enumeration over the
/// finite support.
double mma_extremogram(int h1, int h2, const WeightKernel& kernel);

/// Parametric extremal spectral density
///   f(w) = sum_{|h|_inf <= R} gamma(h) cos(w . h)
/// with a truncation radius R certified against a computable tail bound
/// where feasible. The Brown-Resnick extremogram decays too slowly for
/// small H to certify tight tolerances with a finite table; there the
/// auto radius search is capped, the achieved bound is recorded
/// (certified() reports false), and density evaluation applies a product
/// Fejer lag window. The windowed coefficients stay nonnegative definite
/// (Schur product with a nonnegative-definite window), so the evaluated
/// density inherits positivity instead of picking up truncation ringing.
class SpectralModel {
public:
    struct Options {
        double tail_tol = 1e-10;
        int radius_cap = 512;
        int radius_override = 0; // 0 = choose automatically
    };

    static SpectralModel brown_resnick(double hurst, double scale, Options opt);
    static SpectralModel brown_resnick(double hurst, double scale) {
        return brown_resnick(hurst, scale, Options());
    }
    static SpectralModel mma_diamond(double phi, int k0, Options opt);
    static SpectralModel mma_diamond(double phi, int k0) {
        return mma_diamond(phi, k0, Options());
    }

    ModelFamily family() const { return family_; }
    /// The fitted coordinate: H for Brown-Resnick, phi for MMA.
    double theta() const { return theta_; }
    double hurst() const { return theta_; }
    double phi() const { return theta_; }
    double br_scale() const { return br_scale_; }
    int mma_k0() const { return mma_k0_; }

    int radius() const { return radius_; }
    double tail_tol() const { return tail_tol_; }
    /// Upper bound on sum_{|h|_inf > R} gamma(h) actually achieved.
    double tail_bound() const { return tail_bound_; }
    bool certified() const { return tail_bound_ <= tail_tol_; }
    /// True when density evaluation applies the positive-definite lag
    /// window (uncertified radii only).
    bool tapered() const { return !certified(); }

    double extremogram(int h1, int h2) const;

    /// Direct truncated cosine sum at an arbitrary frequency.
    double spectral_density(double w1, double w2) const;

    /// f at all Fourier frequencies lambda_j = 2 pi j / n, j in {1..n}^2,
    /// j-major order (same layout as Periodogram). Computed by wrapping
    /// the extremogram table onto the n x n torus and one FFT; exact at
    /// the lambda_j for any radius.
    std::vector<double> density_grid(int n) const;

    /// Flat key-value record (family, params, R, tail_tol).
    std::string to_record() const;
    static SpectralModel from_record(const std::string& record);

private:
    double lag_window(int h1, int h2) const;

    ModelFamily family_ = ModelFamily::brown_resnick;
    double theta_ = 0.5;
    double br_scale_ = 2.0;
    int mma_k0_ = 5;
    WeightKernel kernel_; // MMA only
    int radius_ = 0;
    double tail_tol_ = 1e-10;
    double tail_bound_ = 0.0;
};

struct PositivityReport {
    double min_value = 0.0;
    double argmin_w1 = 0.0;
    double argmin_w2 = 0.0;
};

/// Minimum of f over the uniform frequency grid (2 pi k / resolution),
/// k in {1..resolution}^2. Requires resolution >= 64.
PositivityReport positivity_check(const SpectralModel& model, int resolution);

} // namespace spex

#endif
