#ifndef SPEX_WHITTLE_HPP
#define SPEX_WHITTLE_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "spex/extremal_spectral.hpp"
#include "spex/spectral_model.hpp"

namespace spex {

/// Parametric family with one fitted coordinate (H for Brown-Resnick with
/// the scale held fixed, phi for the diamond MMA).
struct FitFamily {
    ModelFamily family = ModelFamily::brown_resnick;
    double br_scale = 2.0;
    int mma_k0 = 5;
    SpectralModel::Options options{};

    SpectralModel model(double theta) const {
        if (family == ModelFamily::brown_resnick) {
            return SpectralModel::brown_resnick(theta, br_scale, options);
        }
        return SpectralModel::mma_diamond(theta, mma_k0, options);
    }
};

/// Discrete Whittle likelihood
///   sigma_n^2(theta) = (sbar^2 / n^2) sum_j f_hat(lambda_j) / f_theta(lambda_j)
/// with the geometric-mean normalizer
///   sbar^2 = exp(n^-2 sum_j log f_theta(lambda_j)).
/// Throws if f_theta is not strictly positive at every Fourier frequency.
double whittle_objective(const Periodogram& periodogram, const FitFamily& family, double theta);

struct MinimizeResult {
    double argmin = 0.0;
    double value = 0.0;
    int evaluations = 0;
};

/// Brent-style bounded scalar minimization (golden section with parabolic
/// interpolation). For a unimodal objective the argmin is located to
/// within tol. Non-finite objective values are reported with the
/// offending point.
template <typename F>
MinimizeResult minimize_bounded(F&& objective, double lo, double hi, double tol = 1e-4) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_bounded: need lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("minimize_bounded: tol must be positive");

    MinimizeResult result;
    auto eval = [&](double x) {
        const double fx = objective(x);
        ++result.evaluations;
        if (!std::isfinite(fx)) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "minimize_bounded: non-finite objective at theta=" << x;
            throw std::runtime_error(msg.str());
        }
        return fx;
    };

    constexpr double kGolden = 0.3819660112501051; // (3 - sqrt(5)) / 2
    double a = lo, b = hi;
    double x = a + kGolden * (b - a);
    double w = x, v = x;
    double fx = eval(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        const double tol1 = tol * 0.5 + 1e-12 * std::abs(x);
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - mid) <= tol2 - 0.5 * (b - a)) break;

        bool use_golden = true;
        if (std::abs(e) > tol1) {
            // parabolic fit through (v,fv), (w,fw), (x,fx)
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (mid > x) ? tol1 : -tol1;
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < mid) ? b - x : a - x;
            d = kGolden * e;
        }
        const double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        const double fu = eval(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    result.argmin = x;
    result.value = fx;
    return result;
}

struct WhittleFit {
    double theta_hat = 0.0;
    double objective = 0.0;
    int evaluations = 0;
    bool converged = false;
    double lo = 0.0;
    double hi = 0.0;
    std::string flag; // "boundary solution" when the optimizer hit a bound
};

/// Threshold at the empirical (1-1/m)-quantile, form the extremal
/// periodogram, and minimize the Whittle likelihood over [lo, hi].
/// Solutions within tol of a bound (or beaten by a bound value) are
/// flagged and reported as not converged.
WhittleFit whittle_estimate(const LatticeField& field, int m, const FitFamily& family,
                            double lo, double hi, double tol = 1e-4);

struct JointWhittleFit {
    double hurst = 0.0;
    double scale = 0.0;
    double objective = 0.0;
    int evaluations = 0;
    int sweeps = 0;
    bool converged = false;
};

/// Joint (H, c) Whittle fit for the Brown-Resnick family by coordinate
/// descent: each sweep minimizes over one coordinate with the scalar
/// routine while the other is held fixed. Exposed for completeness; the
/// study designs fit H only with c fixed.
JointWhittleFit whittle_estimate_joint(const LatticeField& field, int m,
                                       double hurst_lo, double hurst_hi,
                                       double scale_lo, double scale_hi,
                                       int max_sweeps = 8, double tol = 1e-4);

/// Bivariate max-stable (Huesler-Reiss) distribution function with unit
/// Frechet margins and dependence a = 2 sqrt(delta_h):
///   P(X <= x, Y <= y) = exp(-Phi(a/2 + log(y/x)/a)/x - Phi(a/2 + log(x/y)/a)/y).
/// Reduces to exp(-2 Phi(sqrt(delta)) / x) at x = y, to full dependence as
/// delta -> 0 and to independence as delta -> infinity.
double hr_bivariate_cdf(double x, double y, double delta_h);

/// The mixed second partial of hr_bivariate_cdf (closed form).
double hr_bivariate_density(double x, double y, double delta_h);

struct PairwiseFit {
    double theta_hat = 0.0;
    double loglik = 0.0;
    double d_max = 0.0;
    int evaluations = 0;
    bool converged = false;
    double lo = 0.0;
    double hi = 0.0;
    std::string flag;
};

/// Pairwise composite likelihood for the Brown-Resnick family: maximizes
/// the sum of log hr_bivariate_density over all site pairs within
/// Euclidean distance d_max.
PairwiseFit pairwise_estimate(const LatticeField& field, const FitFamily& family,
                              double lo, double hi, double d_max = 2.0, double tol = 1e-4);

} // namespace spex

#endif
