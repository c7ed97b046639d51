#include "spex/whittle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spex/stats.hpp"

namespace spex {

double whittle_objective(const Periodogram& periodogram, const FitFamily& family, double theta) {
    const int n = periodogram.n;
    const SpectralModel model = family.model(theta);
    const auto density = model.density_grid(n);

    double log_sum = 0.0;
    double ratio_sum = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        if (!(density[i] > 0.0)) {
            throw std::runtime_error("whittle_objective: spectral density not positive");
        }
        log_sum += std::log(density[i]);
        ratio_sum += periodogram.values[i] / density[i];
    }
    const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
    return std::exp(log_sum * inv_n2) * ratio_sum * inv_n2;
}

WhittleFit whittle_estimate(const LatticeField& field, int m, const FitFamily& family,
                            double lo, double hi, double tol) {
    const ThresholdSpec threshold = choose_threshold(field, m);
    const IndicatorGrid grid = indicators(field, threshold);
    const Periodogram pg = extremal_periodogram(grid, m);

    auto objective = [&](double theta) { return whittle_objective(pg, family, theta); };
    MinimizeResult res = minimize_bounded(objective, lo, hi, tol);

    WhittleFit fit;
    fit.lo = lo;
    fit.hi = hi;
    fit.theta_hat = res.argmin;
    fit.objective = res.value;
    fit.converged = true;

    // The interior minimizer must also beat the bounds; otherwise report
    // the bound and flag it (the asymptotic theory assumes an interior
    // optimum).
    const double at_lo = objective(lo);
    const double at_hi = objective(hi);
    fit.evaluations = res.evaluations + 2;
    if (at_lo < fit.objective) {
        fit.theta_hat = lo;
        fit.objective = at_lo;
    }
    if (at_hi < fit.objective) {
        fit.theta_hat = hi;
        fit.objective = at_hi;
    }
    if (fit.theta_hat - lo <= tol || hi - fit.theta_hat <= tol) {
        fit.converged = false;
        fit.flag = "boundary solution";
    }
    return fit;
}

JointWhittleFit whittle_estimate_joint(const LatticeField& field, int m,
                                       double hurst_lo, double hurst_hi,
                                       double scale_lo, double scale_hi,
                                       int max_sweeps, double tol) {
    const ThresholdSpec threshold = choose_threshold(field, m);
    const Periodogram pg = extremal_periodogram(indicators(field, threshold), m);

    JointWhittleFit fit;
    fit.hurst = 0.5 * (hurst_lo + hurst_hi);
    fit.scale = 0.5 * (scale_lo + scale_hi);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        FitFamily fam;
        fam.family = ModelFamily::brown_resnick;

        fam.br_scale = fit.scale;
        const auto h_step = minimize_bounded(
            [&](double hurst) { return whittle_objective(pg, fam, hurst); },
            hurst_lo, hurst_hi, tol);
        const double h_move = std::abs(h_step.argmin - fit.hurst);
        fit.hurst = h_step.argmin;

        const auto c_step = minimize_bounded(
            [&](double scale) {
                FitFamily scaled = fam;
                scaled.br_scale = scale;
                return whittle_objective(pg, scaled, fit.hurst);
            },
            scale_lo, scale_hi, tol);
        const double c_move = std::abs(c_step.argmin - fit.scale);
        fit.scale = c_step.argmin;
        fit.objective = c_step.value;
        fit.evaluations += h_step.evaluations + c_step.evaluations;
        fit.sweeps = sweep + 1;
        if (h_move < tol && c_move < tol) break;
    }
    const bool interior = fit.hurst - hurst_lo > tol && hurst_hi - fit.hurst > tol &&
                          fit.scale - scale_lo > tol && scale_hi - fit.scale > tol;
    fit.converged = interior && fit.sweeps < max_sweeps;
    return fit;
}

double hr_bivariate_cdf(double x, double y, double delta_h) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw std::invalid_argument("hr_bivariate_cdf: x, y must be positive");
    }
    if (delta_h < 0.0) throw std::invalid_argument("hr_bivariate_cdf: delta must be >= 0");
    if (delta_h == 0.0) {
        return std::exp(-1.0 / std::min(x, y)); // complete dependence limit
    }
    const double a = 2.0 * std::sqrt(delta_h);
    const double log_ratio = std::log(y / x);
    const double q1 = 0.5 * a + log_ratio / a;
    const double q2 = 0.5 * a - log_ratio / a;
    return std::exp(-normal_cdf(q1) / x - normal_cdf(q2) / y);
}

double hr_bivariate_density(double x, double y, double delta_h) {
    if (!(x > 0.0) || !(y > 0.0)) {
        throw std::invalid_argument("hr_bivariate_density: x, y must be positive");
    }
    if (!(delta_h > 0.0)) {
        throw std::invalid_argument("hr_bivariate_density: delta must be positive");
    }
    const double a = 2.0 * std::sqrt(delta_h);
    const double log_ratio = std::log(y / x);
    const double q1 = 0.5 * a + log_ratio / a;
    const double q2 = 0.5 * a - log_ratio / a;

    const auto pdf = [](double q) { return std::exp(-0.5 * q * q) / std::sqrt(2.0 * M_PI); };
    const double P1 = normal_cdf(q1), P2 = normal_cdf(q2);
    const double p1 = pdf(q1), p2 = pdf(q2);

    const double V = P1 / x + P2 / y;
    const double Vx = -P1 / (x * x) - p1 / (a * x * x) + p2 / (a * x * y);
    const double Vy = -P2 / (y * y) - p2 / (a * y * y) + p1 / (a * x * y);
    const double Vxy = -p1 / (a * x * x * y) + q1 * p1 / (a * a * x * x * y)
                     + q2 * p2 / (a * a * x * y * y) - p2 / (a * x * y * y);
    return std::exp(-V) * (Vx * Vy - Vxy);
}

PairwiseFit pairwise_estimate(const LatticeField& field, const FitFamily& family,
                              double lo, double hi, double d_max, double tol) {
    if (family.family != ModelFamily::brown_resnick) {
        throw std::invalid_argument("pairwise_estimate: supports the Brown-Resnick family only");
    }
    if (d_max < 1.0) throw std::invalid_argument("pairwise_estimate: d_max must be >= 1");

    // Canonical half-plane of lags within Euclidean distance d_max, so
    // each unordered pair contributes once.
    std::vector<LatticePoint> lags;
    const int reach = static_cast<int>(std::floor(d_max));
    for (int h1 = 0; h1 <= reach; ++h1) {
        for (int h2 = -reach; h2 <= reach; ++h2) {
            if (h1 == 0 && h2 <= 0) continue;
            if (norm2({h1, h2}) <= d_max) lags.push_back({h1, h2});
        }
    }

    const int n = field.n;
    auto neg_loglik = [&](double theta) {
        double total = 0.0;
        for (const auto& h : lags) {
            const double delta =
                0.5 * family.br_scale * std::pow(static_cast<double>(h.x) * h.x +
                                                 static_cast<double>(h.y) * h.y, theta);
            const int i_lo = std::max(1, 1 - h.x), i_hi = std::min(n, n - h.x);
            const int j_lo = std::max(1, 1 - h.y), j_hi = std::min(n, n - h.y);
            for (int i = i_lo; i <= i_hi; ++i) {
                for (int j = j_lo; j <= j_hi; ++j) {
                    const double g =
                        hr_bivariate_density(field.at(i, j), field.at(i + h.x, j + h.y), delta);
                    total += std::log(std::max(g, 1e-300));
                }
            }
        }
        return -total;
    };

    MinimizeResult res = minimize_bounded(neg_loglik, lo, hi, tol);
    PairwiseFit fit;
    fit.lo = lo;
    fit.hi = hi;
    fit.d_max = d_max;
    fit.theta_hat = res.argmin;
    fit.loglik = -res.value;
    fit.evaluations = res.evaluations;
    fit.converged = true;
    if (fit.theta_hat - lo <= tol || hi - fit.theta_hat <= tol) {
        fit.converged = false;
        fit.flag = "boundary solution";
    }
    return fit;
}

} // namespace spex
