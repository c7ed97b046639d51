#ifndef SPEX_EXTREMAL_SPECTRAL_HPP
#define SPEX_EXTREMAL_SPECTRAL_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spex/lattice_field.hpp"

namespace spex {

/// Exceedance threshold a_m tied to an intermediate level m.
struct ThresholdSpec {
    enum class Rule { empirical_quantile, explicit_value };

    int m = 0;
    double a_m = 0.0;
    Rule rule = Rule::empirical_quantile;
};

/// a_m = empirical (1 - 1/m)-quantile of |field values|. m >= 2.
ThresholdSpec choose_threshold(const LatticeField& field, int m);

/// Exceedance indicators of a field, raw and centered by the sample
/// exceedance fraction p_hat (so the centered grid sums to zero and its
/// DC Fourier coefficient vanishes).
struct IndicatorGrid {
    int n = 0;
    double p_hat = 0.0;
    std::vector<std::uint8_t> raw;  // 1(|X_s| > a_m), row-major
    std::vector<double> centered;   // raw - p_hat

    double centered_at(int i, int j) const {
        return centered[static_cast<std::size_t>(i - 1) * n + (j - 1)];
    }
};

IndicatorGrid indicators(const LatticeField& field, const ThresholdSpec& threshold);

/// Empirical spatial extremogram over all lags |h|_inf <= h_max:
///   plain:    (m/n^2) sum_{s, s+h in grid} 1(both exceed)
///   centered: (m/n^2) sum_{s, s+h in grid} Ihat_s Ihat_{s+h}
/// Symmetric in h by construction (each lag pair set mirrors its negative).
struct ExtremogramEstimate {
    ThresholdSpec threshold;
    int n = 0;
    int h_max = 0;
    std::vector<double> plain;    // (2 h_max + 1)^2, lag-major
    std::vector<double> centered;

    std::size_t index(int h1, int h2) const {
        return static_cast<std::size_t>(h1 + h_max) * (2 * h_max + 1) + (h2 + h_max);
    }
    double plain_at(int h1, int h2) const { return plain[index(h1, h2)]; }
    double centered_at(int h1, int h2) const { return centered[index(h1, h2)]; }
};

ExtremogramEstimate empirical_extremogram(const LatticeField& field,
                                          const ThresholdSpec& threshold,
                                          int h_max);

/// Extremal periodogram at the Fourier frequencies lambda_j = 2 pi j / n,
/// j in {1..n}^2: f_hat(lambda_j) = (m/n^2) |sum_t Ihat_t e^{i lambda_j . t}|^2.
struct Periodogram {
    int n = 0;
    int m = 0;
    std::vector<double> values; // index (j1-1)*n + (j2-1), j in {1..n}^2

    double at(int j1, int j2) const {
        return values[static_cast<std::size_t>(j1 - 1) * n + (j2 - 1)];
    }
};

Periodogram extremal_periodogram(const IndicatorGrid& grid, int m);

/// The n^2 Fourier frequencies (2 pi j1 / n, 2 pi j2 / n), j in {1..n}^2,
/// in row-major j order.
std::vector<std::array<double, 2>> fourier_frequencies(int n);

/// Literal double-sum periodogram at an arbitrary frequency; the test
/// oracle for the FFT path.
double periodogram_direct(const IndicatorGrid& grid, int m, double w1, double w2);

void write_extremogram_csv(const ExtremogramEstimate& est, const std::string& path,
                           bool centered = false);
void write_periodogram_csv(const Periodogram& pg, const std::string& path);

} // namespace spex

#endif
