#include "spex/extremal_spectral.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "spex/fft.hpp"
#include "spex/stats.hpp"

namespace spex {

ThresholdSpec choose_threshold(const LatticeField& field, int m) {
    if (m < 2) throw std::invalid_argument("choose_threshold: degenerate threshold (m < 2)");
    std::vector<double> mags(field.values.size());
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(field.values[i]);
    ThresholdSpec spec;
    spec.m = m;
    spec.a_m = empirical_quantile(std::move(mags), 1.0 - 1.0 / m);
    spec.rule = ThresholdSpec::Rule::empirical_quantile;
    return spec;
}

IndicatorGrid indicators(const LatticeField& field, const ThresholdSpec& threshold) {
    if (!(threshold.a_m > 0.0)) {
        throw std::invalid_argument("indicators: threshold must be positive");
    }
    IndicatorGrid grid;
    grid.n = field.n;
    grid.raw.resize(field.values.size());
    grid.centered.resize(field.values.size());
    std::size_t exceed = 0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        grid.raw[i] = std::abs(field.values[i]) > threshold.a_m ? 1 : 0;
        exceed += grid.raw[i];
    }
    grid.p_hat = static_cast<double>(exceed) / static_cast<double>(field.values.size());
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        grid.centered[i] = static_cast<double>(grid.raw[i]) - grid.p_hat;
    }
    return grid;
}

ExtremogramEstimate empirical_extremogram(const LatticeField& field,
                                          const ThresholdSpec& threshold,
                                          int h_max) {
    const int n = field.n;
    if (h_max < 0 || h_max >= n) {
        throw std::invalid_argument("empirical_extremogram: require 0 <= h_max < n");
    }
    const IndicatorGrid grid = indicators(field, threshold);

    ExtremogramEstimate est;
    est.threshold = threshold;
    est.n = n;
    est.h_max = h_max;
    const int side = 2 * h_max + 1;
    est.plain.assign(static_cast<std::size_t>(side) * side, 0.0);
    est.centered.assign(static_cast<std::size_t>(side) * side, 0.0);

    const double scale = static_cast<double>(threshold.m) / (static_cast<double>(n) * n);
    for (int h1 = -h_max; h1 <= h_max; ++h1) {
        for (int h2 = -h_max; h2 <= h_max; ++h2) {
            const int i_lo = std::max(1, 1 - h1), i_hi = std::min(n, n - h1);
            const int j_lo = std::max(1, 1 - h2), j_hi = std::min(n, n - h2);
            std::int64_t joint = 0;
            double joint_centered = 0.0;
            for (int i = i_lo; i <= i_hi; ++i) {
                const std::size_t row = static_cast<std::size_t>(i - 1) * n;
                const std::size_t row_h = static_cast<std::size_t>(i + h1 - 1) * n;
                for (int j = j_lo; j <= j_hi; ++j) {
                    joint += grid.raw[row + (j - 1)] & grid.raw[row_h + (j + h2 - 1)];
                    joint_centered += grid.centered[row + (j - 1)] * grid.centered[row_h + (j + h2 - 1)];
                }
            }
            est.plain[est.index(h1, h2)] = scale * static_cast<double>(joint);
            est.centered[est.index(h1, h2)] = scale * joint_centered;
        }
    }
    return est;
}

Periodogram extremal_periodogram(const IndicatorGrid& grid, int m) {
    const int n = grid.n;
    std::vector<std::complex<double>> in(grid.centered.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = grid.centered[i];
    const auto out = detail::dft2_plus(n, in);

    Periodogram pg;
    pg.n = n;
    pg.m = m;
    pg.values.resize(out.size());
    const double scale = static_cast<double>(m) / (static_cast<double>(n) * n);
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = 1; j2 <= n; ++j2) {
            // j = n aliases to DFT bin 0 (lambda = 2 pi).
            const auto bin = static_cast<std::size_t>(j1 % n) * n + (j2 % n);
            pg.values[static_cast<std::size_t>(j1 - 1) * n + (j2 - 1)] = scale * std::norm(out[bin]);
        }
    }
    return pg;
}

std::vector<std::array<double, 2>> fourier_frequencies(int n) {
    if (n < 1) throw std::invalid_argument("fourier_frequencies: n must be >= 1");
    std::vector<std::array<double, 2>> freqs;
    freqs.reserve(static_cast<std::size_t>(n) * n);
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = 1; j2 <= n; ++j2) {
            freqs.push_back({2.0 * M_PI * j1 / n, 2.0 * M_PI * j2 / n});
        }
    }
    return freqs;
}

double periodogram_direct(const IndicatorGrid& grid, int m, double w1, double w2) {
    const int n = grid.n;
    std::complex<double> sum = 0.0;
    for (int t1 = 1; t1 <= n; ++t1) {
        for (int t2 = 1; t2 <= n; ++t2) {
            const double phase = w1 * t1 + w2 * t2;
            sum += grid.centered_at(t1, t2) * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return static_cast<double>(m) / (static_cast<double>(n) * n) * std::norm(sum);
}

void write_extremogram_csv(const ExtremogramEstimate& est, const std::string& path,
                           bool centered) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "h1,h2,gamma_hat\n";
    char buf[64];
    for (int h1 = -est.h_max; h1 <= est.h_max; ++h1) {
        for (int h2 = -est.h_max; h2 <= est.h_max; ++h2) {
            const double v = centered ? est.centered_at(h1, h2) : est.plain_at(h1, h2);
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << h1 << ',' << h2 << ',' << buf << '\n';
        }
    }
}

void write_periodogram_csv(const Periodogram& pg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "j1,j2,lambda1,lambda2,value\n";
    char buf[64];
    for (int j1 = 1; j1 <= pg.n; ++j1) {
        for (int j2 = 1; j2 <= pg.n; ++j2) {
            out << j1 << ',' << j2 << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", 2.0 * M_PI * j1 / pg.n);
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", 2.0 * M_PI * j2 / pg.n);
            out << buf << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", pg.at(j1, j2));
            out << buf << '\n';
        }
    }
}

} // namespace spex
