#include "spex/spectral_model.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spex/fft.hpp"
#include "spex/stats.hpp"

namespace spex {

double br_extremogram(int h1, int h2, double hurst, double scale) {
    if (h1 == 0 && h2 == 0) return 1.0;
    const double r2 = static_cast<double>(h1) * h1 + static_cast<double>(h2) * h2;
    return 2.0 * normal_tail(std::sqrt(0.5 * scale * std::pow(r2, hurst)));
}

double mma_extremogram(int h1, int h2, const WeightKernel& kernel) {
    double overlap = 0.0;
    for (const auto& [s, w] : kernel.weights) {
        overlap += std::min(w, kernel.weight_at({s.x + h1, s.y + h2}));
    }
    return overlap / kernel.total;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper bound on sum_{|h|_inf > R} gamma_H(h): the ring |h|_inf = r has
// 8r points, each at Euclidean distance >= r. Returns early (with a value
// above tol) as soon as the bound is known to fail.
double br_tail_bound(double hurst, double scale, int radius, double tol) {
    double total = 0.0;
    double prev = kInf;
    for (long r = radius + 1;; ++r) {
        const double ring =
            8.0 * static_cast<double>(r) *
            2.0 * normal_tail(std::sqrt(0.5 * scale * std::pow(static_cast<double>(r) * r, hurst)));
        total += ring;
        if (total > tol) return total; // bound already violated
        if (ring < 1e-6 * tol && ring < prev) return total;
        prev = ring;
        if (r > radius + 2'000'000) return kInf; // not converging in budget
    }
}

int br_auto_radius(double hurst, double scale, double tol, int cap, double* bound_out) {
    int lo = 0, hi = 0;
    double bound_hi = kInf;
    for (int r = 4; r <= cap; r *= 2) {
        const double b = br_tail_bound(hurst, scale, r, tol);
        if (b <= tol) {
            hi = r;
            bound_hi = b;
            break;
        }
        lo = r;
    }
    if (hi == 0) {
        // Not certifiable within the cap; take the cap and record the
        // (violated) bound honestly.
        *bound_out = br_tail_bound(hurst, scale, cap, tol);
        return cap;
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        const double b = br_tail_bound(hurst, scale, mid, tol);
        if (b <= tol) {
            hi = mid;
            bound_hi = b;
        } else {
            lo = mid;
        }
    }
    *bound_out = bound_hi;
    return hi;
}

} // namespace

SpectralModel SpectralModel::brown_resnick(double hurst, double scale, Options opt) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw std::invalid_argument("SpectralModel: Brown-Resnick H must be in (0,1)");
    }
    if (!(scale > 0.0)) throw std::invalid_argument("SpectralModel: scale must be positive");
    SpectralModel model;
    model.family_ = ModelFamily::brown_resnick;
    model.theta_ = hurst;
    model.br_scale_ = scale;
    model.tail_tol_ = opt.tail_tol;
    if (opt.radius_override > 0) {
        model.radius_ = opt.radius_override;
        model.tail_bound_ = br_tail_bound(hurst, scale, model.radius_, opt.tail_tol);
        if (model.tail_bound_ > opt.tail_tol) {
            throw std::runtime_error("SpectralModel: truncation radius too small");
        }
    } else {
        model.radius_ = br_auto_radius(hurst, scale, opt.tail_tol, opt.radius_cap,
                                       &model.tail_bound_);
    }
    return model;
}

SpectralModel SpectralModel::mma_diamond(double phi, int k0, Options opt) {
    SpectralModel model;
    model.family_ = ModelFamily::mma_diamond;
    model.theta_ = phi;
    model.mma_k0_ = k0;
    model.kernel_ = mma_weight_diamond(phi, k0);
    model.tail_tol_ = opt.tail_tol;
    // Supports at lag |h|_1 > 2 k0 are disjoint, so gamma vanishes there.
    model.radius_ = opt.radius_override > 0 ? opt.radius_override : 2 * k0;
    model.tail_bound_ = 0.0;
    if (model.radius_ < 2 * k0) {
        throw std::runtime_error("SpectralModel: truncation radius too small");
    }
    return model;
}

double SpectralModel::extremogram(int h1, int h2) const {
    if (family_ == ModelFamily::brown_resnick) {
        return br_extremogram(h1, h2, theta_, br_scale_);
    }
    return mma_extremogram(h1, h2, kernel_);
}

double SpectralModel::lag_window(int h1, int h2) const {
    if (certified()) return 1.0;
    const double span = radius_ + 1.0;
    return (1.0 - std::abs(h1) / span) * (1.0 - std::abs(h2) / span);
}

double SpectralModel::spectral_density(double w1, double w2) const {
    double sum = 0.0;
    if (family_ == ModelFamily::brown_resnick) {
        // gamma depends on h through |h|^2; memoize the radial values.
        const long r = radius_;
        std::vector<double> radial(static_cast<std::size_t>(2 * r * r + 1),
                                   std::numeric_limits<double>::quiet_NaN());
        for (int h1 = -radius_; h1 <= radius_; ++h1) {
            for (int h2 = -radius_; h2 <= radius_; ++h2) {
                const auto s = static_cast<std::size_t>(
                    static_cast<long>(h1) * h1 + static_cast<long>(h2) * h2);
                if (std::isnan(radial[s])) {
                    radial[s] = br_extremogram(h1, h2, theta_, br_scale_);
                }
                sum += lag_window(h1, h2) * radial[s] * std::cos(w1 * h1 + w2 * h2);
            }
        }
        return sum;
    }
    for (int h1 = -radius_; h1 <= radius_; ++h1) {
        for (int h2 = -radius_; h2 <= radius_; ++h2) {
            sum += lag_window(h1, h2) * mma_extremogram(h1, h2, kernel_) *
                   std::cos(w1 * h1 + w2 * h2);
        }
    }
    return sum;
}

std::vector<double> SpectralModel::density_grid(int n) const {
    if (n < 1) throw std::invalid_argument("density_grid: n must be >= 1");
    // Wrap the extremogram onto the torus: exp(i lambda_j . h) only
    // depends on h mod n at Fourier frequencies, so this is exact.
    std::vector<double> wrap(static_cast<std::size_t>(n) * n, 0.0);
    const long r = radius_;
    std::vector<double> radial;
    if (family_ == ModelFamily::brown_resnick) {
        radial.assign(static_cast<std::size_t>(2 * r * r + 1),
                      std::numeric_limits<double>::quiet_NaN());
    }
    for (int h1 = -radius_; h1 <= radius_; ++h1) {
        const int g1 = ((h1 % n) + n) % n;
        for (int h2 = -radius_; h2 <= radius_; ++h2) {
            const int g2 = ((h2 % n) + n) % n;
            double g;
            if (family_ == ModelFamily::brown_resnick) {
                const auto s = static_cast<std::size_t>(
                    static_cast<long>(h1) * h1 + static_cast<long>(h2) * h2);
                if (std::isnan(radial[s])) {
                    radial[s] = br_extremogram(h1, h2, theta_, br_scale_);
                }
                g = radial[s];
            } else {
                g = mma_extremogram(h1, h2, kernel_);
            }
            wrap[static_cast<std::size_t>(g1) * n + g2] += lag_window(h1, h2) * g;
        }
    }

    std::vector<std::complex<double>> in(wrap.size());
    for (std::size_t i = 0; i < wrap.size(); ++i) in[i] = wrap[i];
    const auto out = detail::dft2_plus(n, in);

    std::vector<double> grid(wrap.size());
    for (int j1 = 1; j1 <= n; ++j1) {
        for (int j2 = 1; j2 <= n; ++j2) {
            const auto bin = static_cast<std::size_t>(j1 % n) * n + (j2 % n);
            grid[static_cast<std::size_t>(j1 - 1) * n + (j2 - 1)] = out[bin].real();
        }
    }
    return grid;
}

std::string SpectralModel::to_record() const {
    std::ostringstream out;
    out.precision(17);
    if (family_ == ModelFamily::brown_resnick) {
        out << "family=brown-resnick;H=" << theta_ << ";c=" << br_scale_;
    } else {
        out << "family=mma-diamond;phi=" << theta_ << ";k0=" << mma_k0_;
    }
    out << ";R=" << radius_ << ";tail_tol=" << tail_tol_;
    return out.str();
}

SpectralModel SpectralModel::from_record(const std::string& record) {
    std::string family;
    double hurst = 0.0, scale = 0.0, phi = 0.0, tol = 1e-10;
    int k0 = -1, radius = 0;
    std::istringstream in(record);
    std::string item;
    while (std::getline(in, item, ';')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        if (key == "family") family = val;
        else if (key == "H") hurst = std::stod(val);
        else if (key == "c") scale = std::stod(val);
        else if (key == "phi") phi = std::stod(val);
        else if (key == "k0") k0 = std::stoi(val);
        else if (key == "R") radius = std::stoi(val);
        else if (key == "tail_tol") tol = std::stod(val);
        else throw std::invalid_argument("SpectralModel record: unknown key " + key);
    }
    Options opt;
    opt.tail_tol = tol;
    opt.radius_override = radius;
    if (family == "brown-resnick") {
        try {
            return brown_resnick(hurst, scale, opt);
        } catch (const std::runtime_error&) {
            // the recorded radius was a capped (uncertified) one
            opt.radius_override = 0;
            opt.radius_cap = radius;
            return brown_resnick(hurst, scale, opt);
        }
    }
    if (family == "mma-diamond") return mma_diamond(phi, k0, opt);
    throw std::invalid_argument("SpectralModel record: unknown family");
}

PositivityReport positivity_check(const SpectralModel& model, int resolution) {
    if (resolution < 64) {
        throw std::invalid_argument("positivity_check: resolution must be >= 64");
    }
    const auto grid = model.density_grid(resolution);
    PositivityReport report;
    report.min_value = kInf;
    for (int j1 = 1; j1 <= resolution; ++j1) {
        for (int j2 = 1; j2 <= resolution; ++j2) {
            const double v = grid[static_cast<std::size_t>(j1 - 1) * resolution + (j2 - 1)];
            if (v < report.min_value) {
                report.min_value = v;
                report.argmin_w1 = 2.0 * M_PI * j1 / resolution;
                report.argmin_w2 = 2.0 * M_PI * j2 / resolution;
            }
        }
    }
    return report;
}

} // namespace spex
