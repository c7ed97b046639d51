#include "spex/gaussian_field.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace spex {

void VariogramSpec::validate() const {
    if (!(hurst > 0.0 && hurst <= 1.0)) {
        throw std::invalid_argument("VariogramSpec: H must be in (0,1]");
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("VariogramSpec: scale c must be positive");
    }
}

double VariogramSpec::delta(LatticePoint s) const {
    if (mode == Mode::brownian_sheet) {
        return 0.5 * std::abs(static_cast<double>(s.x) * s.y);
    }
    if (s.x == 0 && s.y == 0) return 0.0;
    const double r2 = static_cast<double>(s.x) * s.x + static_cast<double>(s.y) * s.y;
    return 0.5 * scale * std::pow(r2, hurst);
}

double VariogramSpec::covariance(LatticePoint s, LatticePoint t) const {
    if (mode == Mode::brownian_sheet) {
        if (s.x < 0 || s.y < 0 || t.x < 0 || t.y < 0) {
            throw std::invalid_argument(
                "VariogramSpec: brownian-sheet mode requires nonnegative coordinates");
        }
        return static_cast<double>(std::min(s.x, t.x)) * std::min(s.y, t.y);
    }
    return delta(s) + delta(t) - delta(s - t);
}

double VariogramSpec::increment_half_variance(LatticePoint s, LatticePoint t) const {
    if (mode == Mode::isotropic_fbm) return delta(s - t);
    return delta(s) + delta(t) - covariance(s, t);
}

GaussianSampler GaussianSampler::build(std::vector<LatticePoint> sites,
                                       const VariogramSpec& spec,
                                       double jitter) {
    spec.validate();
    if (sites.empty()) {
        throw std::invalid_argument("GaussianSampler: empty site list");
    }
    if (sites.size() > 4500) {
        throw std::invalid_argument("GaussianSampler: site count exceeds dense Cholesky budget");
    }
    {
        std::unordered_set<LatticePoint, LatticePointHash> seen(sites.begin(), sites.end());
        if (seen.size() != sites.size()) {
            throw std::invalid_argument("GaussianSampler: sites must be distinct");
        }
    }

    GaussianSampler sampler;
    sampler.sites_ = std::move(sites);
    sampler.spec_ = spec;

    // Zero-variance sites carry W = 0 almost surely; keep them out of the
    // factorization.
    const double tiny = 1e-14;
    sampler.active_index_.assign(sampler.sites_.size(), -1);
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < sampler.sites_.size(); ++i) {
        if (2.0 * spec.delta(sampler.sites_[i]) > tiny) {
            sampler.active_index_[i] = static_cast<int>(active.size());
            active.push_back(i);
        }
    }

    const auto k = static_cast<Eigen::Index>(active.size());
    if (k == 0) {
        sampler.factor_.resize(0, 0);
        return sampler;
    }

    Eigen::MatrixXd cov(k, k);
    double max_diag = 0.0;
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
            const double v = spec.covariance(sampler.sites_[active[a]], sampler.sites_[active[b]]);
            cov(a, b) = v;
            cov(b, a) = v;
        }
        max_diag = std::max(max_diag, cov(a, a));
    }

    // Fractional-Brownian covariances are PSD in exact arithmetic but can
    // be borderline in floating point; escalate jitter by doubling.
    double eps = jitter > 0.0 ? jitter : 1e-12 * max_diag;
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (;;) {
        Eigen::MatrixXd shifted = cov;
        shifted.diagonal().array() += eps;
        llt.compute(shifted);
        if (llt.info() == Eigen::Success) {
            sampler.factor_ = llt.matrixL();
            sampler.jitter_used_ = eps;
            return sampler;
        }
        if (eps > 1e-6 * std::max(max_diag, 1.0)) {
            throw std::runtime_error("GaussianSampler: covariance not PSD");
        }
        eps *= 2.0;
    }
}

void GaussianSampler::sample(RandomStream& stream, std::span<double> out) const {
    if (out.size() != sites_.size()) {
        throw std::invalid_argument("GaussianSampler::sample: output size mismatch");
    }
    const auto k = factor_.rows();
    Eigen::VectorXd z(k);
    for (Eigen::Index i = 0; i < k; ++i) z[i] = stream.normal();
    Eigen::VectorXd w = factor_.triangularView<Eigen::Lower>() * z;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const int a = active_index_[i];
        out[i] = a < 0 ? 0.0 : w[a];
    }
}

std::vector<double> GaussianSampler::sample(RandomStream& stream) const {
    std::vector<double> out(sites_.size());
    sample(stream, out);
    return out;
}

double GaussianSampler::factor_residual() const {
    const auto k = factor_.rows();
    if (k == 0) return 0.0;
    Eigen::MatrixXd rebuilt = factor_ * factor_.transpose();
    double worst = 0.0;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        if (active_index_[i] >= 0) active.push_back(i);
    }
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b < k; ++b) {
            double c = spec_.covariance(sites_[active[a]], sites_[active[b]]);
            if (a == b) c += jitter_used_;
            worst = std::max(worst, std::abs(rebuilt(a, b) - c));
        }
    }
    return worst;
}

double GaussianSampler::covariance(std::size_t i, std::size_t j) const {
    return spec_.covariance(sites_[i], sites_[j]);
}

GaussianSampler grid_sampler(int n, const VariogramSpec& spec) {
    std::vector<LatticePoint> sites;
    sites.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            sites.push_back({i, j});
        }
    }
    return GaussianSampler::build(std::move(sites), spec);
}

} // namespace spex
