#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spex/gaussian_field.hpp"

#include "oracles.hpp"

using namespace spex;

TEST_CASE("variogram delta") {
    VariogramSpec spec;
    CHECK(spec.delta({0, 0}) == 0.0);

    spec.scale = 2.0;
    spec.hurst = 0.5;
    CHECK(spec.delta({1, 0}) == doctest::Approx(1.0).epsilon(1e-15));

    spec.scale = 1.0;
    spec.hurst = 0.8;
    const double direct = spec.delta({3, 4});
    const double via_logs = 0.5 * std::exp(1.6 * std::log(5.0));
    CHECK(direct == doctest::Approx(6.566319511009419).epsilon(1e-13));
    CHECK(direct == doctest::Approx(via_logs).epsilon(1e-13));
}

TEST_CASE("sheet-mode variance and covariance") {
    VariogramSpec spec;
    spec.mode = VariogramSpec::Mode::brownian_sheet;
    CHECK(spec.delta({2, 3}) == 3.0);
    CHECK(spec.covariance({2, 3}, {2, 3}) == 6.0); // var = 2 delta
    CHECK(spec.covariance({1, 4}, {2, 3}) == 3.0); // min products
    CHECK_THROWS(spec.covariance({-1, 2}, {1, 1}));
}

TEST_CASE("degenerate origin-only sampler returns zero") {
    VariogramSpec spec;
    auto sampler = GaussianSampler::build({{0, 0}}, spec);
    RandomStream stream(1);
    const auto draw = sampler.sample(stream);
    CHECK(draw == std::vector<double>{0.0});
}

TEST_CASE("two-site sampler has the pinned origin and the right variance") {
    VariogramSpec spec; // c=2, H=0.5: var(W_{(1,0)}) = 2
    auto sampler = GaussianSampler::build({{0, 0}, {1, 0}}, spec);
    RandomStream stream(2);
    std::vector<double> sq;
    for (int i = 0; i < 20000; ++i) {
        const auto draw = sampler.sample(stream);
        CHECK(draw[0] == 0.0);
        sq.push_back(draw[1] * draw[1]);
    }
    // var of W^2 for N(0,2) is 2 * 2^2 = 8
    const double se = std::sqrt(8.0 / 20000.0);
    CHECK(std::abs(oracle::mean(sq) - 2.0) < 3.0 * se);
}

TEST_CASE("3x3 grid draws reproduce the analytic covariance") {
    VariogramSpec spec;
    spec.scale = 1.0;
    spec.hurst = 0.7;
    std::vector<LatticePoint> sites;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) sites.push_back({i, j});
    auto sampler = GaussianSampler::build(sites, spec);
    CHECK(sampler.factor_residual() < 1e-8);

    const int reps = 10000;
    RandomStream stream(3);
    std::vector<std::vector<double>> draws(sites.size(), std::vector<double>(reps));
    std::vector<double> buffer(sites.size());
    for (int r = 0; r < reps; ++r) {
        sampler.sample(stream, buffer);
        for (std::size_t i = 0; i < sites.size(); ++i) draws[i][r] = buffer[i];
    }
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i; j < sites.size(); ++j) {
            const double truth = sampler.covariance(i, j);
            const double est = oracle::sample_covariance(draws[i], draws[j]);
            const double cii = sampler.covariance(i, i);
            const double cjj = sampler.covariance(j, j);
            const double se = std::sqrt((cii * cjj + truth * truth) / reps);
            CHECK(std::abs(est - truth) < 3.5 * se);
        }
    }
}

TEST_CASE("stationary increments: mean squared increment matches the variogram") {
    VariogramSpec spec; // c=2, H=0.5
    std::vector<LatticePoint> sites = {{1, 1}, {3, 2}, {5, 5}};
    auto sampler = GaussianSampler::build(sites, spec);
    const int reps = 20000;
    RandomStream stream(4);
    std::vector<double> buffer(sites.size());
    std::vector<double> half_sq01(reps), half_sq12(reps);
    for (int r = 0; r < reps; ++r) {
        sampler.sample(stream, buffer);
        half_sq01[r] = 0.5 * (buffer[0] - buffer[1]) * (buffer[0] - buffer[1]);
        half_sq12[r] = 0.5 * (buffer[1] - buffer[2]) * (buffer[1] - buffer[2]);
    }
    // E[(W_s - W_t)^2]/2 = delta(s - t); the squared increment of a
    // Gaussian has variance 2 var^2, so SE = sqrt(2) var / sqrt(reps).
    const double d01 = spec.delta(sites[0] - sites[1]);
    CHECK(std::abs(oracle::mean(half_sq01) - d01) < 3.0 * std::sqrt(2.0) * d01 / std::sqrt(reps));
    const double d12 = spec.delta(sites[1] - sites[2]);
    CHECK(std::abs(oracle::mean(half_sq12) - d12) < 3.0 * std::sqrt(2.0) * d12 / std::sqrt(reps));
}

TEST_CASE("site order does not change the joint law") {
    VariogramSpec spec;
    spec.hurst = 0.6;
    std::vector<LatticePoint> sites = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
    std::vector<LatticePoint> shuffled = {{2, 2}, {1, 1}, {1, 2}, {2, 1}};
    auto a = GaussianSampler::build(sites, spec);
    auto b = GaussianSampler::build(shuffled, spec);

    const int reps = 20000;
    RandomStream sa(5), sb(6);
    std::vector<double> abuf(4), bbuf(4);
    // accumulate covariance between the first two *logical* sites in each
    std::vector<double> a0(reps), a1(reps), b0(reps), b1(reps);
    for (int r = 0; r < reps; ++r) {
        a.sample(sa, abuf);
        b.sample(sb, bbuf);
        a0[r] = abuf[0]; // site (1,1)
        a1[r] = abuf[1]; // site (2,1)
        b0[r] = bbuf[1]; // site (1,1)
        b1[r] = bbuf[3]; // site (2,1)
    }
    const double cov_a = oracle::sample_covariance(a0, a1);
    const double cov_b = oracle::sample_covariance(b0, b1);
    const double truth = spec.covariance({1, 1}, {2, 1});
    const double var0 = spec.covariance({1, 1}, {1, 1});
    const double var1 = spec.covariance({2, 1}, {2, 1});
    const double se = std::sqrt((var0 * var1 + truth * truth) / reps);
    CHECK(std::abs(cov_a - truth) < 3.5 * se);
    CHECK(std::abs(cov_b - truth) < 3.5 * se);
}

TEST_CASE("jitter ladder rescues a rank-deficient covariance") {
    VariogramSpec spec;
    spec.hurst = 1.0; // W_s is a.s. linear in s: covariance is singular
    std::vector<LatticePoint> sites = {{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    auto sampler = GaussianSampler::build(sites, spec);
    RandomStream stream(7);
    const auto draw = sampler.sample(stream);
    CHECK(std::isfinite(draw[3]));
    CHECK(sampler.factor_residual() < 1e-6);
}

TEST_CASE("duplicate sites are rejected") {
    VariogramSpec spec;
    CHECK_THROWS_AS(GaussianSampler::build({{1, 1}, {1, 1}}, spec), std::invalid_argument);
}
