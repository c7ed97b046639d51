// Acceptance suite, slow part: the exact-simulator n=50 study (Whittle
// m=10 over >= 30 replications) and the pairwise-baseline comparison on
// the same fields.

#include <cmath>
#include <cstdio>

#include "spex/experiment.hpp"

#include "acceptance_util.hpp"

using namespace spex;

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

} // namespace

int main() {
    acceptance::Runner runner;

    ExperimentConfig config;
    config.model = "br-exact";
    config.hurst = 0.5;
    config.c = 2.0;
    config.variogram = "isotropic";
    config.n = 50;
    config.replications = 30;
    config.m_values = {10};
    config.estimators = {"whittle", "pairwise"};
    config.family = "br";
    config.lo = 0.01;
    config.hi = 0.99;
    config.dmax = 2.0;
    config.seed = 4001;
    config.workers = 2;
    const auto summary = run_experiment(config);

    const SummaryRow* whittle = nullptr;
    const SummaryRow* pairwise = nullptr;
    for (const auto& row : summary.rows) {
        if (row.estimator == "whittle") whittle = &row;
        if (row.estimator == "pairwise") pairwise = &row;
    }

    runner.report("criterion 2a (exact BR study n=50, Whittle m=10 mean)",
                  whittle->failures == 0 && whittle->stats.mean >= 0.42 &&
                      whittle->stats.mean <= 0.68,
                  fmt("mean=%.4f (band 0.42..0.68) over %.0f replications",
                      whittle->stats.mean, static_cast<double>(whittle->count)));
    runner.report("criterion 2b (exact BR study n=50, Whittle m=10 median)",
                  std::abs(whittle->stats.median - 0.5) <= 0.15,
                  fmt("median=%.4f (within 0.15 of 0.5)", whittle->stats.median));

    const double whittle_median_bias = std::abs(whittle->stats.median - 0.5);
    const double pairwise_mean_bias = std::abs(pairwise->stats.mean - 0.5);
    runner.report("criterion 3a (pairwise std below Whittle std)",
                  pairwise->failures == 0 && pairwise->stats.stddev < whittle->stats.stddev,
                  fmt("pairwise std=%.4f vs Whittle std=%.4f",
                      pairwise->stats.stddev, whittle->stats.stddev));
    runner.report("criterion 3b (pairwise more biased than Whittle median)",
                  pairwise_mean_bias > whittle_median_bias,
                  fmt("|pairwise mean - 0.5|=%.4f vs |Whittle median - 0.5|=%.4f",
                      pairwise_mean_bias, whittle_median_bias));

    return runner.exit_code();
}
