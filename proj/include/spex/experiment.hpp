#ifndef SPEX_EXPERIMENT_HPP
#define SPEX_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spex/whittle.hpp"

namespace spex {

/// Replication study configuration: simulate -> threshold -> periodogram
/// -> estimate -> summarize. Parsed from a flat key=value file.
struct ExperimentConfig {
    // simulator
    std::string model = "mma"; // mma | br-truncated | br-exact
    double phi = 0.5;
    int k0 = 5;
    double hurst = 0.5;
    double c = 2.0;
    std::string variogram = "isotropic"; // isotropic | sheet
    int terms = 1000;
    std::uint64_t max_field_draws = 1'000'000;

    // study shape
    int n = 20;
    int replications = 50;
    std::vector<int> m_values{3, 5};
    std::vector<std::string> estimators{"whittle"};

    // fitting
    std::string family = "br"; // br | mma
    double lo = 0.01;
    double hi = 0.99;
    double dmax = 2.0;
    double tol = 1e-4;

    std::uint64_t seed = 1;
    int workers = 1;

    void validate() const;
    static ExperimentConfig from_file(const std::string& path);
    FitFamily fit_family() const;
    VariogramSpec variogram_spec() const;
    std::string describe() const;
};

struct FitRecord {
    int replication = 0;
    std::string estimator;
    int m = 0;
    double theta_hat = 0.0;
    double objective = 0.0;
    bool converged = false;
    double seconds = 0.0;
    bool failed = false;
    std::string error;
};

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    bool stddev_defined = false; // false for a single observation
};

/// Mean, lower median, and sample (n-1) standard deviation.
SummaryStats summarize(const std::vector<double>& values);

/// Tukey boxplot: whiskers at the extreme points within 1.5 IQR of the
/// quartiles, everything beyond listed as outliers.
struct BoxplotStats {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
    std::vector<double> outliers;
};

BoxplotStats boxplot_stats(std::vector<double> values);

struct SummaryRow {
    std::string estimator;
    int m = 0;
    int count = 0;
    int failures = 0;
    SummaryStats stats;
    double avg_seconds = 0.0;
    BoxplotStats boxplot;
};

struct ReplicationSummary {
    std::vector<FitRecord> raw;
    std::vector<SummaryRow> rows;
};

/// Runs all replications (in parallel up to config.workers), each on its
/// own derived stream, so the raw estimates are bit-identical for any
/// worker count. Per-replication errors are recorded with a failure flag;
/// summaries cover the successes.
ReplicationSummary run_experiment(const ExperimentConfig& config);

void write_fit_records_csv(const std::vector<FitRecord>& records, const std::string& path);
std::vector<FitRecord> read_fit_records_csv(const std::string& path);
void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path);
void write_boxplot_csv(const std::vector<SummaryRow>& rows, const std::string& path);

} // namespace spex

#endif
