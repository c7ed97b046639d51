#include "spex/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spex/simulate.hpp"
#include "spex/stats.hpp"

namespace spex {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void ExperimentConfig::validate() const {
    if (model != "mma" && model != "br-truncated" && model != "br-exact") {
        throw std::invalid_argument("ExperimentConfig: unknown model " + model);
    }
    if (family != "br" && family != "mma") {
        throw std::invalid_argument("ExperimentConfig: unknown family " + family);
    }
    if (variogram != "isotropic" && variogram != "sheet") {
        throw std::invalid_argument("ExperimentConfig: variogram must be isotropic or sheet");
    }
    if (n < 4) throw std::invalid_argument("ExperimentConfig: n must be >= 4");
    if (replications < 1) throw std::invalid_argument("ExperimentConfig: replications must be >= 1");
    if (m_values.empty()) throw std::invalid_argument("ExperimentConfig: no m values");
    for (int m : m_values) {
        if (m < 2) throw std::invalid_argument("ExperimentConfig: every m must be >= 2");
    }
    if (estimators.empty()) throw std::invalid_argument("ExperimentConfig: no estimators");
    for (const auto& e : estimators) {
        if (e != "whittle" && e != "pairwise") {
            throw std::invalid_argument("ExperimentConfig: unknown estimator " + e);
        }
    }
    if (!(lo < hi)) throw std::invalid_argument("ExperimentConfig: need lo < hi");
    if (workers < 1) throw std::invalid_argument("ExperimentConfig: workers must be >= 1");
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    ExperimentConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "model") config.model = val;
        else if (key == "phi") config.phi = std::stod(val);
        else if (key == "k0") config.k0 = std::stoi(val);
        else if (key == "hurst") config.hurst = std::stod(val);
        else if (key == "c") config.c = std::stod(val);
        else if (key == "variogram") config.variogram = val;
        else if (key == "terms") config.terms = std::stoi(val);
        else if (key == "max_field_draws") config.max_field_draws = std::stoull(val);
        else if (key == "n") config.n = std::stoi(val);
        else if (key == "replications") config.replications = std::stoi(val);
        else if (key == "m") {
            config.m_values.clear();
            for (const auto& tok : split(val, ',')) config.m_values.push_back(std::stoi(tok));
        } else if (key == "estimators") {
            config.estimators = split(val, ',');
        } else if (key == "family") config.family = val;
        else if (key == "lo") config.lo = std::stod(val);
        else if (key == "hi") config.hi = std::stod(val);
        else if (key == "dmax") config.dmax = std::stod(val);
        else if (key == "tol") config.tol = std::stod(val);
        else if (key == "seed") config.seed = std::stoull(val);
        else if (key == "workers") config.workers = std::stoi(val);
        else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key " + key);
    }
    config.validate();
    return config;
}

FitFamily ExperimentConfig::fit_family() const {
    FitFamily fam;
    if (family == "br") {
        fam.family = ModelFamily::brown_resnick;
        fam.br_scale = c;
    } else {
        fam.family = ModelFamily::mma_diamond;
        fam.mma_k0 = k0;
    }
    return fam;
}

VariogramSpec ExperimentConfig::variogram_spec() const {
    VariogramSpec spec;
    spec.hurst = hurst;
    spec.scale = c;
    spec.mode = variogram == "sheet" ? VariogramSpec::Mode::brownian_sheet
                                     : VariogramSpec::Mode::isotropic_fbm;
    return spec;
}

std::string ExperimentConfig::describe() const {
    std::ostringstream out;
    out << "model=" << model;
    if (model == "mma") {
        out << ";phi=" << phi << ";k0=" << k0;
    } else {
        out << ";hurst=" << hurst << ";c=" << c << ";variogram=" << variogram;
        if (model == "br-truncated") out << ";terms=" << terms;
    }
    out << ";n=" << n << ";replications=" << replications << ";m=";
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        if (i) out << ',';
        out << m_values[i];
    }
    out << ";estimators=";
    for (std::size_t i = 0; i < estimators.size(); ++i) {
        if (i) out << ',';
        out << estimators[i];
    }
    out << ";family=" << family << ";lo=" << lo << ";hi=" << hi << ";dmax=" << dmax
        << ";seed=" << seed;
    return out.str();
}

SummaryStats summarize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize: empty input");
    SummaryStats stats;
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());
    stats.median = empirical_quantile(values, 0.5); // lower median for even counts
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
        stats.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        stats.stddev_defined = true;
    }
    return stats;
}

BoxplotStats boxplot_stats(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("boxplot_stats: empty input");
    std::sort(values.begin(), values.end());
    BoxplotStats box;
    box.q1 = empirical_quantile(values, 0.25);
    box.median = empirical_quantile(values, 0.5);
    box.q3 = empirical_quantile(values, 0.75);
    const double iqr = box.q3 - box.q1;
    const double lo_fence = box.q1 - 1.5 * iqr;
    const double hi_fence = box.q3 + 1.5 * iqr;
    box.min = box.q1;
    box.max = box.q3;
    bool first = true;
    for (double v : values) {
        if (v < lo_fence || v > hi_fence) {
            box.outliers.push_back(v);
        } else {
            if (first) {
                box.min = v;
                first = false;
            }
            box.max = v;
        }
    }
    return box;
}

namespace {

LatticeField simulate_for(const ExperimentConfig& config, const GaussianSampler* sampler,
                          RandomStream& stream) {
    if (config.model == "mma") {
        const WeightKernel kernel = mma_weight_diamond(config.phi, config.k0);
        return simulate_mma(config.n, kernel, stream);
    }
    BrSimConfig br;
    br.spec = config.variogram_spec();
    br.truncation_terms = config.terms;
    br.max_field_draws = config.max_field_draws;
    if (config.model == "br-truncated") {
        br.mode = BrSimConfig::Mode::truncated;
        return simulate_br_truncated(config.n, br, *sampler, stream);
    }
    br.mode = BrSimConfig::Mode::exact;
    return simulate_br_exact(config.n, br, *sampler, stream);
}

} // namespace

ReplicationSummary run_experiment(const ExperimentConfig& config) {
    config.validate();
    const FitFamily family = config.fit_family();

    // One factorization shared read-only across replications and workers.
    std::unique_ptr<GaussianSampler> sampler;
    if (config.model != "mma") {
        sampler = std::make_unique<GaussianSampler>(grid_sampler(config.n, config.variogram_spec()));
    }

    const std::size_t fits_per_rep = config.estimators.size() * config.m_values.size();
    ReplicationSummary summary;
    summary.raw.resize(static_cast<std::size_t>(config.replications) * fits_per_rep);

    std::atomic<int> next_rep{0};
    auto worker = [&]() {
        for (;;) {
            const int r = next_rep.fetch_add(1);
            if (r >= config.replications) break;
            RandomStream stream = RandomStream::derive(config.seed, static_cast<std::uint64_t>(r));

            std::size_t slot = static_cast<std::size_t>(r) * fits_per_rep;
            LatticeField field;
            std::string sim_error;
            try {
                field = simulate_for(config, sampler.get(), stream);
            } catch (const std::exception& ex) {
                sim_error = ex.what();
            }
            for (const auto& estimator : config.estimators) {
                for (int m : config.m_values) {
                    FitRecord rec;
                    rec.replication = r;
                    rec.estimator = estimator;
                    rec.m = m;
                    if (!sim_error.empty()) {
                        rec.failed = true;
                        rec.error = sim_error;
                        summary.raw[slot++] = std::move(rec);
                        continue;
                    }
                    const auto start = std::chrono::steady_clock::now();
                    try {
                        if (estimator == "whittle") {
                            const WhittleFit fit =
                                whittle_estimate(field, m, family, config.lo, config.hi, config.tol);
                            rec.theta_hat = fit.theta_hat;
                            rec.objective = fit.objective;
                            rec.converged = fit.converged;
                        } else {
                            const PairwiseFit fit = pairwise_estimate(field, family, config.lo,
                                                                      config.hi, config.dmax,
                                                                      config.tol);
                            rec.theta_hat = fit.theta_hat;
                            rec.objective = fit.loglik;
                            rec.converged = fit.converged;
                        }
                    } catch (const std::exception& ex) {
                        rec.failed = true;
                        rec.error = ex.what();
                    }
                    rec.seconds = std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - start).count();
                    summary.raw[slot++] = std::move(rec);
                }
            }
        }
    };

    if (config.workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(config.workers);
        for (int i = 0; i < config.workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (const auto& estimator : config.estimators) {
        for (int m : config.m_values) {
            SummaryRow row;
            row.estimator = estimator;
            row.m = m;
            std::vector<double> estimates;
            double seconds = 0.0;
            for (const auto& rec : summary.raw) {
                if (rec.estimator != estimator || rec.m != m) continue;
                if (rec.failed) {
                    ++row.failures;
                    continue;
                }
                estimates.push_back(rec.theta_hat);
                seconds += rec.seconds;
            }
            row.count = static_cast<int>(estimates.size());
            if (!estimates.empty()) {
                row.stats = summarize(estimates);
                row.avg_seconds = seconds / static_cast<double>(estimates.size());
                row.boxplot = boxplot_stats(estimates);
            }
            summary.rows.push_back(std::move(row));
        }
    }
    return summary;
}

void write_fit_records_csv(const std::vector<FitRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "replication,estimator,m,theta_hat,objective,converged,seconds,failed,error\n";
    for (const auto& rec : records) {
        out << rec.replication << ',' << rec.estimator << ',' << rec.m << ','
            << format_g17(rec.theta_hat) << ',' << format_g17(rec.objective) << ','
            << (rec.converged ? 1 : 0) << ',' << format_g17(rec.seconds) << ','
            << (rec.failed ? 1 : 0) << ',' << rec.error << '\n';
    }
}

std::vector<FitRecord> read_fit_records_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty records file: " + path);
    std::vector<FitRecord> records;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        FitRecord rec;
        std::getline(ls, tok, ','); rec.replication = std::stoi(tok);
        std::getline(ls, rec.estimator, ',');
        std::getline(ls, tok, ','); rec.m = std::stoi(tok);
        std::getline(ls, tok, ','); rec.theta_hat = std::stod(tok);
        std::getline(ls, tok, ','); rec.objective = std::stod(tok);
        std::getline(ls, tok, ','); rec.converged = tok == "1";
        std::getline(ls, tok, ','); rec.seconds = std::stod(tok);
        if (std::getline(ls, tok, ',')) rec.failed = tok == "1";
        std::getline(ls, rec.error);
        records.push_back(std::move(rec));
    }
    return records;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "estimator,m,count,failures,mean,median,stddev,stddev_defined,avg_seconds\n";
    for (const auto& row : rows) {
        out << row.estimator << ',' << row.m << ',' << row.count << ',' << row.failures << ','
            << format_g17(row.stats.mean) << ',' << format_g17(row.stats.median) << ','
            << format_g17(row.stats.stddev) << ',' << (row.stats.stddev_defined ? 1 : 0) << ','
            << format_g17(row.avg_seconds) << '\n';
    }
}

void write_boxplot_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "estimator,m,min,q1,median,q3,max,outliers\n";
    for (const auto& row : rows) {
        out << row.estimator << ',' << row.m << ',' << format_g17(row.boxplot.min) << ','
            << format_g17(row.boxplot.q1) << ',' << format_g17(row.boxplot.median) << ','
            << format_g17(row.boxplot.q3) << ',' << format_g17(row.boxplot.max) << ',';
        for (std::size_t i = 0; i < row.boxplot.outliers.size(); ++i) {
            if (i) out << ';';
            out << format_g17(row.boxplot.outliers[i]);
        }
        out << '\n';
    }
}

} // namespace spex
