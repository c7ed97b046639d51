// Command line front end: simulate heavy-tailed lattice fields, compute
// extremograms and extremal periodograms, fit parametric models by
// Whittle or pairwise likelihood, and drive replication experiments.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "spex/experiment.hpp"
#include "spex/simulate.hpp"

namespace {

int run_simulate(const std::string& model, int n, std::uint64_t seed, double phi, int k0,
                 double hurst, double c, const std::string& variogram, int terms,
                 const std::string& out) {
    spex::RandomStream stream(seed);
    spex::LatticeField field;
    if (model == "mma") {
        field = spex::simulate_mma(n, spex::mma_weight_diamond(phi, k0), stream);
    } else {
        spex::BrSimConfig config;
        config.spec.hurst = hurst;
        config.spec.scale = c;
        config.spec.mode = variogram == "sheet" ? spex::VariogramSpec::Mode::brownian_sheet
                                                : spex::VariogramSpec::Mode::isotropic_fbm;
        config.truncation_terms = terms;
        if (model == "br-truncated") {
            config.mode = spex::BrSimConfig::Mode::truncated;
            field = spex::simulate_br_truncated(n, config, stream);
        } else {
            config.mode = spex::BrSimConfig::Mode::exact;
            field = spex::simulate_br_exact(n, config, stream);
        }
    }
    spex::write_field(field, out);
    std::cout << "wrote " << out << " (" << field.model << ", n=" << field.n << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spatial extremes: max-stable simulation and extremal Whittle estimation"};
    app.require_subcommand(1);

    // simulate
    std::string model = "mma", out, variogram = "isotropic";
    int n = 50, k0 = 5, terms = 1000;
    std::uint64_t seed = 1;
    double phi = 0.5, hurst = 0.5, c = 2.0;
    auto* simulate = app.add_subcommand("simulate", "simulate a lattice field");
    simulate->add_option("--model", model, "mma | br-truncated | br-exact")
        ->check(CLI::IsMember({"mma", "br-truncated", "br-exact"}))->required();
    simulate->add_option("--n", n, "grid side")->required();
    simulate->add_option("--seed", seed, "stream seed")->required();
    simulate->add_option("--phi", phi, "MMA weight decay");
    simulate->add_option("--k0", k0, "MMA diamond radius");
    simulate->add_option("--hurst", hurst, "Brown-Resnick H");
    simulate->add_option("--c", c, "variogram scale");
    simulate->add_option("--variogram", variogram, "isotropic | sheet")
        ->check(CLI::IsMember({"isotropic", "sheet"}));
    simulate->add_option("--terms", terms, "truncation terms J");
    simulate->add_option("--out", out, "output file (.csv or .bin)")->required();

    // extremogram
    std::string in_file, out_file;
    int m = 20, hmax = 3;
    bool centered = false;
    auto* extremogram = app.add_subcommand("extremogram", "empirical spatial extremogram");
    extremogram->add_option("--in", in_file, "field file")->required();
    extremogram->add_option("--m", m, "intermediate level m")->required();
    extremogram->add_option("--hmax", hmax, "max |h|_inf lag");
    extremogram->add_flag("--centered", centered, "export the centered variant");
    extremogram->add_option("--out", out_file, "output CSV")->required();

    // periodogram
    std::string pg_in, pg_out;
    int pg_m = 20;
    auto* periodogram = app.add_subcommand("periodogram", "extremal periodogram at Fourier frequencies");
    periodogram->add_option("--in", pg_in, "field file")->required();
    periodogram->add_option("--m", pg_m, "intermediate level m")->required();
    periodogram->add_option("--out", pg_out, "output CSV")->required();

    // estimate
    std::string est_in, est_out, est_family = "br";
    int est_m = 20, est_k0 = 5;
    double lo = 0.01, hi = 0.99, est_c = 2.0, dmax = 2.0;
    bool pairwise = false;
    auto* estimate = app.add_subcommand("estimate", "fit a parametric family to one field");
    estimate->add_option("--in", est_in, "field file")->required();
    estimate->add_option("--family", est_family, "br | mma")
        ->check(CLI::IsMember({"br", "mma"}))->required();
    estimate->add_option("--m", est_m, "intermediate level m")->required();
    estimate->add_option("--lo", lo, "lower parameter bound")->required();
    estimate->add_option("--hi", hi, "upper parameter bound")->required();
    estimate->add_option("--c", est_c, "Brown-Resnick scale (held fixed)");
    estimate->add_option("--k0", est_k0, "MMA diamond radius (held fixed)");
    estimate->add_flag("--pairwise", pairwise, "pairwise composite likelihood instead of Whittle");
    estimate->add_option("--dmax", dmax, "pairwise max pair distance");
    estimate->add_option("--out", est_out, "output CSV")->required();

    // experiment
    std::string config_path, exp_out;
    int workers = 0;
    auto* experiment = app.add_subcommand("experiment", "replication study from a config file");
    experiment->add_option("--config", config_path, "key=value config file")->required();
    experiment->add_option("--workers", workers, "worker threads (overrides config)");
    experiment->add_option("--out", exp_out, "output directory")->required();

    // check-spectral
    std::string cs_family = "br";
    double cs_hurst = 0.5, cs_phi = 0.5, cs_c = 2.0;
    int cs_k0 = 5, resolution = 128;
    auto* check = app.add_subcommand("check-spectral", "positivity scan of a spectral density");
    check->add_option("--family", cs_family, "br | mma")
        ->check(CLI::IsMember({"br", "mma"}))->required();
    check->add_option("--hurst", cs_hurst, "Brown-Resnick H");
    check->add_option("--phi", cs_phi, "MMA weight decay");
    check->add_option("--c", cs_c, "Brown-Resnick scale");
    check->add_option("--k0", cs_k0, "MMA diamond radius");
    check->add_option("--resolution", resolution, "frequency grid side (>= 64)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            return run_simulate(model, n, seed, phi, k0, hurst, c, variogram, terms, out);
        }
        if (extremogram->parsed()) {
            const auto field = spex::read_field(in_file);
            const auto threshold = spex::choose_threshold(field, m);
            const auto est = spex::empirical_extremogram(field, threshold, hmax);
            spex::write_extremogram_csv(est, out_file, centered);
            std::cout << "wrote " << out_file << " (a_m=" << threshold.a_m << ")\n";
            return 0;
        }
        if (periodogram->parsed()) {
            const auto field = spex::read_field(pg_in);
            const auto threshold = spex::choose_threshold(field, pg_m);
            const auto grid = spex::indicators(field, threshold);
            const auto pg = spex::extremal_periodogram(grid, pg_m);
            spex::write_periodogram_csv(pg, pg_out);
            std::cout << "wrote " << pg_out << '\n';
            return 0;
        }
        if (estimate->parsed()) {
            const auto field = spex::read_field(est_in);
            spex::FitFamily family;
            if (est_family == "br") {
                family.family = spex::ModelFamily::brown_resnick;
                family.br_scale = est_c;
            } else {
                family.family = spex::ModelFamily::mma_diamond;
                family.mma_k0 = est_k0;
            }
            spex::FitRecord rec;
            rec.m = est_m;
            const auto start = std::chrono::steady_clock::now();
            if (pairwise) {
                rec.estimator = "pairwise";
                const auto fit = spex::pairwise_estimate(field, family, lo, hi, dmax);
                rec.theta_hat = fit.theta_hat;
                rec.objective = fit.loglik;
                rec.converged = fit.converged;
            } else {
                rec.estimator = "whittle";
                const auto fit = spex::whittle_estimate(field, est_m, family, lo, hi);
                rec.theta_hat = fit.theta_hat;
                rec.objective = fit.objective;
                rec.converged = fit.converged;
            }
            rec.seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start).count();
            spex::write_fit_records_csv({rec}, est_out);
            std::cout << rec.estimator << " theta_hat=" << rec.theta_hat
                      << " converged=" << rec.converged << '\n';
            return 0;
        }
        if (experiment->parsed()) {
            auto config = spex::ExperimentConfig::from_file(config_path);
            if (workers > 0) config.workers = workers;
            std::filesystem::create_directories(exp_out);
            const auto summary = spex::run_experiment(config);
            spex::write_fit_records_csv(summary.raw, exp_out + "/raw.csv");
            spex::write_summary_csv(summary.rows, exp_out + "/summary.csv");
            spex::write_boxplot_csv(summary.rows, exp_out + "/boxplot.csv");
            std::ofstream meta(exp_out + "/meta.txt");
            meta << config.describe() << "\nworkers=" << config.workers << '\n';
            for (const auto& row : summary.rows) {
                std::cout << row.estimator << " m=" << row.m << ": mean=" << row.stats.mean
                          << " median=" << row.stats.median << " std=" << row.stats.stddev
                          << " failures=" << row.failures << '\n';
            }
            return 0;
        }
        if (check->parsed()) {
            const auto model = cs_family == "br"
                ? spex::SpectralModel::brown_resnick(cs_hurst, cs_c)
                : spex::SpectralModel::mma_diamond(cs_phi, cs_k0);
            const auto report = spex::positivity_check(model, resolution);
            std::cout << model.to_record() << "\nmin f = " << report.min_value << " at ("
                      << report.argmin_w1 << ", " << report.argmin_w2 << ")\n";
            if (!(report.min_value > 0.0)) {
                std::cerr << "error: spectral density not positive on the grid\n";
                return 2;
            }
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
