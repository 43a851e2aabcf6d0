#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ctrw/model.hpp"

namespace ctrw {

// An empirical one-dimensional law: sorted samples plus provenance.
struct LawEstimate {
    std::vector<double> sorted;
    std::uint64_t seed = 0;
    std::string source;

    static LawEstimate from_samples(std::vector<double> xs, std::uint64_t seed = 0,
                                    std::string source = {});
    std::size_t size() const { return sorted.size(); }
    double ecdf(double x) const;  // right-continuous
};

// sup_x |F_n(x) - F(x)| against an analytic CDF.
double ks_distance(const LawEstimate& emp, const std::function<double(double)>& cdf);

// Two-sample sup distance.
double ks_distance(const LawEstimate& a, const LawEstimate& b);

// Asymptotic Kolmogorov acceptance thresholds at confidence 1 - alpha.
double ks_threshold(std::size_t n, double alpha);
double ks_threshold(std::size_t n, std::size_t m, double alpha);

// First Wasserstein distance = integral of |F_a - F_b|.
double wasserstein1(const LawEstimate& a, const LawEstimate& b);

struct Hist2DResult {
    double mean_rel_error = 0.0;
    std::size_t qualifying_bins = 0;
    std::size_t total_bins = 0;
    long total_count = 0;
};

// Bin (a, r) samples on a regular grid over [0,a_hi] x [0,r_hi] and compare
// each bin with at least min_count hits against the analytic cell average of
// the joint law; reports the mean relative deviation over qualifying bins.
// Throws ConfigError if no bin qualifies.
Hist2DResult histogram2d_relative_error(const std::vector<double>& a_samples,
                                        const std::vector<double>& r_samples,
                                        const ModelSpec& m, double t, double a_hi,
                                        double r_hi, std::size_t na, std::size_t nr,
                                        long min_count);

// Generic variant against a caller-supplied cell-average function
// (a0,a1,r0,r1) -> density, for self-consistency tests.
Hist2DResult histogram2d_relative_error(
    const std::vector<double>& a_samples, const std::vector<double>& r_samples,
    const std::function<double(double, double, double, double)>& cell_average,
    double a_hi, double r_hi, std::size_t na, std::size_t nr, long min_count);

struct SweepRow {
    long n = 0;
    std::string marginal;  // "X", "Y", "A" or "R"
    double distance = 0.0;
    long reps = 0;
    std::uint64_t seed = 0;
};

struct SweepOptions {
    int n_seeds = 1;
    long limit_reps = 100'000;
    double du = 0.0;  // 0 = default 1e-3 * t
};

// Walk-vs-limit distribution distances across row sizes: for each n and each
// seed, KS distances of the lagging and leading position marginals plus the
// age and remaining-lifetime marginals against a shared limit-law reference
// sample. Rows come out ordered by (n, seed, marginal) and are a pure
// function of the arguments.
std::vector<SweepRow> convergence_sweep(const ModelSpec& m, double t,
                                        const std::vector<long>& n_list, long reps,
                                        std::uint64_t master_seed,
                                        const SweepOptions& opt = {});

}  // namespace ctrw
