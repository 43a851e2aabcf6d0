#include "ctrw/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ctrw/ctrw.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/law.hpp"
#include "ctrw/limit.hpp"

namespace ctrw {

LawEstimate LawEstimate::from_samples(std::vector<double> xs, std::uint64_t seed,
                                      std::string source) {
    if (xs.empty()) throw ConfigError("LawEstimate: no samples");
    for (double x : xs)
        if (!std::isfinite(x)) throw ConfigError("LawEstimate: non-finite sample");
    std::sort(xs.begin(), xs.end());
    LawEstimate e;
    e.sorted = std::move(xs);
    e.seed = seed;
    e.source = std::move(source);
    return e;
}

double LawEstimate::ecdf(double x) const {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double ks_distance(const LawEstimate& emp, const std::function<double(double)>& cdf) {
    const auto& xs = emp.sorted;
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double F = cdf(xs[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
    }
    return d;
}

double ks_distance(const LawEstimate& a, const LawEstimate& b) {
    const auto& xa = a.sorted;
    const auto& xb = b.sorted;
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < xa.size() && j < xb.size()) {
        const double v = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] <= v) ++i;
        while (j < xb.size() && xb[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

double ks_threshold(std::size_t n, double alpha) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c / std::sqrt(static_cast<double>(n));
}

double ks_threshold(std::size_t n, std::size_t m, double alpha) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return c * std::sqrt((nn + mm) / (nn * mm));
}

double wasserstein1(const LawEstimate& a, const LawEstimate& b) {
    const auto& xa = a.sorted;
    const auto& xb = b.sorted;
    const double na = static_cast<double>(xa.size());
    const double nb = static_cast<double>(xb.size());
    std::size_t i = 0, j = 0;
    double total = 0.0;
    double prev = std::min(xa[0], xb[0]);
    while (i < xa.size() || j < xb.size()) {
        double v;
        if (i == xa.size()) v = xb[j];
        else if (j == xb.size()) v = xa[i];
        else v = std::min(xa[i], xb[j]);
        total += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) *
                 (v - prev);
        while (i < xa.size() && xa[i] <= v) ++i;
        while (j < xb.size() && xb[j] <= v) ++j;
        prev = v;
    }
    return total;
}

Hist2DResult histogram2d_relative_error(
    const std::vector<double>& a_samples, const std::vector<double>& r_samples,
    const std::function<double(double, double, double, double)>& cell_average,
    double a_hi, double r_hi, std::size_t na, std::size_t nr, long min_count) {
    if (a_samples.size() != r_samples.size())
        throw ConfigError("histogram2d: sample vectors must have equal length");
    if (!(a_hi > 0.0 && r_hi > 0.0) || na < 1 || nr < 1)
        throw ConfigError("histogram2d: bad window or bin counts");
    if (min_count < 1) throw ConfigError("histogram2d: 'min_count' must be >= 1");

    std::vector<long> counts(na * nr, 0);
    long inside = 0;
    const double wa = a_hi / static_cast<double>(na);
    const double wr = r_hi / static_cast<double>(nr);
    for (std::size_t k = 0; k < a_samples.size(); ++k) {
        const double a = a_samples[k], r = r_samples[k];
        if (a < 0.0 || a >= a_hi || r < 0.0 || r >= r_hi) continue;
        const std::size_t ia = static_cast<std::size_t>(a / wa);
        const std::size_t ir = static_cast<std::size_t>(r / wr);
        ++counts[ia * nr + ir];
        ++inside;
    }

    const double total = static_cast<double>(a_samples.size());
    Hist2DResult res;
    res.total_bins = na * nr;
    res.total_count = inside;
    double err_sum = 0.0;
    for (std::size_t ia = 0; ia < na; ++ia) {
        for (std::size_t ir = 0; ir < nr; ++ir) {
            const long c = counts[ia * nr + ir];
            if (c < min_count) continue;
            const double emp = static_cast<double>(c) / (total * wa * wr);
            const double ana = cell_average(wa * static_cast<double>(ia),
                                            wa * static_cast<double>(ia + 1),
                                            wr * static_cast<double>(ir),
                                            wr * static_cast<double>(ir + 1));
            if (!(ana > 0.0))
                throw NumericalError("histogram2d: analytic cell average not positive");
            err_sum += std::abs(emp - ana) / ana;
            ++res.qualifying_bins;
        }
    }
    if (res.qualifying_bins == 0)
        throw ConfigError("histogram2d: no bin reached min_count = " +
                          std::to_string(min_count));
    res.mean_rel_error = err_sum / static_cast<double>(res.qualifying_bins);
    return res;
}

Hist2DResult histogram2d_relative_error(const std::vector<double>& a_samples,
                                        const std::vector<double>& r_samples,
                                        const ModelSpec& m, double t, double a_hi,
                                        double r_hi, std::size_t na, std::size_t nr,
                                        long min_count) {
    auto cell = [&m, t](double a0, double a1, double r0, double r1) {
        return joint_ar_cell_average(m, t, a0, a1, r0, r1);
    };
    return histogram2d_relative_error(a_samples, r_samples, cell, a_hi, r_hi, na, nr,
                                      min_count);
}

std::vector<SweepRow> convergence_sweep(const ModelSpec& m, double t,
                                        const std::vector<long>& n_list, long reps,
                                        std::uint64_t master_seed,
                                        const SweepOptions& opt) {
    m.validate();
    if (m.d != 1) throw ConfigError("convergence_sweep: requires d = 1");
    if (n_list.empty()) throw ConfigError("convergence_sweep: empty n list");
    if (reps < 2) throw ConfigError("convergence_sweep: 'reps' must be >= 2");
    if (opt.n_seeds < 1) throw ConfigError("convergence_sweep: 'n_seeds' must be >= 1");
    const double du = opt.du > 0.0 ? opt.du : 1e-3 * t;

    // shared limit-law reference, drawn once from a reserved child stream
    const std::uint64_t ref_seed = child_seed(master_seed, 0x5245464eULL);  // "REFN"
    auto ref = batch_sample(m, t, du, opt.limit_reps, ref_seed);
    std::vector<double> rx(ref.size()), ry(ref.size()), ra(ref.size()), rr(ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
        rx[k] = ref[k].x[0];
        ry[k] = ref[k].y[0];
        ra[k] = ref[k].a;
        rr[k] = ref[k].r;
    }
    const LawEstimate ref_x = LawEstimate::from_samples(std::move(rx), ref_seed, "limit-X");
    const LawEstimate ref_y = LawEstimate::from_samples(std::move(ry), ref_seed, "limit-Y");
    const LawEstimate ref_a = LawEstimate::from_samples(std::move(ra), ref_seed, "limit-A");
    const LawEstimate ref_r = LawEstimate::from_samples(std::move(rr), ref_seed, "limit-R");

    std::vector<SweepRow> rows;
    for (long n : n_list) {
        for (int sidx = 0; sidx < opt.n_seeds; ++sidx) {
            const std::uint64_t seed =
                child_seed(child_seed(master_seed, static_cast<std::uint64_t>(n)),
                           static_cast<std::uint64_t>(sidx));
            auto states = ctrw_batch(m, n, t, reps, seed);
            std::vector<double> xs(states.size()), ys(states.size()), as(states.size()),
                rs(states.size());
            for (std::size_t k = 0; k < states.size(); ++k) {
                xs[k] = states[k].x[0];
                ys[k] = states[k].y[0];
                as[k] = t - states[k].g;
                rs[k] = states[k].dclock - t;
            }
            const auto ex = LawEstimate::from_samples(std::move(xs), seed, "walk-X");
            const auto ey = LawEstimate::from_samples(std::move(ys), seed, "walk-Y");
            const auto ea = LawEstimate::from_samples(std::move(as), seed, "walk-A");
            const auto er = LawEstimate::from_samples(std::move(rs), seed, "walk-R");
            rows.push_back({n, "X", ks_distance(ex, ref_x), reps, seed});
            rows.push_back({n, "Y", ks_distance(ey, ref_y), reps, seed});
            rows.push_back({n, "A", ks_distance(ea, ref_a), reps, seed});
            rows.push_back({n, "R", ks_distance(er, ref_r), reps, seed});
        }
    }
    return rows;
}

}  // namespace ctrw
