#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "ctrw/ctrw.hpp"
#include "ctrw/law.hpp"
#include "ctrw/laplace.hpp"
#include "ctrw/limit.hpp"
#include "ctrw/model.hpp"
#include "ctrw/path.hpp"
#include "ctrw/quadrature.hpp"
#include "ctrw/rng.hpp"
#include "ctrw/stats.hpp"

namespace ctrw {
namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x, int prec = 4) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

// Deterministic replica stream shared by the sampling criteria. Replicas are
// produced through the parallel batch sampler in bounded blocks; per-replica
// child seeds make the values independent of thread count, and the consumer
// sees them in replica order either way.
template <class F>
void stream_samples(const ModelSpec& m, double t, double du, long reps,
                    std::uint64_t seed, F&& take) {
    const long block = 32768;
    for (long lo = 0; lo < reps; lo += block) {
        const auto chunk = batch_sample(m, t, du, std::min(block, reps - lo), seed, lo);
        for (const auto& js : chunk) take(js);
    }
}

// ---------------------------------------------------------------------------
// 1. The lagging/leading walk computed by renewal scanning must equal the two
//    time changes of the row-sum path, bitwise, across the whole model zoo.

std::vector<ModelSpec> matching_zoo() {
    std::vector<ModelSpec> zoo;
    {
        ModelSpec m;
        m.kind = ModelKind::UncoupledGaussian;
        m.beta = 0.5;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::UncoupledGaussian;
        m.beta = 0.3;
        m.sigma2 = 2.0;
        m.d = 2;
        m.b = {0.5, -0.25};
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::UncoupledStableJump;
        m.alpha = 1.5;
        m.beta = 0.7;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::UncoupledStableJump;
        m.alpha = 1.0;
        m.beta = 0.4;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::FullyCoupledLevyWalk;
        m.beta = 0.7;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::FullyCoupledLevyWalk;
        m.beta = 0.5;
        m.sign_mode = SignMode::Symmetric;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::GaussianCoupled;
        m.beta = 0.5;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::DriftedSubordinator;
        m.gamma = 1.0;
        m.beta = 0.5;
        m.w = 1.0;
        zoo.push_back(m);
    }
    {
        ModelSpec m;
        m.kind = ModelKind::PureDrift;
        m.gamma = 2.0;
        zoo.push_back(m);
    }
    return zoo;
}

Outcome criterion_matching() {
    const auto zoo = matching_zoo();
    const long realizations = 1000;
    const long queries = 200;
    long mismatches = 0;
    Rng tq(child_seed(0xACC101, 0));
    for (long i = 0; i < realizations; ++i) {
        const ModelSpec& m = zoo[static_cast<std::size_t>(i) % zoo.size()];
        const long n = 1 + (i * 37) % 100;
        Rng rng(child_seed(0xACC102, i));
        const CTRWRealization real = build_row_sum(m, n, 1.0, rng);
        const StepPath lag = apply_Phi(real.row_sum);
        const StepPath lead = apply_Psi(real.row_sum);
        for (long q = 0; q < queries; ++q) {
            const double t = tq.uniform();
            const CtrwState st = ctrw_state(real, t);
            const std::size_t il = segment_index(lag, t);
            const std::size_t ir = segment_index(lead, t);
            bool ok = lag.clocks[il] == st.g && lead.clocks[ir] == st.dclock;
            for (int c = 0; ok && c < m.d; ++c)
                ok = lag.position(il)[c] == st.x[c] &&
                     lead.position(ir)[c] == st.y[c];
            if (!ok) ++mismatches;
        }
    }
    return {mismatches == 0, "9 models, 1000 realizations x 200 queries, mismatches: " +
                                 std::to_string(mismatches)};
}

// ---------------------------------------------------------------------------
// 2. Regression for the known discontinuity of the time changes: a walker
//    family converging uniformly to a path whose leading value at t=2 differs
//    from every walker's. All numbers dyadic, so the check is exact.

StepPath remark_walker(int n) {
    StepPath p;
    p.d = 1;
    p.horizon = 2.0;
    const double lo = 2.0 - 1.0 / n;
    const double hi = 2.0 + 1.0 / n;
    p.times = {0.0, 1.0, 2.0};
    p.clocks = {lo, hi, hi};
    p.positions = {0.0, 1.0, 0.0};
    for (int k = 1; k <= 8; ++k) {  // clock ramps as sigma(u) = u past the plateau
        p.times.push_back(2.0 + 1.0 / n + k / 16.0);
        p.clocks.push_back(hi + k / 16.0);
        p.positions.push_back(0.0);
    }
    return p;
}

StepPath remark_limit() {
    StepPath p;
    p.d = 1;
    p.horizon = 2.0;
    p.times = {0.0, 1.0, 2.0};
    p.clocks = {2.0, 2.0, 2.0};
    p.positions = {0.0, 1.0, 0.0};
    for (int k = 1; k <= 8; ++k) {
        p.times.push_back(2.0 + k / 16.0);
        p.clocks.push_back(2.0 + k / 16.0);
        p.positions.push_back(0.0);
    }
    return p;
}

Outcome criterion_remark() {
    bool pass = true;
    std::string bad;
    for (int n : {1, 2, 4, 8, 16}) {
        const StepPath p = remark_walker(n);
        p.validate();
        const StepPath lead = apply_Psi(p);
        const double v = lead.position(segment_index(lead, 2.0))[0];
        if (v != 1.0) {
            pass = false;
            bad += " walker n=" + std::to_string(n) + " gave " + fmt(v);
        }
    }
    const StepPath lim = remark_limit();
    lim.validate();
    const StepPath lead = apply_Psi(lim);
    for (double t : {0.5, 1.0, 1.5, 2.0}) {
        const double v = lead.position(segment_index(lead, t))[0];
        if (v != 0.0) {
            pass = false;
            bad += " limit at t=" + fmt(t) + " gave " + fmt(v);
        }
    }
    return {pass, pass ? "leading value at t=2: 1 for n in {1,2,4,8,16}, 0 for the limit path"
                       : "unexpected values:" + bad};
}

// ---------------------------------------------------------------------------
// 3. Age marginal of the limit: Beta(1-beta, beta) at t = 1.

Outcome criterion_age_law() {
    bool pass = true;
    std::string detail;
    const double betas[] = {0.3, 0.5, 0.7};
    for (int bi = 0; bi < 3; ++bi) {
        ModelSpec m;
        m.kind = ModelKind::FullyCoupledLevyWalk;
        m.beta = betas[bi];
        const long reps = 100000;
        std::vector<double> ages;
        ages.reserve(reps);
        stream_samples(m, 1.0, 1e-4, reps, 0xACC300 + static_cast<std::uint64_t>(bi),
                       [&](const JointSample& js) { ages.push_back(js.a); });
        const LawEstimate est = LawEstimate::from_samples(std::move(ages));
        const double ks =
            ks_distance(est, [&](double a) { return age_cdf(m, 1.0, a); });
        if (!(ks < 0.02)) pass = false;
        detail += std::string(bi ? ", " : "") + "beta=" + fmt(betas[bi], 2) +
                  ": KS=" + fmt(ks, 3);
    }
    return {pass, detail + " (limit 0.02)"};
}

// ---------------------------------------------------------------------------
// 4. Joint (age, remaining lifetime) density against the closed form.

Outcome criterion_joint_grid() {
    ModelSpec m;
    m.kind = ModelKind::FullyCoupledLevyWalk;
    m.beta = 0.5;
    const double t = 1.0, du = 1e-3;
    const long reps = 1000000;
    std::vector<double> as, rs;
    as.reserve(reps);
    rs.reserve(reps);
    stream_samples(m, t, du, reps, 0xACC400, [&](const JointSample& js) {
        as.push_back(js.a);
        rs.push_back(js.r);
    });
    const Hist2DResult h =
        histogram2d_relative_error(as, rs, m, t, 1.0, 2.0, 40, 40, 100);

    // Spot check: the bin whose lower corner sits at (a, r) = (0.5, 0.5).
    const double a0 = 0.5, a1 = 0.525, r0 = 0.5, r1 = 0.55;
    long cnt = 0;
    for (long k = 0; k < reps; ++k)
        if (as[k] >= a0 && as[k] < a1 && rs[k] >= r0 && rs[k] < r1) ++cnt;
    const double area = (a1 - a0) * (r1 - r0);
    const double emp = static_cast<double>(cnt) / (static_cast<double>(reps) * area);
    const double pinned = 0.2251;
    const double cell = joint_ar_cell_average(m, t, a0, a1, r0, r1);
    const double sigma_rel =
        1.0 / std::sqrt(std::max(1.0, cell * area * static_cast<double>(reps)));
    const double tol = 0.05 + 5.0 * sigma_rel;  // cell averaging + Monte Carlo
    const bool spot_ok = std::abs(emp - pinned) <= tol * pinned;

    const bool pass = h.mean_rel_error < 0.10 && spot_ok;
    std::string detail = "mean rel err=" + fmt(h.mean_rel_error, 3) + " over " +
                         std::to_string(h.qualifying_bins) +
                         " bins (limit 0.10); spot density " + fmt(emp, 4) +
                         " vs 0.2251 (tol " + fmt(tol * pinned, 2) + ")";
    return {pass, detail};
}

// ---------------------------------------------------------------------------
// 5. Order and separation of the lagging and leading positions.

Outcome criterion_order() {
    ModelSpec lw;
    lw.kind = ModelKind::FullyCoupledLevyWalk;
    lw.beta = 0.7;
    const double t = 1.0;
    long violations = 0;
    std::vector<double> xs, ys;
    const long reps1 = 20000;
    xs.reserve(reps1);
    ys.reserve(reps1);
    stream_samples(lw, t, 1e-3, reps1, 0xACC500, [&](const JointSample& js) {
        xs.push_back(js.x[0]);
        ys.push_back(js.y[0]);
        const bool ordered = js.x[0] <= t && t < js.y[0];
        const bool identified = std::abs(js.x[0] - (t - js.a)) <= 1e-12 &&
                                std::abs(js.y[0] - (t + js.r)) <= 1e-12;
        if (!ordered || !identified) ++violations;
    });
    const double ks_coupled = ks_distance(LawEstimate::from_samples(std::move(xs)),
                                          LawEstimate::from_samples(std::move(ys)));

    ModelSpec ug;  // independent jumps: both walks share one limit law
    ug.kind = ModelKind::UncoupledGaussian;
    ug.beta = 0.5;
    std::vector<double> xs2, ys2;
    const long reps2 = 100000;
    xs2.reserve(reps2);
    ys2.reserve(reps2);
    stream_samples(ug, t, 1e-3, reps2, 0xACC501, [&](const JointSample& js) {
        xs2.push_back(js.x[0]);
        ys2.push_back(js.y[0]);
    });
    const double ks_unc = ks_distance(LawEstimate::from_samples(std::move(xs2)),
                                      LawEstimate::from_samples(std::move(ys2)));

    const bool pass = violations == 0 && ks_coupled >= 0.9 && ks_unc < 0.02;
    return {pass, "coupled walk: order violations " + std::to_string(violations) +
                      ", KS(X,Y)=" + fmt(ks_coupled, 3) +
                      " (need >= 0.9); uncoupled: KS(X,Y)=" + fmt(ks_unc, 3) +
                      " (need < 0.02)"};
}

// ---------------------------------------------------------------------------
// 6. Atom of the remaining lifetime at zero: present under clock drift,
//    absent without it, with the drifted mass matching the inversion value.

Outcome criterion_atom() {
    bool pass = true;
    std::string detail;
    {
        ModelSpec pd;
        pd.kind = ModelKind::PureDrift;
        pd.gamma = 1.0;
        const double du = 0x1p-10;  // dyadic grid: renewal lands exactly on t
        long flagged = 0, sharp = 0;
        const long reps = 10000;
        stream_samples(pd, 1.0, du, reps, 0xACC600, [&](const JointSample& js) {
            flagged += js.on_M;
            sharp += js.on_M && js.a == 0.0 && js.r == 0.0 && js.x == js.y;
        });
        if (sharp != reps) pass = false;
        detail += "drift-only: flagged " + std::to_string(flagged) + "/" +
                  std::to_string(reps) + " with a=r=0 and x=y";
    }
    {
        ModelSpec lw;
        lw.kind = ModelKind::FullyCoupledLevyWalk;
        lw.beta = 0.5;
        long strict = 0;
        long near1 = 0, near2 = 0;
        const long reps1 = 60000, reps2 = 20000;
        const double du1 = 1e-4, du2 = 1e-5;
        stream_samples(lw, 1.0, du1, reps1, 0xACC601, [&](const JointSample& js) {
            strict += js.on_M;
            near1 += js.r < du1;
        });
        stream_samples(lw, 1.0, du2, reps2, 0xACC602, [&](const JointSample& js) {
            strict += js.on_M;
            near2 += js.r < du2;
        });
        const double f1 = static_cast<double>(near1) / reps1;
        const double f2 = static_cast<double>(near2) / reps2;
        if (!(strict == 0 && f1 < 0.01 && f1 >= 2.0 * f2)) pass = false;
        detail += "; driftless: flagged 0, near-renewal " + fmt(100 * f1, 3) +
                  "% at du=1e-4 -> " + fmt(100 * f2, 3) + "% at du=1e-5";
    }
    {
        ModelSpec ds;
        ds.kind = ModelKind::DriftedSubordinator;
        ds.gamma = 1.0;
        ds.beta = 0.5;
        ds.w = 1.0;
        long flagged = 0;
        const long reps = 100000;
        stream_samples(ds, 1.0, 1e-3, reps, 0xACC603,
                       [&](const JointSample& js) { flagged += js.on_M; });
        const double freq = static_cast<double>(flagged) / reps;
        const double atom = atom_mass_R0(ds, 1.0);
        if (!(std::abs(freq / atom - 1.0) <= 0.15)) pass = false;
        detail += "; drifted: flagged " + fmt(freq, 4) + " vs atom " + fmt(atom, 4) +
                  " (tol 15%)";
    }
    return {pass, detail};
}

// ---------------------------------------------------------------------------
// 7. Short-interval occupation mass of a drifted clock: gamma U([0,eps])/eps.

Outcome criterion_tauberian() {
    ModelSpec ds;
    ds.kind = ModelKind::DriftedSubordinator;
    ds.gamma = 1.0;
    ds.beta = 0.5;
    ds.w = 1.0;
    const double r1 = tauberian_ratio(ds, 1e-1);
    const double r2 = tauberian_ratio(ds, 1e-2);
    const double r3 = tauberian_ratio(ds, 1e-3);

    ModelSpec pd;
    pd.kind = ModelKind::PureDrift;
    pd.gamma = 1.7;
    double worst_pd = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3})
        worst_pd = std::max(worst_pd, std::abs(tauberian_ratio(pd, eps) - 1.0));

    const bool pass =
        std::abs(r3 - 1.0) < 0.05 && r1 < r2 && r2 < r3 && worst_pd < 1e-6;
    return {pass, "drifted ratios " + fmt(r1, 4) + " -> " + fmt(r2, 4) + " -> " +
                      fmt(r3, 4) + " (monotone, last within 5%); drift-only off by " +
                      fmt(worst_pd, 2)};
}

// ---------------------------------------------------------------------------
// 8. Laplace inversion reference pairs on t in [0.1, 10].

Outcome criterion_inversion() {
    const double pi = 3.14159265358979323846;
    double worst = 0.0;
    for (int k = 0; k <= 12; ++k) {
        const double t = 0.1 * std::pow(10.0, k / 6.0);
        const double e1 =
            std::abs(gaver_stehfest([](double s) { return 1.0 / s; }, t) - 1.0);
        const double e2 =
            std::abs(gaver_stehfest([](double s) { return 1.0 / (s * s); }, t) - t) /
            t;
        const double ref = 1.0 / std::sqrt(pi * t);
        const double e3 =
            std::abs(gaver_stehfest([](double s) { return 1.0 / std::sqrt(s); }, t) -
                     ref) /
            ref;
        worst = std::max({worst, e1, e2, e3});
    }
    return {worst < 1e-3,
            "worst relative error " + fmt(worst, 2) + " across 13 abscissas (limit 1e-3)"};
}

// ---------------------------------------------------------------------------
// 9. Distribution distance walk -> limit shrinks as the row size grows.
//
// For the uncoupled Gaussian model the position given the renewal count is
// exactly Normal(0, count/n), so both marginal CDFs are scale mixtures over
// count laws: the walk mixes over N at scale n, the limit over L(1), which
// for this wait exponent is half-normal with variance 2. Evaluating the
// mixtures directly removes all position-sampling noise from the comparison.
// The true distances are led by the atom the walk keeps at the origin,
// P(N=0)/2 = 1/(2 sqrt(pi) n), about 2.8e-3 / 2.8e-4 / 2.8e-5 along the
// ladder; an empirical-CDF estimate would need ~1e10 draws to resolve the
// last value, while the count-law noise here sits well below it. One wait
// stream per replica yields the counts at all three scales (prefix
// thresholds), and each stream carries an antithetic twin, so the residual
// noise is shared across rungs instead of masking the ordering.

Outcome criterion_sweep() {
    ModelSpec ug;
    ug.kind = ModelKind::UncoupledGaussian;
    ug.beta = 0.5;
    const double t = 1.0;
    const std::vector<long> ns = {100, 1000, 10000};
    const long pairs = 400000;
    const int n_seeds = 5;

    // crossing t in scaled waits == crossing t / wait_factor in raw waits
    std::vector<double> thr(ns.size());
    for (std::size_t j = 0; j < ns.size(); ++j)
        thr[j] = t / ug.row_scaling(ns[j]).wait_factor;

    const auto gauss_cdf = [](double z) {
        return 0.5 * std::erfc(-z / std::sqrt(2.0));
    };

    const int nx = 201;
    const double x_hi = 5.0;  // both CDFs are within 4e-7 of 1 past this point
    std::vector<double> ref(nx);
    const double inv_sqrt_pi = 0.5641895835477563;
    for (int i = 0; i < nx; ++i) {
        const double x = x_hi * i / (nx - 1);
        ref[i] = integrate(
            [&](double l) {
                return inv_sqrt_pi * std::exp(-0.25 * l * l) *
                       gauss_cdf(x / std::sqrt(l));
            },
            0.0, 14.0, 1e-10);
    }

    std::vector<double> means(ns.size(), 0.0);
    for (int seed = 0; seed < n_seeds; ++seed) {
        std::vector<std::vector<std::uint32_t>> hist(ns.size());
        for (std::size_t j = 0; j < ns.size(); ++j)
            hist[j].assign(static_cast<std::size_t>(12 * ns[j] + 2), 0);
        const std::uint64_t master = 0xACC900 + static_cast<std::uint64_t>(seed);

#pragma omp parallel
        {
            std::vector<std::vector<std::uint32_t>> local(ns.size());
            for (std::size_t j = 0; j < ns.size(); ++j)
                local[j].assign(hist[j].size(), 0);
#pragma omp for schedule(dynamic, 512) nowait
            for (long rep = 0; rep < pairs; ++rep) {
                Rng rng(child_seed(master, static_cast<std::uint64_t>(rep)));
                double clock[2] = {0.0, 0.0};
                long steps[2] = {0, 0};
                std::size_t rung[2] = {0, 0};
                while (rung[0] < ns.size() || rung[1] < ns.size()) {
                    const double u = rng.uniform_pos();
                    const double v = 1.0 - u;
                    // Pareto(1/2) wait and its antithetic twin
                    const double w[2] = {1.0 / (u * u), 1.0 / (v * v)};
                    for (int a = 0; a < 2; ++a) {
                        if (rung[a] >= ns.size()) continue;
                        clock[a] += w[a];
                        ++steps[a];
                        while (rung[a] < ns.size() && clock[a] > thr[rung[a]]) {
                            long c = steps[a] - 1;  // renewals at or before t
                            const long cap = 12 * ns[rung[a]];
                            if (c > cap) c = cap + 1;
                            ++local[rung[a]][static_cast<std::size_t>(c)];
                            ++rung[a];
                        }
                    }
                }
            }
#pragma omp critical
            for (std::size_t j = 0; j < ns.size(); ++j)
                for (std::size_t c = 0; c < hist[j].size(); ++c)
                    hist[j][c] += local[j][c];
        }

        // integer histograms merge commutatively, so the sup below is
        // bitwise reproducible for any thread count
        for (std::size_t j = 0; j < ns.size(); ++j) {
            double sup = 0.0;
            for (int i = 0; i < nx; ++i) {
                const double x = x_hi * i / (nx - 1);
                double fn = 0.0;
                for (std::size_t c = 0; c < hist[j].size(); ++c) {
                    if (!hist[j][c]) continue;
                    fn += hist[j][c] *
                          (c == 0 ? 1.0
                                  : gauss_cdf(x * std::sqrt(static_cast<double>(ns[j]) /
                                                            static_cast<double>(c))));
                }
                fn /= 2.0 * static_cast<double>(pairs);
                sup = std::max(sup, std::abs(fn - ref[i]));
            }
            means[j] += sup / n_seeds;
        }
    }

    const bool pass = means[0] > means[1] && means[1] > means[2];
    std::string detail = "5-seed mean KS(X):";
    for (std::size_t j = 0; j < ns.size(); ++j)
        detail += " n=" + std::to_string(ns[j]) + ": " + fmt(means[j], 3);
    return {pass, detail + (pass ? " (strictly decreasing)" : " (NOT decreasing)")};
}

// ---------------------------------------------------------------------------
// 10. Every command is replayable from its manifest with byte-identical data.

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion_manifest(const std::string& scratch_dir, const CliRunner& cli) {
    namespace fs = std::filesystem;
    if (!cli) return {false, "no command runner supplied"};
    const fs::path scratch(scratch_dir);
    fs::create_directories(scratch);

    ModelSpec ug;
    ug.kind = ModelKind::UncoupledGaussian;
    ug.beta = 0.5;
    ModelSpec lw;
    lw.kind = ModelKind::FullyCoupledLevyWalk;
    lw.beta = 0.5;
    const fs::path ug_json = scratch / "uncoupled-gaussian.json";
    const fs::path lw_json = scratch / "levy-walk.json";
    std::ofstream(ug_json) << model_to_json_text(ug);
    std::ofstream(lw_json) << model_to_json_text(lw);

    struct Cmd {
        const char* label;
        std::vector<std::string> args;
    };
    const std::vector<Cmd> cmds = {
        {"simulate",
         {"simulate", "--model", ug_json.string(), "--n", "50", "--t", "1",
          "--reps", "200", "--seed", "11"}},
        {"limit-sample",
         {"limit-sample", "--model", lw_json.string(), "--t", "1", "--du", "0.01",
          "--reps", "100", "--seed", "13"}},
        {"law",
         {"law", "--model", lw_json.string(), "--t", "1", "--var", "age", "--bins",
          "50"}},
        {"converge",
         {"converge", "--model", ug_json.string(), "--t", "1", "--n-list", "10,50",
          "--reps", "500", "--seeds", "2", "--limit-reps", "2000", "--du", "0.01",
          "--seed", "17"}},
    };

    std::size_t files = 0;
    for (const auto& cmd : cmds) {
        const fs::path dir_a = scratch / (std::string(cmd.label) + "-a");
        const fs::path dir_b = scratch / (std::string(cmd.label) + "-b");
        fs::create_directories(dir_a);
        std::vector<std::string> argv = cmd.args;
        argv.push_back("--out");
        argv.push_back(dir_a.string());
        if (cli(argv) != 0)
            return {false, std::string(cmd.label) + ": initial run failed"};

        const fs::path manifest = dir_a / "manifest.json";
        if (cli({"rerun", "--manifest", manifest.string(), "--out",
                 dir_b.string()}) != 0)
            return {false, std::string(cmd.label) + ": replay failed"};

        nlohmann::json man;
        std::ifstream(manifest) >> man;
        for (const auto& f : man.at("outputs")) {
            const std::string name = f.get<std::string>();
            if (slurp(dir_a / name) != slurp(dir_b / name))
                return {false, std::string(cmd.label) + ": " + name +
                                   " differs between run and replay"};
            ++files;
        }
    }
    return {true, "4 commands replayed, " + std::to_string(files) +
                      " data files byte-identical"};
}

}  // namespace

int run_acceptance(std::ostream& out, const std::string& scratch_dir,
                   const CliRunner& cli) {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "exact lagging/leading matching", criterion_matching},
        {2, "time-change discontinuity regression", criterion_remark},
        {3, "generalized arcsine age law", criterion_age_law},
        {4, "joint age/lifetime density grid", criterion_joint_grid},
        {5, "lagging vs leading separation", criterion_order},
        {6, "renewal atom dichotomy", criterion_atom},
        {7, "short-time occupation ratio", criterion_tauberian},
        {8, "laplace inversion reference pairs", criterion_inversion},
        {9, "walk-to-limit convergence sweep", criterion_sweep},
        {10, "manifest replay determinism",
         [&] { return criterion_manifest(scratch_dir, cli); }},
    };

    out << "acceptance suite: " << entries.size() << " criteria\n";
    int failures = 0;
    for (const auto& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome oc;
        try {
            oc = e.fn();
        } catch (const std::exception& ex) {
            oc = {false, std::string("exception: ") + ex.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        out << '[' << std::setw(2) << e.id << "/10] "
            << (oc.pass ? "PASS" : "FAIL") << "  " << std::left << std::setw(40)
            << e.name << std::right << std::setw(8) << fmt(secs, 3) << "s  "
            << oc.detail << '\n'
            << std::flush;
        if (!oc.pass) ++failures;
    }
    if (failures == 0)
        out << "acceptance: all criteria passed\n";
    else
        out << "acceptance: " << failures << " criteria FAILED\n";
    return failures;
}

}  // namespace ctrw
