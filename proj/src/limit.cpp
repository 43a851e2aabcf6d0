#include "ctrw/limit.hpp"

#include <cmath>
#include <string>

#include "ctrw/errors.hpp"
#include "ctrw/summation.hpp"

namespace ctrw {

void skeleton_increment(const ModelSpec& m, double du, Rng& rng, double* dpos,
                        double& dclock) {
    switch (m.kind) {
        case ModelKind::UncoupledGaussian: {
            dclock = stable_subordinator_increment(m.beta, du, rng);
            const double sd = std::sqrt(m.sigma2 * du);
            for (int i = 0; i < m.d; ++i)
                dpos[i] = m.drift_b(i) * du + sd * rng.normal();
            return;
        }
        case ModelKind::UncoupledStableJump: {
            dclock = stable_subordinator_increment(m.beta, du, rng);
            const double sc = std::pow(du, 1.0 / m.alpha);
            for (int i = 0; i < m.d; ++i)
                dpos[i] = m.drift_b(i) * du + sc * symmetric_stable(m.alpha, rng);
            return;
        }
        case ModelKind::FullyCoupledLevyWalk: {
            if (m.sign_mode == SignMode::Deterministic) {
                dclock = stable_subordinator_increment(m.beta, du, rng);
                dpos[0] = dclock;
            } else {
                // split by jump sign: two independent half-rate one-sided parts
                const double up = stable_subordinator_increment(m.beta, 0.5 * du, rng);
                const double dn = stable_subordinator_increment(m.beta, 0.5 * du, rng);
                dclock = up + dn;
                dpos[0] = up - dn;
            }
            return;
        }
        case ModelKind::GaussianCoupled: {
            dclock = stable_subordinator_increment(m.beta, du, rng);
            const double sd = std::sqrt(dclock);
            for (int i = 0; i < m.d; ++i)
                dpos[i] = m.drift_b(i) * du + sd * rng.normal();
            return;
        }
        case ModelKind::DriftedSubordinator: {
            dclock = m.gamma * du + stable_subordinator_increment(m.beta, m.w * du, rng);
            for (int i = 0; i < m.d; ++i) dpos[i] = m.drift_b(i) * du;
            return;
        }
        case ModelKind::PureDrift: {
            dclock = m.gamma * du;
            const double sd = std::sqrt(m.sigma2 * du);
            for (int i = 0; i < m.d; ++i)
                dpos[i] = m.drift_b(i) * du + sd * rng.normal();
            return;
        }
    }
}

namespace {

void check_grid(const ModelSpec& m, double horizon, double du) {
    m.validate();
    if (!(du > 0.0)) throw ConfigError("limit sampling: 'du' must be > 0");
    if (!(horizon > 0.0)) throw ConfigError("limit sampling: 't' must be > 0");
}

bool on_regenerative_set(const ModelSpec& m, double r, double du) {
    // With clock drift, a renewal inside a drift-only cell surfaces as a
    // remaining lifetime of at most gamma * du (plus accumulation rounding).
    // Without drift the regenerative set has measure zero and only an exact
    // zero would qualify.
    if (m.gamma > 0.0) return r <= m.gamma * du * (1.0 + 1e-9);
    return r == 0.0;
}

void snap_to_regenerative_set(JointSample& js) {
    // When the clock crosses t inside a drift stretch, the lagging and
    // leading pairs coincide: age and remaining lifetime are exactly zero
    // and both positions sit at the crossing point. The raw grid values
    // carry a residue of at most one cell, which we discard here.
    if (!js.on_M) return;
    js.a = 0.0;
    js.r = 0.0;
    js.y = js.x;
}

}  // namespace

StepPath levy_skeleton(const ModelSpec& m, double horizon, double du, Rng& rng,
                       long max_cells) {
    check_grid(m, horizon, du);
    StepPath p;
    p.d = m.d;
    p.horizon = horizon;
    NeumaierSum clock;
    NeumaierVec pos(m.d);
    std::vector<double> dpos(m.d), cur(m.d, 0.0);
    double dclock = 0.0;
    p.times.push_back(0.0);
    p.clocks.push_back(0.0);
    p.positions.insert(p.positions.end(), cur.begin(), cur.end());
    long k = 0;
    while (p.clocks.back() <= horizon) {
        if (k >= max_cells)
            throw ResourceError("levy_skeleton: cell budget (" +
                                std::to_string(max_cells) + ") exhausted at clock " +
                                std::to_string(p.clocks.back()));
        skeleton_increment(m, du, rng, dpos.data(), dclock);
        clock.add(dclock);
        pos.add(dpos.data());
        pos.value(cur.data());
        ++k;
        p.times.push_back(static_cast<double>(k) * du);
        p.clocks.push_back(clock.value());
        p.positions.insert(p.positions.end(), cur.begin(), cur.end());
    }
    return p;
}

JointSample joint_sample(const ModelSpec& m, double t, double du, Rng& rng,
                         long max_cells) {
    check_grid(m, t, du);
    JointSample js;
    js.t = t;
    js.du = du;
    js.x.assign(m.d, 0.0);
    js.y.assign(m.d, 0.0);

    NeumaierSum clock;
    NeumaierVec pos(m.d);
    std::vector<double> dpos(m.d);
    double dclock = 0.0;
    double prev_clock = 0.0;
    std::vector<double> prev_pos(m.d, 0.0);
    long k = 0;
    for (;;) {
        if (k >= max_cells)
            throw ResourceError("joint_sample: cell budget (" +
                                std::to_string(max_cells) + ") exhausted at clock " +
                                std::to_string(prev_clock));
        skeleton_increment(m, du, rng, dpos.data(), dclock);
        clock.add(dclock);
        pos.add(dpos.data());
        ++k;
        const double c = clock.value();
        if (c > t) {
            js.x = prev_pos;
            js.a = t - prev_clock;
            pos.value(js.y.data());
            js.r = c - t;
            break;
        }
        prev_clock = c;
        pos.value(prev_pos.data());
    }
    js.on_M = on_regenerative_set(m, js.r, du);
    snap_to_regenerative_set(js);
    return js;
}

JointSample joint_sample_reference(const ModelSpec& m, double t, double du, Rng& rng,
                                   long max_cells) {
    StepPath skel = levy_skeleton(m, t, du, rng, max_cells);
    const std::size_t j = psi_index(skel, t);
    const std::size_t i = j == 0 ? 0 : j - 1;
    JointSample js;
    js.t = t;
    js.du = du;
    js.x.assign(skel.position(i), skel.position(i) + m.d);
    js.y.assign(skel.position(j), skel.position(j) + m.d);
    js.a = t - skel.clocks[i];
    js.r = skel.clocks[j] - t;
    js.on_M = on_regenerative_set(m, js.r, du);
    snap_to_regenerative_set(js);
    return js;
}

std::vector<JointSample> batch_sample_serial(const ModelSpec& m, double t, double du,
                                             long reps, std::uint64_t master_seed,
                                             long offset) {
    std::vector<JointSample> out(reps);
    for (long k = 0; k < reps; ++k) {
        Rng rng(child_seed(master_seed, offset + k));
        out[k] = joint_sample(m, t, du, rng);
    }
    return out;
}

std::vector<JointSample> batch_sample(const ModelSpec& m, double t, double du,
                                      long reps, std::uint64_t master_seed,
                                      long offset) {
    std::vector<JointSample> out(reps);
#pragma omp parallel for schedule(dynamic, 64)
    for (long k = 0; k < reps; ++k) {
        Rng rng(child_seed(master_seed, offset + k));
        out[k] = joint_sample(m, t, du, rng);
    }
    return out;
}

}  // namespace ctrw
