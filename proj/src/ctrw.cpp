#include "ctrw/ctrw.hpp"

#include <cmath>
#include <string>

#include "ctrw/errors.hpp"
#include "ctrw/summation.hpp"

namespace ctrw {

StepSample scaled_step(const ModelSpec& m, long n, Rng& rng) {
    if (n < 1) throw ConfigError("scaled_step: 'n' must be >= 1");
    StepSample s = sample_pair(m, rng);
    const RowScaling sc = m.row_scaling(n);
    // drift parts advance at rate 1/n, random parts at the stable rates
    s.wait = m.gamma * sc.inv_n + sc.wait_factor * (s.wait - m.gamma);
    for (int i = 0; i < m.d; ++i) {
        const double bi = m.drift_b(i);
        s.jump[i] = bi * sc.inv_n + sc.jump_factor * (s.jump[i] - bi);
    }
    return s;
}

namespace {

CTRWRealization package(const ModelSpec& m, long n, double horizon,
                        std::vector<double> jumps, std::vector<double> waits) {
    CTRWRealization real;
    real.model = m;
    real.n = n;
    real.horizon = horizon;
    real.jumps = std::move(jumps);
    real.waits = std::move(waits);

    const long K = static_cast<long>(real.waits.size());
    StepPath& p = real.row_sum;
    p.d = m.d;
    p.horizon = horizon;
    p.times.reserve(K + 1);
    p.clocks.reserve(K + 1);
    p.positions.reserve((K + 1) * m.d);

    NeumaierSum clock;
    NeumaierVec pos(m.d);
    std::vector<double> cur(m.d, 0.0);
    p.times.push_back(0.0);
    p.clocks.push_back(0.0);
    p.positions.insert(p.positions.end(), cur.begin(), cur.end());
    for (long k = 0; k < K; ++k) {
        clock.add(real.waits[k]);
        pos.add(real.jumps.data() + k * m.d);
        pos.value(cur.data());
        p.times.push_back(static_cast<double>(k + 1) / static_cast<double>(n));
        p.clocks.push_back(clock.value());
        p.positions.insert(p.positions.end(), cur.begin(), cur.end());
    }
    return real;
}

}  // namespace

CTRWRealization build_row_sum(const ModelSpec& m, long n, double horizon, Rng& rng,
                              long max_steps) {
    m.validate();
    if (n < 1) throw ConfigError("build_row_sum: 'n' must be >= 1");
    if (!(horizon >= 0.0)) throw ConfigError("build_row_sum: 'horizon' must be >= 0");
    std::vector<double> jumps, waits;
    NeumaierSum clock;
    while (true) {
        if (static_cast<long>(waits.size()) >= max_steps)
            throw ResourceError("build_row_sum: step budget (" +
                                std::to_string(max_steps) + ") exhausted at clock " +
                                std::to_string(clock.value()));
        StepSample s = scaled_step(m, n, rng);
        waits.push_back(s.wait);
        jumps.insert(jumps.end(), s.jump.begin(), s.jump.end());
        clock.add(s.wait);
        if (clock.value() > horizon) break;
    }
    return package(m, n, horizon, std::move(jumps), std::move(waits));
}

CTRWRealization realization_from_steps(const ModelSpec& m, long n, double horizon,
                                       std::vector<double> jumps,
                                       std::vector<double> waits) {
    if (jumps.size() != waits.size() * static_cast<std::size_t>(m.d))
        throw ConfigError("realization_from_steps: jumps/waits sizes disagree");
    for (double w : waits)
        if (!(w > 0.0)) throw ConfigError("realization_from_steps: waits must be > 0");
    CTRWRealization real = package(m, n, horizon, std::move(jumps), std::move(waits));
    if (!(real.row_sum.clocks.back() > horizon))
        throw HorizonError("realization_from_steps: waits exhausted before horizon");
    return real;
}

long renewal_count(const std::vector<double>& waits, double t) {
    if (!(t >= 0.0)) throw ConfigError("renewal_count: 't' must be >= 0");
    NeumaierSum acc;
    long count = 0;
    for (double w : waits) {
        acc.add(w);
        if (acc.value() > t) return count;
        ++count;
    }
    throw HorizonError("renewal_count: waits exhausted at total " +
                       std::to_string(acc.value()) + " without passing t = " +
                       std::to_string(t));
}

CtrwState ctrw_state(const CTRWRealization& real, double t) {
    if (!(t >= 0.0) || t > real.horizon)
        throw HorizonError("ctrw_state: t = " + std::to_string(t) +
                           " is beyond the realization horizon");
    const long N = renewal_count(real.waits, t);
    const int d = real.model.d;
    CtrwState st;
    st.x.assign(d, 0.0);
    st.y.assign(d, 0.0);
    // fresh compensated sums over steps 1..N and 1..N+1; same accumulation
    // order as the stored row sums, hence bitwise-identical values
    NeumaierSum clock;
    NeumaierVec pos(d);
    for (long k = 0; k < N; ++k) {
        clock.add(real.waits[k]);
        pos.add(real.jumps.data() + k * d);
    }
    st.g = clock.value();
    pos.value(st.x.data());
    clock.add(real.waits[N]);
    pos.add(real.jumps.data() + N * d);
    st.dclock = clock.value();
    pos.value(st.y.data());
    return st;
}

namespace {

CtrwState one_replica(const ModelSpec& m, long n, double t, std::uint64_t seed) {
    Rng rng(seed);
    CTRWRealization real = build_row_sum(m, n, t, rng);
    return ctrw_state(real, t);
}

}  // namespace

std::vector<CtrwState> ctrw_batch_serial(const ModelSpec& m, long n, double t,
                                         long reps, std::uint64_t master_seed,
                                         long offset) {
    std::vector<CtrwState> out(reps);
    for (long k = 0; k < reps; ++k)
        out[k] = one_replica(m, n, t, child_seed(master_seed, offset + k));
    return out;
}

std::vector<CtrwState> ctrw_batch(const ModelSpec& m, long n, double t, long reps,
                                  std::uint64_t master_seed, long offset) {
    std::vector<CtrwState> out(reps);
#pragma omp parallel for schedule(dynamic, 64)
    for (long k = 0; k < reps; ++k)
        out[k] = one_replica(m, n, t, child_seed(master_seed, offset + k));
    return out;
}

}  // namespace ctrw
