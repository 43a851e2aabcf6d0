#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "ctrw/ctrw.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/stats.hpp"
#include "ctrw/summation.hpp"
#include "test_util.hpp"

using namespace ctrw;

TEST_CASE("renewal count boundaries") {
    const std::vector<double> w = {0.5, 1.0, 0.25};
    CHECK(renewal_count(w, 0.4) == 0);   // before the first renewal
    CHECK(renewal_count(w, 0.5) == 1);   // landing exactly on t counts
    CHECK(renewal_count(w, 1.5) == 2);
    CHECK(renewal_count(w, 1.74) == 2);
    CHECK_THROWS_AS(renewal_count(w, 2.0), HorizonError);
}

TEST_CASE("renewal count against a linear scan") {
    Rng rng(606);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> w(1 + static_cast<int>(rng.uniform() * 40));
        for (double& x : w) x = 0.01 + rng.uniform();
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        const double t = rng.uniform() * total * 0.95;
        long expect = 0;
        NeumaierSum s;
        for (double x : w) {
            s.add(x);
            if (s.value() <= t)
                ++expect;
            else
                break;
        }
        CHECK(renewal_count(w, t) == expect);
    }
}

TEST_CASE("row sum floor arithmetic with injected steps") {
    ModelSpec m = uncoupled_gaussian(0.5);
    CTRWRealization real =
        realization_from_steps(m, 2, 1.0, {1.0, 1.0}, {0.3, 0.9});
    const StepPath& p = real.row_sum;
    REQUIRE(p.segments() == 3);
    CHECK(p.times[1] == 0.5);
    CHECK(p.clocks[segment_index(p, 0.49)] == 0.0);  // floor(2*0.49) = 0 steps
    CHECK(p.clocks[segment_index(p, 0.5)] == 0.3);
    CHECK(p.position(segment_index(p, 0.5))[0] == 1.0);
    CHECK(p.clocks[segment_index(p, 1.0)] == doctest::Approx(1.2));
}

TEST_CASE("row sum equals the componentwise step total at the end") {
    Rng rng(88);
    for (const ModelSpec& m : {uncoupled_gaussian(0.5), levy_walk(0.7)}) {
        CTRWRealization real = build_row_sum(m, 17, 1.0, rng);
        const StepPath& p = real.row_sum;
        // same accumulation order as the builder: bitwise agreement required
        NeumaierSum clock;
        NeumaierSum pos;
        for (long k = 0; k < real.steps(); ++k) {
            clock.add(real.waits[k]);
            pos.add(real.jumps[k]);
        }
        CHECK(p.clocks.back() == clock.value());
        CHECK(p.position(p.segments() - 1)[0] == pos.value());
        // independent naive total as an order-of-magnitude guard
        const double naive = std::accumulate(real.waits.begin(), real.waits.end(), 0.0);
        CHECK(p.clocks.back() == doctest::Approx(naive).epsilon(1e-12));
        CHECK(p.clocks.back() > 1.0);  // generation ran past the horizon
    }
}

TEST_CASE("state before the first renewal") {
    ModelSpec m = uncoupled_gaussian(0.5);
    CTRWRealization real =
        realization_from_steps(m, 1, 1.0, {2.5}, {1.25});
    const CtrwState st = ctrw_state(real, 0.7);
    CHECK(st.x[0] == 0.0);
    CHECK(st.g == 0.0);
    CHECK(st.y[0] == 2.5);
    CHECK(st.dclock == 1.25);
}

TEST_CASE("fully coupled walk: position equals clock on both sides") {
    Rng rng(15);
    ModelSpec m = levy_walk(0.7);
    CTRWRealization real = build_row_sum(m, 40, 1.0, rng);
    for (int i = 0; i < 200; ++i) {
        const double t = rng.uniform();
        const CtrwState st = ctrw_state(real, t);
        CHECK(st.x[0] == st.g);
        CHECK(st.y[0] == st.dclock);
    }
}

TEST_CASE("scaled steps keep the coupling and the n=1 law") {
    ModelSpec lw = levy_walk(0.5);
    Rng r1(9);
    for (int i = 0; i < 500; ++i) {
        StepSample a = scaled_step(lw, 37, r1);
        CHECK(a.jump[0] == a.wait);  // common scale factor preserves J = W
        CHECK(a.wait > 0.0);
    }
    // n = 1 has unit scale factors: identical to the raw sampler, bitwise
    Rng r2(9), r3(9);
    for (int i = 0; i < 500; ++i) {
        StepSample b = scaled_step(lw, 1, r2);
        StepSample c = sample_pair(lw, r3);
        CHECK(b.wait == c.wait);
        CHECK(b.jump == c.jump);
    }
}

TEST_CASE("scaled pareto waits match inverse-cdf resampling") {
    // Wn = (Gamma(1-beta) n)^{-1/beta} W with W = U^{-1/beta}
    ModelSpec m = uncoupled_gaussian(0.5);
    const long n = 10000;
    const long reps = 100000;
    Rng re(71);
    std::vector<double> engine(reps);
    for (long i = 0; i < reps; ++i) engine[i] = scaled_step(m, n, re).wait;
    Rng ro(72);
    const double factor = std::pow(std::tgamma(0.5) * n, -2.0);
    std::vector<double> oracle(reps);
    for (long i = 0; i < reps; ++i)
        oracle[i] = factor * std::pow(ro.uniform_pos(), -2.0);
    const auto a = LawEstimate::from_samples(std::move(engine));
    const auto b = LawEstimate::from_samples(std::move(oracle));
    CHECK(ks_distance(a, b) < 0.01);
}

TEST_CASE("direct state equals the path time changes bitwise") {
    Rng rng(3001);
    const ModelSpec models[] = {uncoupled_gaussian(0.5), levy_walk(0.7),
                                gaussian_coupled(0.4)};
    for (int rep = 0; rep < 50; ++rep) {
        const ModelSpec& m = models[rep % 3];
        const long n = 1 + static_cast<long>(rng.uniform() * 99);
        CTRWRealization real = build_row_sum(m, n, 1.0, rng);
        const StepPath lag = apply_Phi(real.row_sum);
        const StepPath lead = apply_Psi(real.row_sum);
        for (int q = 0; q < 100; ++q) {
            const double t = rng.uniform();
            const CtrwState st = ctrw_state(real, t);
            const std::size_t il = segment_index(lag, t);
            const std::size_t ir = segment_index(lead, t);
            CHECK(lag.clocks[il] == st.g);
            CHECK(lag.position(il)[0] == st.x[0]);
            CHECK(lead.clocks[ir] == st.dclock);
            CHECK(lead.position(ir)[0] == st.y[0]);
        }
    }
}

TEST_CASE("renewal times are monotone and bracket t") {
    Rng rng(512);
    ModelSpec m = uncoupled_gaussian(0.4);
    CTRWRealization real = build_row_sum(m, 25, 1.0, rng);
    std::vector<double> ts(100);
    for (double& t : ts) t = rng.uniform();
    std::sort(ts.begin(), ts.end());
    double prev_g = -1.0, prev_d = -1.0;
    for (double t : ts) {
        const CtrwState st = ctrw_state(real, t);
        CHECK(st.g <= t);
        CHECK(st.dclock > t);
        CHECK(st.g >= prev_g);
        CHECK(st.dclock >= prev_d);
        prev_g = st.g;
        prev_d = st.dclock;
        // the gap between the two renewal times is the in-flight wait
        const long count = renewal_count(real.waits, t);
        CHECK(st.dclock - st.g ==
              doctest::Approx(real.waits[count]).epsilon(1e-9));
    }
}

TEST_CASE("batched states are deterministic and schedule independent") {
    ModelSpec m = uncoupled_gaussian(0.5);
    const auto a = ctrw_batch(m, 30, 1.0, 40, 2222);
    const auto b = ctrw_batch(m, 30, 1.0, 40, 2222);
    const auto s = ctrw_batch_serial(m, 30, 1.0, 40, 2222);
    REQUIRE(a.size() == 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].x == s[i].x);
        CHECK(a[i].g == s[i].g);
        CHECK(a[i].y == s[i].y);
        CHECK(a[i].dclock == s[i].dclock);
    }
    // disjoint replica ranges merge into the full run
    const auto head = ctrw_batch(m, 30, 1.0, 25, 2222, 0);
    const auto tail = ctrw_batch(m, 30, 1.0, 15, 2222, 25);
    for (std::size_t i = 0; i < 25; ++i) CHECK(head[i].x == a[i].x);
    for (std::size_t i = 0; i < 15; ++i) CHECK(tail[i].x == a[25 + i].x);
}

TEST_CASE("step budget failure is a resource error") {
    ModelSpec m = uncoupled_gaussian(0.5);
    Rng rng(1);
    CHECK_THROWS_AS(build_row_sum(m, 1000, 1.0, rng, 50), ResourceError);
}
