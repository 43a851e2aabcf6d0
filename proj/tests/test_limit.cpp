#include <cmath>
#include <vector>

#include <doctest.h>

#include "ctrw/errors.hpp"
#include "ctrw/limit.hpp"
#include "ctrw/path.hpp"
#include "ctrw/stats.hpp"
#include "test_util.hpp"

using namespace ctrw;

TEST_CASE("pure drift skeleton advances the clock exactly") {
    // 1.5 * k * 0.125 is a dyadic rational: exact float arithmetic
    ModelSpec m = pure_drift(1.5);
    Rng rng(40);
    StepPath p = levy_skeleton(m, 1.0, 0.125, rng);
    for (std::size_t k = 0; k < p.segments(); ++k) {
        CHECK(p.times[k] == k * 0.125);
        CHECK(p.clocks[k] == 1.5 * (k * 0.125));
    }
    CHECK(p.clocks.back() > 1.0);
}

TEST_CASE("skeleton clock increments match the stable transform") {
    ModelSpec m = levy_walk(0.5);
    Rng rng(41);
    const double du = 0.01;
    double acc = 0.0;
    const long reps = 200000;
    std::vector<double> dpos(1);
    for (long i = 0; i < reps; ++i) {
        double dclock = 0.0;
        skeleton_increment(m, du, rng, dpos.data(), dclock);
        CHECK(dclock > 0.0);
        acc += std::exp(-dclock);
    }
    // E[e^{-S_du}] = e^{-du * 1^{1/2}}
    CHECK(acc / reps == doctest::Approx(std::exp(-du)).epsilon(0.005));
}

TEST_CASE("coupled skeleton carries position equal to clock") {
    ModelSpec m = levy_walk(0.7);
    Rng rng(42);
    StepPath p = levy_skeleton(m, 1.0, 0.01, rng);
    for (std::size_t k = 0; k < p.segments(); ++k)
        CHECK(p.position(k)[0] == p.clocks[k]);
}

TEST_CASE("pure drift with brownian marginal: renewal is exact, x is gaussian") {
    // gamma=2, du = 2^-9: the clock hits t = 1 exactly at cell 256
    ModelSpec m = pure_drift(2.0, 1.0);
    const double du = 0x1p-9;
    std::vector<double> xs(10000);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        Rng rng(child_seed(777, k));
        const JointSample js = joint_sample(m, 1.0, du, rng);
        CHECK(js.a == 0.0);
        CHECK(js.r == 0.0);
        CHECK(js.on_M);
        // crossing inside a drift stretch: the pair collapses to one point
        CHECK(js.y == js.x);
        xs[k] = js.x[0];
    }
    // X = B_{L_t} with L_t = t / gamma deterministic: Normal(0, t/gamma)
    const double sd = std::sqrt(0.5);
    auto cdf = [sd](double x) { return 0.5 * std::erfc(-x / (sd * std::sqrt(2.0))); };
    CHECK(ks_distance(LawEstimate::from_samples(std::move(xs)), cdf) < 0.02);
}

TEST_CASE("coupled limit pins positions to the renewal times") {
    ModelSpec m = levy_walk(0.6);
    for (long k = 0; k < 300; ++k) {
        Rng rng(child_seed(4242, k));
        const JointSample js = joint_sample(m, 1.0, 1e-3, rng);
        CHECK(js.x[0] <= 1.0);
        CHECK(js.y[0] > 1.0);
        CHECK(js.x[0] == doctest::Approx(1.0 - js.a).epsilon(1e-12));
        CHECK(js.y[0] == doctest::Approx(1.0 + js.r).epsilon(1e-12));
    }
}

TEST_CASE("streaming sampler equals the skeleton route bitwise") {
    const ModelSpec models[] = {uncoupled_gaussian(0.5), levy_walk(0.7),
                                gaussian_coupled(0.4),   uncoupled_stable(1.5, 0.6),
                                drifted(1.0, 0.5, 1.0),  pure_drift(2.0)};
    for (long k = 0; k < 200; ++k) {
        const ModelSpec& m = models[k % 6];
        Rng r1(child_seed(31337, k));
        Rng r2(child_seed(31337, k));
        const JointSample a = joint_sample(m, 1.0, 5e-3, r1);
        const JointSample b = joint_sample_reference(m, 1.0, 5e-3, r2);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(a.a == b.a);
        CHECK(a.r == b.r);
        CHECK(a.on_M == b.on_M);
    }
}

TEST_CASE("jump identity at the crossing") {
    // (y - x, d - g) is exactly the skeleton jump straddling t
    ModelSpec m = levy_walk(0.5);
    for (long k = 0; k < 100; ++k) {
        Rng r1(child_seed(902, k));
        Rng r2(child_seed(902, k));
        const JointSample js = joint_sample(m, 1.0, 2e-3, r1);
        const StepPath skel = levy_skeleton(m, 1.0, 2e-3, r2);
        const std::size_t j = inverse_index(skel, 1.0);
        REQUIRE(j > 0);
        CHECK(js.y[0] - js.x[0] == skel.position(j)[0] - skel.position(j - 1)[0]);
        const double dg = (1.0 + js.r) - (1.0 - js.a);
        CHECK(dg == doctest::Approx(skel.clocks[j] - skel.clocks[j - 1])
                        .epsilon(1e-12));
    }
}

TEST_CASE("sample invariants across models") {
    const ModelSpec models[] = {uncoupled_gaussian(0.5), levy_walk(0.3),
                                drifted(0.5, 0.5, 1.0), gaussian_coupled(0.7)};
    for (long k = 0; k < 2000; ++k) {
        const ModelSpec& m = models[k % 4];
        Rng rng(child_seed(11, k));
        const JointSample js = joint_sample(m, 2.0, 2e-3, rng);
        CHECK(js.a >= 0.0);
        CHECK(js.a <= 2.0);
        CHECK(js.r >= 0.0);
        if (js.on_M) {
            CHECK(js.a == 0.0);
            CHECK(js.r == 0.0);
            CHECK(js.x == js.y);
            CHECK(js.a <= age_tolerance(m, 2e-3));
        }
    }
}

TEST_CASE("driftless clocks never flag the regenerative set") {
    ModelSpec m = levy_walk(0.5);
    for (long k = 0; k < 2000; ++k) {
        Rng rng(child_seed(5005, k));
        CHECK_FALSE(joint_sample(m, 1.0, 1e-3, rng).on_M);
    }
}

TEST_CASE("batch sampling is deterministic, mergeable and parallel safe") {
    ModelSpec m = uncoupled_gaussian(0.5);
    const auto a = batch_sample(m, 1.0, 2e-3, 60, 9090);
    const auto b = batch_sample(m, 1.0, 2e-3, 60, 9090);
    const auto s = batch_sample_serial(m, 1.0, 2e-3, 60, 9090);
    REQUIRE(a.size() == 60);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].x == s[i].x);
        CHECK(a[i].a == s[i].a);
        CHECK(a[i].y == s[i].y);
        CHECK(a[i].r == s[i].r);
        CHECK(a[i].on_M == s[i].on_M);
    }
    Rng single(child_seed(9090, 0));
    const JointSample first = joint_sample(m, 1.0, 2e-3, single);
    CHECK(first.x == a[0].x);
    CHECK(first.a == a[0].a);
    const auto head = batch_sample(m, 1.0, 2e-3, 40, 9090, 0);
    const auto tail = batch_sample(m, 1.0, 2e-3, 20, 9090, 40);
    for (std::size_t i = 0; i < 20; ++i) CHECK(tail[i].a == a[40 + i].a);
    for (std::size_t i = 0; i < 40; ++i) CHECK(head[i].a == a[i].a);
}

TEST_CASE("halving the grid step stays inside the noise floor") {
    ModelSpec m = levy_walk(0.5);
    std::vector<double> coarse_x, fine_x, coarse_a, fine_a;
    for (long k = 0; k < 8000; ++k) {
        Rng r1(child_seed(606060, k));
        const JointSample c = joint_sample(m, 1.0, 2e-3, r1);
        coarse_x.push_back(c.x[0]);
        coarse_a.push_back(c.a);
        Rng r2(child_seed(717171, k));
        const JointSample f = joint_sample(m, 1.0, 1e-3, r2);
        fine_x.push_back(f.x[0]);
        fine_a.push_back(f.a);
    }
    const auto cx = LawEstimate::from_samples(std::move(coarse_x));
    const auto fx = LawEstimate::from_samples(std::move(fine_x));
    const auto ca = LawEstimate::from_samples(std::move(coarse_a));
    const auto fa = LawEstimate::from_samples(std::move(fine_a));
    CHECK(ks_distance(cx, fx) < 0.03);
    CHECK(ks_distance(ca, fa) < 0.03);
}

TEST_CASE("cell budget failure is a resource error") {
    ModelSpec m = pure_drift(1.0, 0.0);
    Rng rng(2);
    CHECK_THROWS_AS(levy_skeleton(m, 10.0, 1e-3, rng, 100), ResourceError);
    Rng rng2(2);
    CHECK_THROWS_AS(joint_sample(m, 10.0, 1e-3, rng2, 100), ResourceError);
}
