#pragma once

#include <cstdint>
#include <vector>

#include "ctrw/model.hpp"
#include "ctrw/path.hpp"
#include "ctrw/rng.hpp"

namespace ctrw {

// One row of the triangular array: jump and wait scaled for row n.
StepSample scaled_step(const ModelSpec& m, long n, Rng& rng);

// A realization of row n of the walk: the scaled steps and their running
// sums, packaged as a step path with jumps at operational times k/n.
// The clock of row_sum strictly exceeds `horizon`, so every renewal query
// at t <= horizon is answerable.
struct CTRWRealization {
    ModelSpec model;
    long n = 1;
    double horizon = 0.0;
    std::vector<double> jumps;  // K*d, scaled
    std::vector<double> waits;  // K, scaled, all > 0
    StepPath row_sum;           // K+1 segments, partial sums, horizon = horizon

    long steps() const { return static_cast<long>(waits.size()); }
};

inline constexpr long kDefaultStepBudget = 100'000'000;

// Draws scaled steps until the running wait total exceeds `horizon`.
CTRWRealization build_row_sum(const ModelSpec& m, long n, double horizon, Rng& rng,
                              long max_steps = kDefaultStepBudget);

// Same packaging from externally supplied scaled steps (tests, replays).
CTRWRealization realization_from_steps(const ModelSpec& m, long n, double horizon,
                                       std::vector<double> jumps,
                                       std::vector<double> waits);

// Number of completed renewals by time t: max{ k : W_1 + ... + W_k <= t }.
// The boundary is inclusive: a renewal landing exactly on t has happened.
// Throws HorizonError if the waits are exhausted before the total passes t.
long renewal_count(const std::vector<double>& waits, double t);

// Lagging and leading walk values at physical time t.
struct CtrwState {
    std::vector<double> x;  // lagging position, d entries
    double g = 0.0;         // time of the last completed renewal
    std::vector<double> y;  // leading position
    double dclock = 0.0;    // time of the next renewal (> t)
};

// Direct route: renewal scan plus fresh compensated partial sums. Must agree
// bitwise with the lagging/leading time changes applied to row_sum; the
// acceptance suite audits exactly that.
CtrwState ctrw_state(const CTRWRealization& real, double t);

// Independent replicas of the walk state, one per replica index. Child seeds
// derive from (master_seed, offset + k), so the output is a pure function of
// those regardless of scheduling; the parallel version uses OpenMP and the
// serial version is the reference the tests compare against.
std::vector<CtrwState> ctrw_batch(const ModelSpec& m, long n, double t, long reps,
                                  std::uint64_t master_seed, long offset = 0);
std::vector<CtrwState> ctrw_batch_serial(const ModelSpec& m, long n, double t,
                                         long reps, std::uint64_t master_seed,
                                         long offset = 0);

}  // namespace ctrw
