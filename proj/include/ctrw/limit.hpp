#pragma once

#include <cstdint>
#include <vector>

#include "ctrw/model.hpp"
#include "ctrw/path.hpp"
#include "ctrw/rng.hpp"

namespace ctrw {

// One draw of the limit tuple at time t:
//   x lagging position, a age (time since the last regeneration),
//   y leading position, r remaining lifetime (time to the next one),
//   on_M whether t was flagged as lying on the regenerative set.
struct JointSample {
    std::vector<double> x;
    std::vector<double> y;
    double a = 0.0;
    double r = 0.0;
    bool on_M = false;
    double t = 0.0;
    double du = 0.0;
};

// Age tolerance of a grid sample: one cell of operational time advances the
// clock by at most du * (drift + one jump), so ages resolve to du * (1 + gamma).
inline double age_tolerance(const ModelSpec& m, double du) {
    return du * (1.0 + m.gamma);
}

// One exact increment of the limit pair (B, S) over a grid cell of width du.
// The clock part is drawn first; coupled positions are drawn conditionally
// on it. dpos must hold d doubles.
void skeleton_increment(const ModelSpec& m, double du, Rng& rng, double* dpos,
                        double& dclock);

inline constexpr long kDefaultCellBudget = 100'000'000;

// Step-path skeleton of the limit pair on the grid {k du}: segment k carries
// the compensated running sums of the first k cell increments. Cells are
// drawn until the clock strictly exceeds `horizon`.
StepPath levy_skeleton(const ModelSpec& m, double horizon, double du, Rng& rng,
                       long max_cells = kDefaultCellBudget);

// Streaming kernel: the lagging/leading values at t without materializing
// the skeleton. Consumes the same draws in the same order as levy_skeleton,
// so it agrees bitwise with joint_sample_reference under an equal seed.
JointSample joint_sample(const ModelSpec& m, double t, double du, Rng& rng,
                         long max_cells = kDefaultCellBudget);

// Reference route: materialize the skeleton, then apply the two time changes.
JointSample joint_sample_reference(const ModelSpec& m, double t, double du, Rng& rng,
                                   long max_cells = kDefaultCellBudget);

// Independent replicas with counter-derived child seeds; results depend only
// on (master_seed, offset + k), never on scheduling. The OpenMP version and
// the serial reference return bitwise-identical vectors.
std::vector<JointSample> batch_sample(const ModelSpec& m, double t, double du,
                                      long reps, std::uint64_t master_seed,
                                      long offset = 0);
std::vector<JointSample> batch_sample_serial(const ModelSpec& m, double t, double du,
                                             long reps, std::uint64_t master_seed,
                                             long offset = 0);

}  // namespace ctrw
