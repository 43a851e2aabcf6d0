#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace ctrw {

// Right-continuous piecewise-constant path on [0, infinity) with values
// (position in R^d, clock in R+). Segment i carries value
// (positions[i*d .. i*d+d), clocks[i]) on [times[i], times[i+1]), and the
// last segment extends beyond times.back().
//
// Invariants, checked by validate():
//   - times strictly increasing, times[0] == 0
//   - clocks non-decreasing
//   - adjacent (position, clock) values differ (all jumps are genuine)
//
// `horizon` is the guaranteed query bound. Inverse-clock queries (and the
// time-change operators built on them) additionally require
// clocks.back() > horizon, so that inf{ u : clock(u) > t } exists for every
// t <= horizon. That requirement deliberately does NOT hold for the outputs
// of the time changes (their clock component stays <= t by construction).
struct StepPath {
    int d = 1;
    double horizon = 0.0;
    std::vector<double> times;      // m+1 entries
    std::vector<double> clocks;     // m+1 entries
    std::vector<double> positions;  // (m+1)*d entries, row-major

    std::size_t segments() const { return times.size(); }
    const double* position(std::size_t i) const { return positions.data() + i * d; }

    void validate() const;  // throws ConfigError on a broken invariant
};

// Value of the path at time u (right-continuous version).
// Valid for 0 <= u <= max(times.back(), horizon).
std::size_t segment_index(const StepPath& p, double u);

// Left limit at u: the value just before u (equals the value at u for u = 0).
std::size_t segment_index_left(const StepPath& p, double u);

// inf{ u >= 0 : clock(u) > t }, the right-continuous generalized inverse of
// the clock component. Strict inequality: a clock that merely touches t has
// not yet passed it. Requires t <= horizon < clocks.back().
double generalized_inverse(const StepPath& p, double t);

// Index of the segment the inverse lands on: min{ i : clocks[i] > t }.
std::size_t inverse_index(const StepPath& p, double t);

// Lagging time change at a single time: the value of the segment preceding
// the inverse's segment (clamped at the first segment). For a walk whose
// clock is the running total of waits this selects the last completed step
// with clock <= t; a renewal exactly at t counts as already renewed.
std::size_t phi_index(const StepPath& p, double t);

// Leading time change at a single time: the value of the inverse's segment,
// i.e. the first step whose clock strictly exceeds t.
std::size_t psi_index(const StepPath& p, double t);

// Whole-path versions of the two time changes. The output is indexed by
// physical time: it jumps exactly at the distinct clock levels of the input
// that do not exceed the horizon, and inherits d and horizon.
StepPath apply_Phi(const StepPath& p);
StepPath apply_Psi(const StepPath& p);

// Debug/interchange dump: header u_time,clock,pos_1..pos_d; 17 significant
// digits so values round-trip bitwise.
void dump_csv(const StepPath& p, std::ostream& os);

}  // namespace ctrw
