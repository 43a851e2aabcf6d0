#pragma once

#include <functional>

namespace ctrw {

struct InversionResult {
    double value = 0.0;  // inverse transform at t, from the best order pair
    double delta = 0.0;  // |f_N - f_{N'}| between the two closest orders
    int order = 0;       // number of transform evaluations used for `value`
};

// Gaver-Stehfest inversion of a real Laplace transform at t > 0. Runs a
// ladder of even orders and keeps the pair that agrees best; `delta` is the
// convergence diagnostic. Suitable for smooth (completely monotone-ish)
// transforms, which is all the clock potentials used here.
InversionResult laplace_invert_diag(const std::function<double(double)>& transform,
                                    double t);

// Convenience wrapper: returns the value, throws NumericalError if the
// diagnostic shows the ladder never settled (oscillation / non-finite input).
double gaver_stehfest(const std::function<double(double)>& transform, double t);

}  // namespace ctrw
