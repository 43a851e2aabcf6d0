#pragma once

#include <functional>

namespace ctrw {

// Adaptive integration on a finite interval, tolerant of integrable endpoint
// singularities (the limit laws blow up like a^-beta at the edges).
// Absolute tolerance; throws NumericalError if the integrand misbehaves.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-8);

}  // namespace ctrw
