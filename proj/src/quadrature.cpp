#include "ctrw/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "ctrw/errors.hpp"

namespace ctrw {

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol) {
    if (!(hi >= lo)) throw ConfigError("integrate: empty interval");
    if (hi == lo) return 0.0;
    boost::math::quadrature::tanh_sinh<double> quad;
    double err = 0.0, l1 = 0.0;
    double v;
    try {
        // tanh_sinh takes a relative tolerance target; convert loosely and
        // check the absolute estimate afterwards
        v = quad.integrate(f, lo, hi, 1e-12, &err, &l1);
    } catch (const std::exception& e) {
        throw NumericalError(std::string("integrate: ") + e.what());
    }
    if (!std::isfinite(v))
        throw NumericalError("integrate: non-finite result");
    if (err * l1 > abs_tol && err > 1e-10)
        throw NumericalError("integrate: accuracy target not reached (estimate " +
                             std::to_string(err * l1) + ")");
    return v;
}

}  // namespace ctrw
