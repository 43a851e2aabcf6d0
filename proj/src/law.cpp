#include "ctrw/law.hpp"

#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "ctrw/errors.hpp"
#include "ctrw/quadrature.hpp"
#include "ctrw/summation.hpp"

namespace ctrw {

namespace {

void require_stable_clock(const ModelSpec& m, const char* what) {
    switch (m.kind) {
        case ModelKind::UncoupledGaussian:
        case ModelKind::UncoupledStableJump:
        case ModelKind::FullyCoupledLevyWalk:
        case ModelKind::GaussianCoupled:
            break;
        default:
            throw ConfigError(std::string(what) +
                              ": closed form requires a pure stable clock (gamma = 0)");
    }
    if (m.d != 1)
        throw ConfigError(std::string(what) + ": analytic laws require d = 1");
}

std::function<double(double)> clock_potential_transform(const ModelSpec& m) {
    const double g = m.gamma, w = m.w, beta = m.beta;
    switch (m.kind) {
        case ModelKind::PureDrift:
            return [g](double s) { return 1.0 / (g * s); };
        case ModelKind::DriftedSubordinator:
            return [g, w, beta](double s) { return 1.0 / (g * s + w * std::pow(s, beta)); };
        default:
            return [beta](double s) { return 1.0 / std::pow(s, beta); };
    }
}

}  // namespace

double wait_jump_density(const ModelSpec& m, double w) {
    if (!(w > 0.0)) throw ConfigError("wait_jump_density: 'w' must be > 0");
    double weight = 1.0;
    if (m.kind == ModelKind::PureDrift) return 0.0;
    if (m.kind == ModelKind::DriftedSubordinator) weight = m.w;
    return weight * m.beta * std::pow(w, -1.0 - m.beta) / std::tgamma(1.0 - m.beta);
}

double age_density(const ModelSpec& m, double t, double a) {
    require_stable_clock(m, "age_density");
    if (!(t > 0.0)) throw ConfigError("age_density: 't' must be > 0");
    if (!(a > 0.0 && a < t)) return 0.0;  // the age lives on (0,t)
    return renewal_density(m, t - a) * tail_function(m, a);
}

double age_cdf(const ModelSpec& m, double t, double a) {
    require_stable_clock(m, "age_cdf");
    if (!(t > 0.0)) throw ConfigError("age_cdf: 't' must be > 0");
    if (a <= 0.0) return 0.0;
    if (a >= t) return 1.0;
    return boost::math::ibeta(1.0 - m.beta, m.beta, a / t);
}

double joint_ar_density(const ModelSpec& m, double t, double a, double r) {
    if (m.kind == ModelKind::PureDrift) return 0.0;  // all mass sits in the atom
    require_stable_clock(m, "joint_ar_density");
    if (!(t > 0.0)) throw ConfigError("joint_ar_density: 't' must be > 0");
    if (!(a > 0.0 && a < t) || !(r > 0.0)) return 0.0;
    return renewal_density(m, t - a) * wait_jump_density(m, a + r);
}

double joint_ar_cell_average(const ModelSpec& m, double t, double a0, double a1,
                             double r0, double r1) {
    require_stable_clock(m, "joint_ar_cell_average");
    if (!(0.0 <= a0 && a0 < a1 && a1 <= t))
        throw ConfigError("joint_ar_cell_average: need 0 <= a0 < a1 <= t");
    if (!(0.0 <= r0 && r0 < r1))
        throw ConfigError("joint_ar_cell_average: need 0 <= r0 < r1");
    // integrate the wait jump density over [a+r0, a+r1] in closed form via
    // the tail function, then the age variable numerically
    auto integrand = [&m, t, r0, r1](double a) {
        return renewal_density(m, t - a) *
               (tail_function(m, a + r0) - tail_function(m, a + r1));
    };
    const double mass = integrate(integrand, a0, a1);
    return mass / ((a1 - a0) * (r1 - r0));
}

double atom_mass_R0(const ModelSpec& m, double t) {
    if (!(t > 0.0)) throw ConfigError("atom_mass_R0: 't' must be > 0");
    switch (m.kind) {
        case ModelKind::PureDrift:
            return 1.0;
        case ModelKind::DriftedSubordinator:
            return m.gamma * renewal_density(m, t);
        default:
            return 0.0;  // driftless clock: the regenerative set is null at fixed t
    }
}

double tauberian_ratio(const ModelSpec& m, double eps) {
    if (!(eps > 0.0)) throw ConfigError("tauberian_ratio: 'eps' must be > 0");
    if (!(m.gamma > 0.0))
        throw ConfigError("tauberian_ratio: requires a clock with gamma > 0");
    auto transform = clock_potential_transform(m);
    // cumulative occupation mass U([0, eps]) has transform 1/(s psi(0,s))
    auto cumulative = [&transform](double s) { return transform(s) / s; };
    const double mass = gaver_stehfest(cumulative, eps);
    return m.gamma * mass / eps;
}

DensityGrid age_grid(const ModelSpec& m, double t, std::size_t bins) {
    require_stable_clock(m, "age_grid");
    if (bins < 1) throw ConfigError("age_grid: 'bins' must be >= 1");
    DensityGrid g;
    g.a_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i)
        g.a_edges[i] = t * static_cast<double>(i) / static_cast<double>(bins);
    g.values.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        g.values[i] = age_density(m, t, 0.5 * (g.a_edges[i] + g.a_edges[i + 1]));
    g.total_mass = 1.0;  // exact: the age law is proper for a stable clock
    g.atom_at_zero = atom_mass_R0(m, t);
    return g;
}

DensityGrid joint_ar_grid(const ModelSpec& m, double t, double a_hi, double r_hi,
                          std::size_t na, std::size_t nr) {
    require_stable_clock(m, "joint_ar_grid");
    if (!(a_hi > 0.0 && a_hi <= t))
        throw ConfigError("joint_ar_grid: 'a_hi' must lie in (0, t]");
    if (!(r_hi > 0.0)) throw ConfigError("joint_ar_grid: 'r_hi' must be > 0");
    if (na < 1 || nr < 1) throw ConfigError("joint_ar_grid: bins must be >= 1");
    DensityGrid g;
    g.a_edges.resize(na + 1);
    g.r_edges.resize(nr + 1);
    for (std::size_t i = 0; i <= na; ++i)
        g.a_edges[i] = a_hi * static_cast<double>(i) / static_cast<double>(na);
    for (std::size_t j = 0; j <= nr; ++j)
        g.r_edges[j] = r_hi * static_cast<double>(j) / static_cast<double>(nr);
    g.values.resize(na * nr);
    for (std::size_t i = 0; i < na; ++i) {
        const double ac = 0.5 * (g.a_edges[i] + g.a_edges[i + 1]);
        for (std::size_t j = 0; j < nr; ++j) {
            const double rc = 0.5 * (g.r_edges[j] + g.r_edges[j + 1]);
            g.values[i * nr + j] = joint_ar_density(m, t, ac, rc);
        }
    }
    // mass inside the window: r-direction in closed form, a-direction by
    // quadrature; the complement in r is the reported truncation
    auto inside = [&m, t, r_hi](double a) {
        return renewal_density(m, t - a) *
               (tail_function(m, a) - tail_function(m, a + r_hi));
    };
    auto beyond = [&m, t, r_hi](double a) {
        return renewal_density(m, t - a) * tail_function(m, a + r_hi);
    };
    g.total_mass = integrate(inside, 0.0, a_hi);
    g.truncated_mass = integrate(beyond, 0.0, a_hi);
    g.atom_at_zero = atom_mass_R0(m, t);
    return g;
}

}  // namespace ctrw
