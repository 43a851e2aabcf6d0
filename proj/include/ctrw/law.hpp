#pragma once

#include <vector>

#include "ctrw/laplace.hpp"
#include "ctrw/model.hpp"

namespace ctrw {

// Analytic limit laws at a fixed time t. All of these require a model whose
// clock characteristics are in closed form:
//   - age / joint densities: pure stable clock (gamma = 0), d = 1
//   - atom mass / tauberian ratio: any clock with gamma handled per kind
//
// Laws are densities of the defective (continuous) part; the atom of the
// remaining lifetime at zero is reported separately.

// Density of the limit jump measure in the wait coordinate at w > 0.
double wait_jump_density(const ModelSpec& m, double w);

// Density of the age at a in (0, t): renewal density at t-a times the wait
// tail at a. Integrates to 1 over (0, t) for a pure stable clock.
double age_density(const ModelSpec& m, double t, double a);

// Exact age CDF on [0, t] (regularized incomplete beta).
double age_cdf(const ModelSpec& m, double t, double a);

// Joint density of (age, remaining lifetime) at a in (0,t), r > 0:
// renewal density at t-a times the wait jump density at a+r.
double joint_ar_density(const ModelSpec& m, double t, double a, double r);

// Exact mean of the joint density over the cell [a0,a1] x [r0,r1]; the
// r-integral is done in closed form through the tail function, the a-integral
// numerically. Used to compare binned Monte Carlo output without edge bias.
double joint_ar_cell_average(const ModelSpec& m, double t, double a0, double a1,
                             double r0, double r1);

// Probability that the remaining lifetime at t is exactly zero:
// gamma * (renewal density at t). Exactly 1 for a pure-drift clock, 0 for a
// driftless one; Laplace inversion covers the drifted subordinator.
double atom_mass_R0(const ModelSpec& m, double t);

// gamma * U([0, eps]) / eps where U is the expected occupation measure of
// the clock: tends to 1 as eps -> 0 whenever gamma > 0.
double tauberian_ratio(const ModelSpec& m, double eps);

// Regular grid of density values (cell centers) plus bookkeeping.
// 1D grids leave r_edges empty; values are indexed [ia * nr + ir].
struct DensityGrid {
    std::vector<double> a_edges;
    std::vector<double> r_edges;
    std::vector<double> values;
    double total_mass = 0.0;     // analytic mass inside the grid window
    double atom_at_zero = 0.0;   // P(R_t = 0), lives outside the grid
    double truncated_mass = 0.0; // continuous mass beyond the r window (2D only)

    std::size_t na() const { return a_edges.empty() ? 0 : a_edges.size() - 1; }
    std::size_t nr() const { return r_edges.empty() ? 0 : r_edges.size() - 1; }
};

DensityGrid age_grid(const ModelSpec& m, double t, std::size_t bins);

DensityGrid joint_ar_grid(const ModelSpec& m, double t, double a_hi, double r_hi,
                          std::size_t na, std::size_t nr);

}  // namespace ctrw
