#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ctrw/rng.hpp"

namespace ctrw {

enum class ModelKind {
    UncoupledGaussian,    // Gaussian jumps, Pareto waits
    UncoupledStableJump,  // symmetric alpha-stable jumps, stable waits
    FullyCoupledLevyWalk, // jump = +/- wait, one-sided stable waits
    GaussianCoupled,      // jump | wait ~ Normal(0, wait)
    DriftedSubordinator,  // clock = gamma * drift + weighted stable part, no jumps
    PureDrift,            // deterministic clock, optional Gaussian jumps
};

enum class SignMode { Deterministic, Symmetric };

const char* kind_name(ModelKind k);
ModelKind kind_from_name(const std::string& name);

// One (jump, wait) pair at unit scale. jump has d components.
struct StepSample {
    std::vector<double> jump;
    double wait = 0.0;
};

// Per-step scaling of a triangular-array row: random parts scale by
// jump_factor / wait_factor, drift parts enter linearly at rate 1/n.
struct RowScaling {
    double jump_factor;   // multiplies (jump - b) per coordinate
    double wait_factor;   // multiplies (wait - gamma)
    double inv_n;         // multiplies the drift parts b and gamma
};

struct ModelSpec {
    ModelKind kind = ModelKind::UncoupledGaussian;
    double beta = 0.5;     // wait-tail index, in (0,1) for models that use it
    double alpha = 2.0;    // jump stability index, in (0,2]
    double gamma = 0.0;    // clock drift rate, >= 0
    double sigma2 = 1.0;   // Gaussian jump variance
    double w = 1.0;        // stable weight of a drifted clock, in [0,1]
    int d = 1;             // spatial dimension
    std::vector<double> b; // spatial drift, size d (empty = zero)
    SignMode sign_mode = SignMode::Deterministic;

    // Throws ConfigError naming the offending field.
    void validate() const;

    // (1/alpha_eff, 1/beta_eff): the exponents in the n^-x per-step factors.
    std::pair<double, double> scaling_exponents() const;

    RowScaling row_scaling(long n) const;

    bool has_clock_drift() const { return gamma > 0.0; }
    double drift_b(int i) const { return b.empty() ? 0.0 : b[i]; }

    std::string fingerprint() const;
};

ModelSpec model_from_json_text(const std::string& text);
ModelSpec model_from_json_file(const std::string& path);
std::string model_to_json_text(const ModelSpec& m);

// One-sided beta-stable increment with Laplace transform exp(-scale * s^beta),
// sampled by Kanter's rejection-free representation. scale = 0 returns 0.
double stable_subordinator_increment(double beta, double scale, Rng& rng);

// Standard symmetric alpha-stable variate, characteristic function exp(-|k|^alpha).
double symmetric_stable(double alpha, Rng& rng);

// One unit-scale (J, W) draw from the model. Coupled models draw the wait
// first and the jump conditionally on it.
StepSample sample_pair(const ModelSpec& m, Rng& rng);

// Tail of the limit jump measure in the time coordinate: mass of jumps with
// wait component > a. Infinite at a = 0 for the stable-clock models.
double tail_function(const ModelSpec& m, double a);

// Density of the expected occupation measure of the limit clock at s > 0.
// Closed form for the stable and pure-drift clocks; Laplace inversion of
// 1/psi(0,s) for the drifted subordinator.
double renewal_density(const ModelSpec& m, double s);

// Log-Fourier-Laplace exponent of the limit pair: E exp(i k.B_t - s S_t)
// = exp(-t psi(k, s)). k has d components, s >= 0.
std::complex<double> psi(const ModelSpec& m, const std::vector<double>& k, double s);

}  // namespace ctrw
