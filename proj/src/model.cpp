#include "ctrw/model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ctrw/errors.hpp"
#include "ctrw/laplace.hpp"

namespace ctrw {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::UncoupledGaussian: return "uncoupled-gaussian";
        case ModelKind::UncoupledStableJump: return "uncoupled-stable";
        case ModelKind::FullyCoupledLevyWalk: return "levy-walk";
        case ModelKind::GaussianCoupled: return "gaussian-coupled";
        case ModelKind::DriftedSubordinator: return "drifted-subordinator";
        case ModelKind::PureDrift: return "pure-drift";
    }
    return "?";
}

ModelKind kind_from_name(const std::string& name) {
    for (ModelKind k : {ModelKind::UncoupledGaussian, ModelKind::UncoupledStableJump,
                        ModelKind::FullyCoupledLevyWalk, ModelKind::GaussianCoupled,
                        ModelKind::DriftedSubordinator, ModelKind::PureDrift}) {
        if (name == kind_name(k)) return k;
    }
    throw ConfigError("model field 'kind': unknown value '" + name + "'");
}

void ModelSpec::validate() const {
    require(d >= 1, "model field 'd': must be >= 1");
    require(b.empty() || static_cast<int>(b.size()) == d,
            "model field 'b': size must equal d");
    const bool uses_beta = kind != ModelKind::PureDrift;
    if (uses_beta)
        require(beta > 0.0 && beta < 1.0, "model field 'beta': must lie in (0,1)");
    require(gamma >= 0.0, "model field 'gamma': must be >= 0");
    switch (kind) {
        case ModelKind::UncoupledGaussian:
            require(sigma2 >= 0.0, "model field 'sigma2': must be >= 0");
            break;
        case ModelKind::UncoupledStableJump:
            require(alpha > 0.0 && alpha <= 2.0,
                    "model field 'alpha': must lie in (0,2]");
            break;
        case ModelKind::FullyCoupledLevyWalk:
            require(d == 1, "model field 'd': levy-walk requires d = 1");
            break;
        case ModelKind::GaussianCoupled:
            break;
        case ModelKind::DriftedSubordinator:
            require(gamma > 0.0,
                    "model field 'gamma': drifted-subordinator requires gamma > 0");
            require(w >= 0.0 && w <= 1.0, "model field 'w': must lie in [0,1]");
            break;
        case ModelKind::PureDrift:
            require(gamma > 0.0, "model field 'gamma': pure-drift requires gamma > 0");
            require(sigma2 >= 0.0, "model field 'sigma2': must be >= 0");
            break;
    }
}

std::pair<double, double> ModelSpec::scaling_exponents() const {
    switch (kind) {
        case ModelKind::UncoupledGaussian: return {0.5, 1.0 / beta};
        case ModelKind::UncoupledStableJump: return {1.0 / alpha, 1.0 / beta};
        case ModelKind::FullyCoupledLevyWalk: return {1.0 / beta, 1.0 / beta};
        case ModelKind::GaussianCoupled: return {0.5 / beta, 1.0 / beta};
        case ModelKind::DriftedSubordinator: return {1.0, 1.0 / beta};
        case ModelKind::PureDrift: return {0.5, 1.0};
    }
    return {1.0, 1.0};
}

RowScaling ModelSpec::row_scaling(long n) const {
    auto [ea, eb] = scaling_exponents();
    RowScaling s;
    s.inv_n = 1.0 / static_cast<double>(n);
    s.jump_factor = std::pow(static_cast<double>(n), -ea);
    // Pareto waits need the slowly-varying norming constant Gamma(1-beta)
    // folded into the row scale so that the row sums converge to the
    // unit-normalized stable clock (Laplace exponent s^beta).
    if (kind == ModelKind::UncoupledGaussian)
        s.wait_factor = std::pow(std::tgamma(1.0 - beta) * static_cast<double>(n), -eb);
    else
        s.wait_factor = std::pow(static_cast<double>(n), -eb);
    return s;
}

std::string ModelSpec::fingerprint() const {
    std::ostringstream os;
    os << kind_name(kind) << "(";
    switch (kind) {
        case ModelKind::UncoupledGaussian:
            os << "beta=" << beta << ",sigma2=" << sigma2;
            break;
        case ModelKind::UncoupledStableJump:
            os << "alpha=" << alpha << ",beta=" << beta;
            break;
        case ModelKind::FullyCoupledLevyWalk:
            os << "beta=" << beta
               << (sign_mode == SignMode::Symmetric ? ",sym" : ",det");
            break;
        case ModelKind::GaussianCoupled:
            os << "beta=" << beta;
            break;
        case ModelKind::DriftedSubordinator:
            os << "gamma=" << gamma << ",beta=" << beta << ",w=" << w;
            break;
        case ModelKind::PureDrift:
            os << "gamma=" << gamma << ",sigma2=" << sigma2;
            break;
    }
    if (d != 1) os << ",d=" << d;
    os << ")";
    return os.str();
}

ModelSpec model_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("model JSON parse error: ") + e.what());
    }
    require(j.is_object(), "model JSON: top level must be an object");
    require(j.contains("kind"), "model field 'kind': missing");

    ModelSpec m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        try {
            if (key == "kind") m.kind = kind_from_name(it.value().get<std::string>());
            else if (key == "beta") m.beta = it.value().get<double>();
            else if (key == "alpha") m.alpha = it.value().get<double>();
            else if (key == "gamma") m.gamma = it.value().get<double>();
            else if (key == "sigma2") m.sigma2 = it.value().get<double>();
            else if (key == "w") m.w = it.value().get<double>();
            else if (key == "d") m.d = it.value().get<int>();
            else if (key == "b") m.b = it.value().get<std::vector<double>>();
            else if (key == "sign_mode") {
                std::string s = it.value().get<std::string>();
                if (s == "deterministic") m.sign_mode = SignMode::Deterministic;
                else if (s == "symmetric") m.sign_mode = SignMode::Symmetric;
                else throw ConfigError("model field 'sign_mode': unknown value '" + s + "'");
            } else {
                throw ConfigError("model field '" + key + "': unknown field");
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("model field '" + key + "': " + e.what());
        }
    }
    m.validate();
    return m;
}

ModelSpec model_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("model file '" + path + "': cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json_text(ss.str());
}

std::string model_to_json_text(const ModelSpec& m) {
    nlohmann::json j;
    j["kind"] = kind_name(m.kind);
    switch (m.kind) {
        case ModelKind::UncoupledGaussian:
            j["beta"] = m.beta;
            j["sigma2"] = m.sigma2;
            break;
        case ModelKind::UncoupledStableJump:
            j["alpha"] = m.alpha;
            j["beta"] = m.beta;
            break;
        case ModelKind::FullyCoupledLevyWalk:
            j["beta"] = m.beta;
            j["sign_mode"] =
                m.sign_mode == SignMode::Symmetric ? "symmetric" : "deterministic";
            break;
        case ModelKind::GaussianCoupled:
            j["beta"] = m.beta;
            break;
        case ModelKind::DriftedSubordinator:
            j["gamma"] = m.gamma;
            j["beta"] = m.beta;
            j["w"] = m.w;
            break;
        case ModelKind::PureDrift:
            j["gamma"] = m.gamma;
            j["sigma2"] = m.sigma2;
            break;
    }
    j["d"] = m.d;
    if (!m.b.empty()) j["b"] = m.b;
    return j.dump(2);
}

double stable_subordinator_increment(double beta, double scale, Rng& rng) {
    require(beta > 0.0 && beta < 1.0,
            "stable_subordinator_increment: 'beta' must lie in (0,1)");
    require(scale >= 0.0, "stable_subordinator_increment: 'scale' must be >= 0");
    if (scale == 0.0) return 0.0;
    const double u = rng.uniform_pos();  // angle first, then exponential
    const double e = rng.exponential();
    if (beta == 0.5) {
        // Kanter's map collapses to the inverse-Gamma(1/2) form at beta = 1/2.
        const double c = std::cos(0.5 * kPi * u);
        return scale * scale / (4.0 * e * c * c);
    }
    // Kanter: S = scale^(1/beta) * (A(pi U)/E)^((1-beta)/beta) with
    // A(x) = sin((1-beta)x) sin(beta x)^(beta/(1-beta)) / sin(x)^(1/(1-beta)),
    // computed in log space to keep the heavy tail finite.
    const double x = kPi * u;
    const double ca = (1.0 - beta) / beta;
    const double ls = ca * std::log(std::sin((1.0 - beta) * x))
                    + std::log(std::sin(beta * x))
                    - std::log(std::sin(x)) / beta
                    - ca * std::log(e);
    return std::pow(scale, 1.0 / beta) * std::exp(ls);
}

double symmetric_stable(double alpha, Rng& rng) {
    require(alpha > 0.0 && alpha <= 2.0, "symmetric_stable: 'alpha' must lie in (0,2]");
    const double v = kPi * (rng.uniform_pos() - 0.5);  // angle first
    const double e = rng.exponential();
    if (alpha == 1.0) return std::tan(v);  // standard Cauchy
    // Chambers-Mallows-Stuck, symmetric case
    const double t = std::sin(alpha * v) * std::pow(std::cos(v), -1.0 / alpha);
    return t * std::pow(std::cos((1.0 - alpha) * v) / e, (1.0 - alpha) / alpha);
}

StepSample sample_pair(const ModelSpec& m, Rng& rng) {
    StepSample s;
    s.jump.resize(m.d, 0.0);
    switch (m.kind) {
        case ModelKind::UncoupledGaussian: {
            s.wait = std::pow(rng.uniform_pos(), -1.0 / m.beta);  // Pareto, x_min = 1
            const double sd = std::sqrt(m.sigma2);
            for (int i = 0; i < m.d; ++i) s.jump[i] = m.drift_b(i) + sd * rng.normal();
            break;
        }
        case ModelKind::UncoupledStableJump: {
            s.wait = stable_subordinator_increment(m.beta, 1.0, rng);
            for (int i = 0; i < m.d; ++i)
                s.jump[i] = m.drift_b(i) + symmetric_stable(m.alpha, rng);
            break;
        }
        case ModelKind::FullyCoupledLevyWalk: {
            s.wait = stable_subordinator_increment(m.beta, 1.0, rng);
            double sign = 1.0;
            if (m.sign_mode == SignMode::Symmetric)
                sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            s.jump[0] = sign * s.wait;
            break;
        }
        case ModelKind::GaussianCoupled: {
            s.wait = stable_subordinator_increment(m.beta, 1.0, rng);
            const double sd = std::sqrt(s.wait);
            for (int i = 0; i < m.d; ++i) s.jump[i] = m.drift_b(i) + sd * rng.normal();
            break;
        }
        case ModelKind::DriftedSubordinator: {
            s.wait = m.gamma + stable_subordinator_increment(m.beta, m.w, rng);
            for (int i = 0; i < m.d; ++i) s.jump[i] = m.drift_b(i);
            break;
        }
        case ModelKind::PureDrift: {
            s.wait = m.gamma;
            const double sd = std::sqrt(m.sigma2);
            for (int i = 0; i < m.d; ++i) s.jump[i] = m.drift_b(i) + sd * rng.normal();
            break;
        }
    }
    return s;
}

double tail_function(const ModelSpec& m, double a) {
    require(a >= 0.0, "tail_function: 'a' must be >= 0");
    double weight;
    switch (m.kind) {
        case ModelKind::PureDrift:
            return 0.0;  // no clock jumps at all; gamma > 0 carries the clock
        case ModelKind::DriftedSubordinator:
            weight = m.w;
            break;
        default:
            weight = 1.0;
    }
    if (weight == 0.0) return 0.0;
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    return weight * std::pow(a, -m.beta) / std::tgamma(1.0 - m.beta);
}

double renewal_density(const ModelSpec& m, double s) {
    require(s > 0.0, "renewal_density: 's' must be > 0");
    switch (m.kind) {
        case ModelKind::PureDrift:
            return 1.0 / m.gamma;
        case ModelKind::DriftedSubordinator: {
            // no closed form: invert 1/psi(0, .) numerically
            const double g = m.gamma, w = m.w, beta = m.beta;
            auto transform = [g, w, beta](double p) {
                return 1.0 / (g * p + w * std::pow(p, beta));
            };
            return gaver_stehfest(transform, s);
        }
        default:
            return std::pow(s, m.beta - 1.0) / std::tgamma(m.beta);
    }
}

std::complex<double> psi(const ModelSpec& m, const std::vector<double>& k, double s) {
    require(static_cast<int>(k.size()) == m.d, "psi: 'k' must have d components");
    require(s >= 0.0, "psi: 's' must be >= 0");
    const std::complex<double> I(0.0, 1.0);
    std::complex<double> drift = 0.0;
    for (int i = 0; i < m.d; ++i) drift -= I * m.drift_b(i) * k[i];
    double k2 = 0.0;
    for (double ki : k) k2 += ki * ki;
    switch (m.kind) {
        case ModelKind::UncoupledGaussian:
            return drift + 0.5 * m.sigma2 * k2 + std::pow(s, m.beta);
        case ModelKind::UncoupledStableJump: {
            double jumps = 0.0;
            for (double ki : k) jumps += std::pow(std::abs(ki), m.alpha);
            return drift + jumps + std::pow(s, m.beta);
        }
        case ModelKind::FullyCoupledLevyWalk: {
            const std::complex<double> zm(s, -k[0]);
            if (m.sign_mode == SignMode::Deterministic)
                return std::pow(zm, m.beta);
            const std::complex<double> zp(s, k[0]);
            return 0.5 * (std::pow(zm, m.beta) + std::pow(zp, m.beta));
        }
        case ModelKind::GaussianCoupled:
            return drift + std::pow(s + 0.5 * k2, m.beta);
        case ModelKind::DriftedSubordinator:
            return drift + m.gamma * s + m.w * std::pow(s, m.beta);
        case ModelKind::PureDrift:
            return drift + m.gamma * s + 0.5 * m.sigma2 * k2;
    }
    return 0.0;
}

}  // namespace ctrw
