#include "ctrw/path.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "ctrw/errors.hpp"

namespace ctrw {

void StepPath::validate() const {
    if (d < 1) throw ConfigError("StepPath: d must be >= 1");
    if (times.empty()) throw ConfigError("StepPath: empty path");
    if (times.size() != clocks.size() || positions.size() != times.size() * static_cast<std::size_t>(d))
        throw ConfigError("StepPath: times/clocks/positions sizes disagree");
    if (times[0] != 0.0) throw ConfigError("StepPath: times must start at 0");
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
        throw ConfigError("StepPath: horizon must be finite and >= 0");
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        if (!(times[i] < times[i + 1]))
            throw ConfigError("StepPath: times must be strictly increasing (index " +
                              std::to_string(i + 1) + ")");
        if (clocks[i + 1] < clocks[i])
            throw ConfigError("StepPath: clock must be non-decreasing (index " +
                              std::to_string(i + 1) + ")");
        bool same = clocks[i + 1] == clocks[i];
        for (int c = 0; same && c < d; ++c)
            same = position(i)[c] == position(i + 1)[c];
        if (same)
            throw ConfigError("StepPath: adjacent values equal, jump at index " +
                              std::to_string(i + 1) + " is not genuine");
    }
}

std::size_t segment_index(const StepPath& p, double u) {
    if (!(u >= 0.0) || u > std::max(p.times.back(), p.horizon))
        throw HorizonError("StepPath: eval at u = " + std::to_string(u) +
                           " is beyond the horizon");
    auto it = std::upper_bound(p.times.begin(), p.times.end(), u);
    return static_cast<std::size_t>(it - p.times.begin()) - 1;  // times[0] = 0 <= u
}

std::size_t segment_index_left(const StepPath& p, double u) {
    if (u == 0.0) return 0;
    if (!(u > 0.0) || u > std::max(p.times.back(), p.horizon))
        throw HorizonError("StepPath: eval_left at u = " + std::to_string(u) +
                           " is beyond the horizon");
    auto it = std::lower_bound(p.times.begin(), p.times.end(), u);
    if (it == p.times.begin()) return 0;
    return static_cast<std::size_t>(it - p.times.begin()) - 1;  // last time < u
}

std::size_t inverse_index(const StepPath& p, double t) {
    if (!(t >= 0.0) || t > p.horizon)
        throw HorizonError("StepPath: inverse query at t = " + std::to_string(t) +
                           " is beyond the horizon");
    if (!(p.clocks.back() > p.horizon))
        throw HorizonError("StepPath: final clock does not exceed the horizon; "
                           "inverse queries are not answerable");
    auto it = std::upper_bound(p.clocks.begin(), p.clocks.end(), t);  // first > t
    return static_cast<std::size_t>(it - p.clocks.begin());
}

double generalized_inverse(const StepPath& p, double t) {
    return p.times[inverse_index(p, t)];
}

std::size_t psi_index(const StepPath& p, double t) { return inverse_index(p, t); }

std::size_t phi_index(const StepPath& p, double t) {
    std::size_t j = inverse_index(p, t);
    return j == 0 ? 0 : j - 1;
}

namespace {

StepPath apply_time_change(const StepPath& p, bool leading) {
    p.validate();
    StepPath out;
    out.d = p.d;
    out.horizon = p.horizon;
    auto push = [&out, &p](double t, std::size_t idx) {
        out.times.push_back(t);
        out.clocks.push_back(p.clocks[idx]);
        const double* pos = p.position(idx);
        out.positions.insert(out.positions.end(), pos, pos + p.d);
    };
    std::size_t i = inverse_index(p, 0.0);
    push(0.0, leading ? i : (i == 0 ? 0 : i - 1));
    while (p.clocks[i] <= p.horizon) {
        const double level = p.clocks[i];
        // skip any flat stretch: the next state is the first segment whose
        // clock strictly exceeds the current level
        auto it = std::upper_bound(p.clocks.begin() + static_cast<std::ptrdiff_t>(i),
                                   p.clocks.end(), level);
        std::size_t next = static_cast<std::size_t>(it - p.clocks.begin());
        push(level, leading ? next : next - 1);
        i = next;
    }
    return out;
}

}  // namespace

StepPath apply_Phi(const StepPath& p) { return apply_time_change(p, false); }

StepPath apply_Psi(const StepPath& p) { return apply_time_change(p, true); }

void dump_csv(const StepPath& p, std::ostream& os) {
    os << "u_time,clock";
    for (int c = 1; c <= p.d; ++c) os << ",pos_" << c;
    os << "\n";
    char buf[32];
    auto put = [&os, &buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (std::size_t i = 0; i < p.segments(); ++i) {
        put(p.times[i]);
        os << ',';
        put(p.clocks[i]);
        for (int c = 0; c < p.d; ++c) {
            os << ',';
            put(p.position(i)[c]);
        }
        os << "\n";
    }
}

}  // namespace ctrw
