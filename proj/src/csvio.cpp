#include "ctrw/csvio.hpp"

#include <cstdio>
#include <fstream>

#include "ctrw/errors.hpp"

namespace ctrw {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot open output file: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw ResourceError("write failed: " + path);
}

}  // namespace

void write_state_csv(const std::string& path, int d,
                     const std::vector<CtrwState>& states) {
    auto out = open_out(path);
    out << "replica";
    for (int i = 1; i <= d; ++i) out << ",x_" << i;
    out << ",g";
    for (int i = 1; i <= d; ++i) out << ",y_" << i;
    out << ",d\n";
    for (std::size_t k = 0; k < states.size(); ++k) {
        const auto& s = states[k];
        out << k;
        for (int i = 0; i < d; ++i) out << ',' << format_g17(s.x[i]);
        out << ',' << format_g17(s.g);
        for (int i = 0; i < d; ++i) out << ',' << format_g17(s.y[i]);
        out << ',' << format_g17(s.dclock) << '\n';
    }
    finish(out, path);
}

void write_samples_csv(const std::string& path, int d,
                       const std::vector<JointSample>& samples) {
    auto out = open_out(path);
    out << "replica";
    for (int i = 1; i <= d; ++i) out << ",x_" << i;
    out << ",a";
    for (int i = 1; i <= d; ++i) out << ",y_" << i;
    out << ",r,on_M\n";
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& s = samples[k];
        out << k;
        for (int i = 0; i < d; ++i) out << ',' << format_g17(s.x[i]);
        out << ',' << format_g17(s.a);
        for (int i = 0; i < d; ++i) out << ',' << format_g17(s.y[i]);
        out << ',' << format_g17(s.r) << ',' << (s.on_M ? 1 : 0) << '\n';
    }
    finish(out, path);
}

void write_grid_csv(const std::string& path, const DensityGrid& grid) {
    auto out = open_out(path);
    const std::size_t na = grid.a_edges.empty() ? 0 : grid.a_edges.size() - 1;
    if (grid.r_edges.empty()) {
        out << "a_lo,a_hi,density\n";
        for (std::size_t ia = 0; ia < na; ++ia) {
            out << format_g17(grid.a_edges[ia]) << ','
                << format_g17(grid.a_edges[ia + 1]) << ','
                << format_g17(grid.values[ia]) << '\n';
        }
    } else {
        const std::size_t nr = grid.r_edges.size() - 1;
        out << "a_lo,a_hi,r_lo,r_hi,density\n";
        for (std::size_t ia = 0; ia < na; ++ia) {
            for (std::size_t ir = 0; ir < nr; ++ir) {
                out << format_g17(grid.a_edges[ia]) << ','
                    << format_g17(grid.a_edges[ia + 1]) << ','
                    << format_g17(grid.r_edges[ir]) << ','
                    << format_g17(grid.r_edges[ir + 1]) << ','
                    << format_g17(grid.values[ia * nr + ir]) << '\n';
            }
        }
    }
    finish(out, path);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
    auto out = open_out(path);
    out << "n,marginal,distance,reps,seed\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.marginal << ',' << format_g17(r.distance)
            << ',' << r.reps << ',' << r.seed << '\n';
    }
    finish(out, path);
}

nlohmann::json manifest_json(const std::vector<std::string>& argv,
                             const std::vector<std::string>& outputs) {
    nlohmann::json man;
    man["tool"] = "ctrw";
    man["version"] = kVersion;
    man["argv"] = argv;
    man["outputs"] = outputs;
    return man;
}

void write_manifest(const std::string& path, const nlohmann::json& man) {
    auto out = open_out(path);
    out << man.dump(2) << '\n';
    finish(out, path);
}

}  // namespace ctrw
