#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ctrw/ctrw.hpp"
#include "ctrw/law.hpp"
#include "ctrw/limit.hpp"
#include "ctrw/stats.hpp"

namespace ctrw {

inline constexpr const char* kVersion = "1.0.0";

// Shortest round-trip decimal formatting for doubles ("%.17g").
std::string format_g17(double x);

// replica,x_1..x_d,g,y_1..y_d,d
void write_state_csv(const std::string& path, int d,
                     const std::vector<CtrwState>& states);

// replica,x_1..x_d,a,y_1..y_d,r,on_M
void write_samples_csv(const std::string& path, int d,
                       const std::vector<JointSample>& samples);

// a_lo,a_hi,density           (marginal grid)
// a_lo,a_hi,r_lo,r_hi,density (joint grid)
void write_grid_csv(const std::string& path, const DensityGrid& grid);

// n,marginal,distance,reps,seed
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

// Manifest of one CLI invocation: the argv needed to reproduce it and the
// data files it wrote (paths relative to the manifest directory).
nlohmann::json manifest_json(const std::vector<std::string>& argv,
                             const std::vector<std::string>& outputs);

void write_manifest(const std::string& path, const nlohmann::json& man);

}  // namespace ctrw
