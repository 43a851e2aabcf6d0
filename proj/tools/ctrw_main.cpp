#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance.hpp"
#include "ctrw/csvio.hpp"
#include "ctrw/ctrw.hpp"
#include "ctrw/errors.hpp"
#include "ctrw/law.hpp"
#include "ctrw/limit.hpp"
#include "ctrw/model.hpp"
#include "ctrw/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::vector<std::string>& args);

fs::path resolve_out(std::string out) {
    if (out.empty()) {
        const char* env = std::getenv("CTRW_OUTPUT_DIR");
        out = (env && *env) ? env : ".";
    }
    fs::path dir(out);
    fs::create_directories(dir);
    return dir;
}

std::string abs_path(const std::string& p) {
    return fs::absolute(fs::path(p)).lexically_normal().string();
}

void emit_manifest(const fs::path& dir, const std::string& command,
                   const std::vector<std::string>& argv, const ctrw::ModelSpec& model,
                   const json& params, const std::vector<std::string>& outputs) {
    json man = ctrw::manifest_json(argv, outputs);
    man["command"] = command;
    man["model"] = json::parse(ctrw::model_to_json_text(model));
    man["params"] = params;
    ctrw::write_manifest((dir / "manifest.json").string(), man);
}

// Decorative ECDF overlay; not covered by the bitwise-replay contract.
void write_ecdf_svg(const fs::path& path, std::vector<double> xs,
                    const std::string& label) {
    if (xs.empty()) return;
    std::sort(xs.begin(), xs.end());
    const double lo = xs.front();
    const double span = xs.back() > lo ? xs.back() - lo : 1.0;
    const int w = 640, h = 400, ml = 55, mr = 15, mt = 20, mb = 35;
    std::ofstream svg(path);
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='"
        << h << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
        << "<rect x='" << ml << "' y='" << mt << "' width='" << w - ml - mr
        << "' height='" << h - mt - mb
        << "' fill='none' stroke='black' stroke-width='1'/>\n<polyline fill='none' "
           "stroke='steelblue' stroke-width='1.5' points='";
    const std::size_t n = xs.size();
    const std::size_t step = std::max<std::size_t>(1, n / 1000);
    for (std::size_t i = 0; i < n; i += step) {
        const double px = ml + (xs[i] - lo) / span * (w - ml - mr);
        const double py =
            h - mb - (static_cast<double>(i + 1) / n) * (h - mt - mb);
        svg << px << ',' << py << ' ';
    }
    svg << "'/>\n<text x='" << ml << "' y='" << h - 10
        << "' font-family='monospace' font-size='12'>" << label << " (n=" << n
        << ", range " << lo << " .. " << xs.back() << ")</text>\n</svg>\n";
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ctrw::ConfigError("cannot open file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string join_longs(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct Options {
    std::string model, inline_model, config, out, manifest, var = "age";
    double t = 0.0;  // 0 marks "not given"
    double du = 0.0;
    double a_hi = 0.0, r_hi = 0.0;
    long n = 0;
    long reps = 100000;
    long limit_reps = 100000;
    long bins = 200, a_bins = 40, r_bins = 40;
    long queries = 200;
    std::vector<long> n_list;
    int seeds = 1;
    int threads = 0;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool plot = false;
    bool check = false;
};

// Fill fields from a JSON config file. Values given on the command line win;
// keys the active subcommand does not understand are rejected.
void merge_config(CLI::App* sub, Options& o) {
    if (auto* sopt = sub->get_option_no_throw("--seed"); sopt && sopt->count() > 0)
        o.has_seed = true;
    if (o.config.empty()) return;
    json j;
    try {
        j = json::parse(slurp(o.config));
    } catch (const json::parse_error& e) {
        throw ctrw::ConfigError("config file '" + o.config +
                                "': " + std::string(e.what()));
    }
    if (!j.is_object())
        throw ctrw::ConfigError("config file '" + o.config +
                                "': expected a JSON object");

    static const std::map<std::string, std::string> flag_of = {
        {"model", "--model"},   {"t", "--t"},
        {"n", "--n"},           {"du", "--du"},
        {"reps", "--reps"},     {"n_list", "--n-list"},
        {"seeds", "--seeds"},   {"limit_reps", "--limit-reps"},
        {"queries", "--queries"}, {"bins", "--bins"},
        {"a_bins", "--a-bins"}, {"r_bins", "--r-bins"},
        {"a_hi", "--a-hi"},     {"r_hi", "--r-hi"},
        {"var", "--var"},       {"seed", "--seed"},
        {"out", "--out"},       {"threads", "--threads"}};

    for (const auto& [key, val] : j.items()) {
        if (key == "command") {
            if (!val.is_string() || val.get<std::string>() != sub->get_name())
                throw ctrw::ConfigError("config field 'command': does not match '" +
                                        sub->get_name() + "'");
            continue;
        }
        const auto it = flag_of.find(key);
        if (it == flag_of.end())
            throw ctrw::ConfigError("config field '" + key + "': unknown");
        CLI::Option* opt = sub->get_option_no_throw(it->second);
        if (!opt)
            throw ctrw::ConfigError("config field '" + key +
                                    "': not accepted by command '" + sub->get_name() +
                                    "'");
        if (opt->count() > 0) continue;  // flags win over the file
        try {
            if (key == "model") {
                if (val.is_string()) {
                    fs::path mp = val.get<std::string>();
                    if (mp.is_relative()) mp = fs::path(o.config).parent_path() / mp;
                    o.model = mp.string();
                } else if (val.is_object()) {
                    o.inline_model = val.dump();
                } else {
                    throw ctrw::ConfigError(
                        "config field 'model': expected a path or an object");
                }
            } else if (key == "t") {
                o.t = val.get<double>();
            } else if (key == "n") {
                o.n = val.get<long>();
            } else if (key == "du") {
                o.du = val.get<double>();
            } else if (key == "reps") {
                o.reps = val.get<long>();
            } else if (key == "n_list") {
                o.n_list = val.get<std::vector<long>>();
            } else if (key == "seeds") {
                o.seeds = val.get<int>();
            } else if (key == "limit_reps") {
                o.limit_reps = val.get<long>();
            } else if (key == "queries") {
                o.queries = val.get<long>();
            } else if (key == "bins") {
                o.bins = val.get<long>();
            } else if (key == "a_bins") {
                o.a_bins = val.get<long>();
            } else if (key == "r_bins") {
                o.r_bins = val.get<long>();
            } else if (key == "a_hi") {
                o.a_hi = val.get<double>();
            } else if (key == "r_hi") {
                o.r_hi = val.get<double>();
            } else if (key == "var") {
                o.var = val.get<std::string>();
            } else if (key == "seed") {
                o.seed = val.get<std::uint64_t>();
                o.has_seed = true;
            } else if (key == "out") {
                o.out = val.get<std::string>();
            } else if (key == "threads") {
                o.threads = val.get<int>();
            }
        } catch (const json::exception&) {
            throw ctrw::ConfigError("config field '" + key + "': wrong type");
        }
    }
}

ctrw::ModelSpec resolve_model(const Options& o) {
    if (!o.model.empty()) return ctrw::model_from_json_file(o.model);
    if (!o.inline_model.empty()) return ctrw::model_from_json_text(o.inline_model);
    throw ctrw::ConfigError("'--model' is required (flag or config file)");
}

void require_seed(const Options& o) {
    if (!o.has_seed)
        throw ctrw::ConfigError("'--seed' is required (seeds are never defaulted)");
}

void require_time(const Options& o) {
    if (!(o.t > 0.0)) throw ctrw::ConfigError("'--t' is required and must be > 0");
}

// Every data command materializes the resolved model next to its outputs, so
// a manifest replay never depends on the caller's files staying put.
std::string echo_model(const fs::path& dir, const ctrw::ModelSpec& m) {
    const fs::path p = dir / "model.json";
    std::ofstream out(p, std::ios::binary);
    out << ctrw::model_to_json_text(m) << "\n";
    if (!out) throw ctrw::ResourceError("write failed: " + p.string());
    return abs_path(p.string());
}

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int cmd_simulate(const Options& o) {
    const ctrw::ModelSpec m = resolve_model(o);
    require_seed(o);
    require_time(o);
    if (o.n < 1) throw ctrw::ConfigError("'--n' is required and must be >= 1");
    if (o.reps < 1) throw ctrw::ConfigError("'--reps' must be >= 1");
    apply_threads(o.threads);
    const fs::path dir = resolve_out(o.out);
    const std::string echo = echo_model(dir, m);
    const std::string model_ref = o.model.empty() ? echo : abs_path(o.model);
    const auto states = ctrw::ctrw_batch(m, o.n, o.t, o.reps, o.seed);
    ctrw::write_state_csv((dir / "samples.csv").string(), m.d, states);
    if (o.plot) {
        std::vector<double> xs(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) xs[i] = states[i].x[0];
        write_ecdf_svg(dir / "plot.svg", std::move(xs), "lagging position ECDF");
    }
    emit_manifest(dir, "simulate",
                  {"simulate", "--model", model_ref, "--n", std::to_string(o.n),
                   "--t", ctrw::format_g17(o.t), "--reps", std::to_string(o.reps),
                   "--seed", std::to_string(o.seed)},
                  m,
                  {{"n", o.n}, {"t", o.t}, {"reps", o.reps}, {"seed", o.seed}},
                  {"samples.csv", "model.json"});
    return 0;
}

int cmd_limit_sample(const Options& o) {
    const ctrw::ModelSpec m = resolve_model(o);
    require_seed(o);
    require_time(o);
    if (o.reps < 1) throw ctrw::ConfigError("'--reps' must be >= 1");
    const double du = o.du > 0.0 ? o.du : 1e-3 * o.t;
    apply_threads(o.threads);
    const fs::path dir = resolve_out(o.out);
    const std::string echo = echo_model(dir, m);
    const std::string model_ref = o.model.empty() ? echo : abs_path(o.model);
    const auto samples = ctrw::batch_sample(m, o.t, du, o.reps, o.seed);
    ctrw::write_samples_csv((dir / "samples.csv").string(), m.d, samples);
    if (o.plot) {
        std::vector<double> as(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) as[i] = samples[i].a;
        write_ecdf_svg(dir / "plot.svg", std::move(as), "age ECDF");
    }
    emit_manifest(dir, "limit-sample",
                  {"limit-sample", "--model", model_ref, "--t",
                   ctrw::format_g17(o.t), "--du", ctrw::format_g17(du), "--reps",
                   std::to_string(o.reps), "--seed", std::to_string(o.seed)},
                  m,
                  {{"t", o.t}, {"du", du}, {"reps", o.reps}, {"seed", o.seed}},
                  {"samples.csv", "model.json"});
    return 0;
}

int cmd_law(const Options& o) {
    const ctrw::ModelSpec m = resolve_model(o);
    require_time(o);
    const fs::path dir = resolve_out(o.out);
    const std::string echo = echo_model(dir, m);
    const std::string model_ref = o.model.empty() ? echo : abs_path(o.model);
    json side;
    side["model"] = json::parse(ctrw::model_to_json_text(m));
    side["t"] = o.t;
    side["var"] = o.var;
    std::vector<std::string> argv = {"law",   "--model", model_ref,
                                     "--t",   ctrw::format_g17(o.t), "--var",
                                     o.var};
    json params = {{"t", o.t}, {"var", o.var}};
    ctrw::DensityGrid grid;
    if (o.var == "age") {
        if (o.bins < 1) throw ctrw::ConfigError("'--bins' must be >= 1");
        grid = ctrw::age_grid(m, o.t, static_cast<std::size_t>(o.bins));
        side["bins"] = o.bins;
        params["bins"] = o.bins;
        argv.insert(argv.end(), {"--bins", std::to_string(o.bins)});
    } else if (o.var == "joint") {
        if (o.a_bins < 1 || o.r_bins < 1)
            throw ctrw::ConfigError("'--a-bins'/'--r-bins' must be >= 1");
        const double a_hi = o.a_hi > 0.0 ? o.a_hi : o.t;
        const double r_hi = o.r_hi > 0.0 ? o.r_hi : 2.0 * o.t;
        grid = ctrw::joint_ar_grid(m, o.t, a_hi, r_hi,
                                   static_cast<std::size_t>(o.a_bins),
                                   static_cast<std::size_t>(o.r_bins));
        side["a_hi"] = a_hi;
        side["r_hi"] = r_hi;
        side["a_bins"] = o.a_bins;
        side["r_bins"] = o.r_bins;
        side["truncated_mass"] = grid.truncated_mass;
        params["a_hi"] = a_hi;
        params["r_hi"] = r_hi;
        params["a_bins"] = o.a_bins;
        params["r_bins"] = o.r_bins;
        argv.insert(argv.end(),
                    {"--a-hi", ctrw::format_g17(a_hi), "--r-hi",
                     ctrw::format_g17(r_hi), "--a-bins", std::to_string(o.a_bins),
                     "--r-bins", std::to_string(o.r_bins)});
    } else {
        throw ctrw::ConfigError("'--var' must be 'age' or 'joint', got '" + o.var +
                                "'");
    }
    side["total_mass"] = grid.total_mass;
    side["atom_at_zero"] = grid.atom_at_zero;
    ctrw::write_grid_csv((dir / "law.csv").string(), grid);
    std::ofstream sidecar(dir / "law.json", std::ios::binary);
    sidecar << side.dump(2) << "\n";
    if (!sidecar) throw ctrw::ResourceError("write failed: " + (dir / "law.json").string());
    emit_manifest(dir, "law", argv, m, params, {"law.csv", "law.json", "model.json"});
    return 0;
}

int cmd_converge(const Options& o) {
    const ctrw::ModelSpec m = resolve_model(o);
    require_seed(o);
    require_time(o);
    if (o.n_list.empty())
        throw ctrw::ConfigError("'--n-list' is required and must be non-empty");
    if (o.reps < 1) throw ctrw::ConfigError("'--reps' must be >= 1");
    if (o.seeds < 1) throw ctrw::ConfigError("'--seeds' must be >= 1");
    if (o.limit_reps < 1) throw ctrw::ConfigError("'--limit-reps' must be >= 1");
    const double du = o.du > 0.0 ? o.du : 1e-3 * o.t;
    apply_threads(o.threads);
    const fs::path dir = resolve_out(o.out);
    const std::string echo = echo_model(dir, m);
    const std::string model_ref = o.model.empty() ? echo : abs_path(o.model);
    ctrw::SweepOptions opt;
    opt.n_seeds = o.seeds;
    opt.limit_reps = o.limit_reps;
    opt.du = du;
    const auto rows = ctrw::convergence_sweep(m, o.t, o.n_list, o.reps, o.seed, opt);
    ctrw::write_sweep_csv((dir / "sweep.csv").string(), rows);
    emit_manifest(dir, "converge",
                  {"converge", "--model", model_ref, "--t", ctrw::format_g17(o.t),
                   "--n-list", join_longs(o.n_list), "--reps",
                   std::to_string(o.reps), "--seeds", std::to_string(o.seeds),
                   "--limit-reps", std::to_string(o.limit_reps), "--du",
                   ctrw::format_g17(du), "--seed", std::to_string(o.seed)},
                  m,
                  {{"t", o.t},
                   {"n_list", o.n_list},
                   {"reps", o.reps},
                   {"seeds", o.seeds},
                   {"limit_reps", o.limit_reps},
                   {"du", du},
                   {"seed", o.seed}},
                  {"sweep.csv", "model.json"});
    return 0;
}

int cmd_check_matching(const Options& o) {
    const ctrw::ModelSpec m = resolve_model(o);
    require_seed(o);
    if (o.n < 1) throw ctrw::ConfigError("'--n' is required and must be >= 1");
    if (o.reps < 1) throw ctrw::ConfigError("'--reps' must be >= 1");
    if (o.queries < 1) throw ctrw::ConfigError("'--queries' must be >= 1");
    if (!(o.t > 0.0)) throw ctrw::ConfigError("'--t' must be > 0");
    const fs::path dir = resolve_out(o.out);
    const std::string echo = echo_model(dir, m);
    const std::string model_ref = o.model.empty() ? echo : abs_path(o.model);
    std::ofstream csv(dir / "matching.csv", std::ios::binary);
    csv << "realization,queries,mismatches\n";
    long total = 0;
    for (long i = 0; i < o.reps; ++i) {
        ctrw::Rng rng(ctrw::child_seed(o.seed, i));
        const auto real = ctrw::build_row_sum(m, o.n, o.t, rng);
        const ctrw::StepPath lag = ctrw::apply_Phi(real.row_sum);
        const ctrw::StepPath lead = ctrw::apply_Psi(real.row_sum);
        ctrw::Rng tq(ctrw::child_seed(o.seed ^ 0x5154, i));
        long bad = 0;
        for (long q = 0; q < o.queries; ++q) {
            const double t = o.t * tq.uniform();
            const auto st = ctrw::ctrw_state(real, t);
            const std::size_t il = ctrw::segment_index(lag, t);
            const std::size_t ir = ctrw::segment_index(lead, t);
            bool ok = lag.clocks[il] == st.g && lead.clocks[ir] == st.dclock;
            for (int c = 0; ok && c < m.d; ++c)
                ok = lag.position(il)[c] == st.x[c] &&
                     lead.position(ir)[c] == st.y[c];
            if (!ok) ++bad;
        }
        csv << i << ',' << o.queries << ',' << bad << '\n';
        total += bad;
    }
    csv.flush();
    if (!csv)
        throw ctrw::ResourceError("write failed: " + (dir / "matching.csv").string());
    emit_manifest(dir, "check-matching",
                  {"check-matching", "--model", model_ref, "--n",
                   std::to_string(o.n), "--t", ctrw::format_g17(o.t), "--reps",
                   std::to_string(o.reps), "--queries", std::to_string(o.queries),
                   "--seed", std::to_string(o.seed)},
                  m,
                  {{"n", o.n},
                   {"t", o.t},
                   {"reps", o.reps},
                   {"queries", o.queries},
                   {"seed", o.seed}},
                  {"matching.csv", "model.json"});
    std::cout << "mismatches: " << total << "\n";
    return total == 0 ? 0 : 1;
}

int cmd_verify(const Options& o) {
    const fs::path dir = resolve_out(o.out);
    apply_threads(o.threads);
    const int failures = ctrw::run_acceptance(
        std::cout, (dir / "acceptance-scratch").string(),
        [](const std::vector<std::string>& argv) { return run(argv); });
    return failures == 0 ? 0 : 1;
}

int cmd_rerun(const Options& o) {
    json man;
    {
        std::ifstream in(o.manifest);
        if (!in) throw ctrw::ConfigError("cannot open manifest: " + o.manifest);
        try {
            in >> man;
        } catch (const json::exception& e) {
            throw ctrw::ConfigError("manifest " + o.manifest + " is not valid JSON: " +
                                    e.what());
        }
    }
    if (man.value("tool", "") != "ctrw")
        throw ctrw::ConfigError("manifest " + o.manifest +
                                " was not written by this tool");
    auto argv = man.at("argv").get<std::vector<std::string>>();
    if (argv.empty() || argv[0] == "rerun" || argv[0] == "verify")
        throw ctrw::ConfigError("manifest does not describe a replayable command");
    argv.push_back("--out");
    argv.push_back(o.out);
    const int rc = run(argv);
    if (rc != 0) return rc;
    if (o.check) {
        const fs::path orig = fs::absolute(fs::path(o.manifest)).parent_path();
        const fs::path fresh = resolve_out(o.out);
        long mismatched = 0;
        for (const auto& f : man.at("outputs")) {
            const std::string name = f.get<std::string>();
            if (slurp(orig / name) != slurp(fresh / name)) {
                std::cerr << "replay mismatch: " << name << "\n";
                ++mismatched;
            }
        }
        if (mismatched) return 1;
        std::cout << "replay identical: " << man.at("outputs").size()
                  << " file(s)\n";
    }
    return 0;
}

int run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"coupled continuous-time random walks: simulation, limit sampling, "
                 "closed-form laws and their cross-checks"};
    app.require_subcommand(1);

    auto add_common = [&o](CLI::App* c, bool needs_seed, bool with_config = true) {
        c->add_option("--out", o.out,
                      "output directory (default $CTRW_OUTPUT_DIR or '.')");
        c->add_option("--threads", o.threads, "cap on worker threads");
        if (with_config)
            c->add_option("--config", o.config,
                          "JSON config file; explicit flags override its fields");
        if (needs_seed) c->add_option("--seed", o.seed, "master seed (required)");
    };

    auto* sim = app.add_subcommand(
        "simulate", "lagging/leading walk states at a fixed physical time");
    sim->add_option("--model", o.model, "model JSON file");
    sim->add_option("--n", o.n, "row size of the walk");
    sim->add_option("--t", o.t, "physical time");
    sim->add_option("--reps", o.reps, "replica count (default 100000)");
    sim->add_flag("--plot", o.plot, "also write plot.svg");
    add_common(sim, true);

    auto* lim = app.add_subcommand("limit-sample",
                                   "joint limit draws (x, a, y, r) at a fixed time");
    lim->add_option("--model", o.model, "model JSON file");
    lim->add_option("--t", o.t, "physical time");
    lim->add_option("--du", o.du, "skeleton grid step (default t/1000)");
    lim->add_option("--reps", o.reps, "replica count (default 100000)");
    lim->add_flag("--plot", o.plot, "also write plot.svg");
    add_common(lim, true);

    auto* law = app.add_subcommand("law", "closed-form limit law on a grid");
    law->add_option("--model", o.model, "model JSON file");
    law->add_option("--t", o.t, "physical time");
    law->add_option("--var", o.var, "'age' or 'joint' (default age)");
    law->add_option("--bins", o.bins, "age bins (default 200)");
    law->add_option("--a-bins", o.a_bins, "joint grid: age bins (default 40)");
    law->add_option("--r-bins", o.r_bins, "joint grid: lifetime bins (default 40)");
    law->add_option("--a-hi", o.a_hi, "joint grid: age upper edge (default t)");
    law->add_option("--r-hi", o.r_hi, "joint grid: lifetime upper edge (default 2t)");
    add_common(law, false);

    auto* conv = app.add_subcommand(
        "converge", "walk-vs-limit distribution distances across row sizes");
    conv->add_option("--model", o.model, "model JSON file");
    conv->add_option("--t", o.t, "physical time");
    conv->add_option("--n-list", o.n_list, "row sizes, comma separated")
        ->delimiter(',');
    conv->add_option("--reps", o.reps, "walk replicas per (n, seed)");
    conv->add_option("--seeds", o.seeds, "seeds averaged per n (default 1)");
    conv->add_option("--limit-reps", o.limit_reps,
                     "replicas of the limit reference (default 100000)");
    conv->add_option("--du", o.du, "limit skeleton step (default t/1000)");
    add_common(conv, true);

    auto* chk = app.add_subcommand(
        "check-matching",
        "audit that renewal scanning equals the path time changes, bitwise");
    chk->add_option("--model", o.model, "model JSON file");
    chk->add_option("--n", o.n, "row size of the walk");
    chk->add_option("--t", o.t, "horizon (default 1)");
    chk->add_option("--reps", o.reps, "realizations (default 100000)");
    chk->add_option("--queries", o.queries, "query times per realization");
    add_common(chk, true);

    auto* ver = app.add_subcommand("verify", "run the acceptance suite");
    add_common(ver, false, false);

    auto* rer = app.add_subcommand("rerun", "replay a command from its manifest");
    rer->add_option("--manifest", o.manifest, "manifest.json path")->required();
    rer->add_option("--out", o.out, "output directory for the replay")->required();
    rer->add_flag("--check", o.check,
                  "byte-compare replayed outputs against the originals");

    std::vector<const char*> cargv;
    cargv.reserve(args.size() + 1);
    cargv.push_back("ctrw");
    for (const auto& s : args) cargv.push_back(s.c_str());

    try {
        try {
            app.parse(static_cast<int>(cargv.size()), cargv.data());
        } catch (const CLI::ParseError& e) {
            const int rc = app.exit(e);
            return rc == 0 ? 0 : 2;
        }
        for (CLI::App* data : {sim, lim, law, conv, chk})
            if (app.got_subcommand(data)) merge_config(data, o);
        if (app.got_subcommand(chk) && o.t == 0.0) o.t = 1.0;
        if (app.got_subcommand(sim)) return cmd_simulate(o);
        if (app.got_subcommand(lim)) return cmd_limit_sample(o);
        if (app.got_subcommand(law)) return cmd_law(o);
        if (app.got_subcommand(conv)) return cmd_converge(o);
        if (app.got_subcommand(chk)) return cmd_check_matching(o);
        if (app.got_subcommand(ver)) return cmd_verify(o);
        if (app.got_subcommand(rer)) return cmd_rerun(o);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ctrw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ctrw::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const ctrw::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}
