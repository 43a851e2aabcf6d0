#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

// End-to-end checks through the installed binary. CTRW_CLI_PATH is injected
// by the build so the tests always exercise the binary they were built with.

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_root() {
    static const fs::path root = [] {
        fs::path p = fs::temp_directory_path() /
                     ("ctrw-cli-test-" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return root;
}

RunResult run_cli(const std::string& args) {
    const fs::path dir = scratch_root();
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = std::string(CTRW_CLI_PATH) + " " + args + " >" +
                            out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_model(const std::string& name, const std::string& json) {
    const fs::path p = scratch_root() / name;
    std::ofstream(p) << json << "\n";
    return p;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("cli: age law csv carries the closed form") {
    const fs::path model =
        write_model("stable05.json", R"({"kind":"levy-walk","beta":0.5})");
    const fs::path out = scratch_root() / "law-age";
    const RunResult r = run_cli("law --model " + model.string() +
                                " --t 1 --var age --bins 200 --out " + out.string());
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    std::ifstream csv(out / "law.csv");
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "a_lo,a_hi,density");
    bool found = false;
    while (std::getline(csv, line)) {
        std::istringstream row(line);
        std::string lo, hi, val;
        std::getline(row, lo, ',');
        std::getline(row, hi, ',');
        std::getline(row, val, ',');
        if (std::stod(lo) <= 0.5 && 0.5 < std::stod(hi)) {
            found = true;
            CHECK(std::stod(val) == doctest::Approx(0.6366).epsilon(2e-4));
        }
    }
    CHECK(found);
    CHECK(fs::exists(out / "law.json"));
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("cli: config errors exit with 2 and name the problem") {
    SUBCASE("missing model file") {
        const RunResult r =
            run_cli("law --model /nonexistent/nope.json --t 1 --var age");
        CHECK(r.code == 2);
        CHECK(r.err.find("/nonexistent/nope.json") != std::string::npos);
    }
    SUBCASE("field out of range") {
        const fs::path bad =
            write_model("bad-beta.json", R"({"kind":"levy-walk","beta":1.5})");
        const RunResult r = run_cli("law --model " + bad.string() + " --t 1");
        CHECK(r.code == 2);
        CHECK(r.err.find("beta") != std::string::npos);
    }
    SUBCASE("seed is required for sampling") {
        const fs::path model =
            write_model("ug.json", R"({"kind":"uncoupled-gaussian","beta":0.5})");
        const RunResult r = run_cli("limit-sample --model " + model.string() +
                                    " --t 1 --reps 10");
        CHECK(r.code == 2);
        CHECK(r.err.find("--seed") != std::string::npos);
    }
    SUBCASE("unknown variable") {
        const fs::path model =
            write_model("lw.json", R"({"kind":"levy-walk","beta":0.5})");
        const RunResult r =
            run_cli("law --model " + model.string() + " --t 1 --var bogus");
        CHECK(r.code == 2);
        CHECK(r.err.find("bogus") != std::string::npos);
    }
}

TEST_CASE("cli: simulate writes one row per replica and replays bitwise") {
    const fs::path model = write_model(
        "ug-sim.json", R"({"kind":"uncoupled-gaussian","beta":0.5,"sigma2":1.0})");
    const fs::path a = scratch_root() / "sim-a";
    const RunResult r1 =
        run_cli("simulate --model " + model.string() +
                " --n 50 --t 1 --reps 64 --seed 11 --out " + a.string());
    CAPTURE(r1.err);
    REQUIRE(r1.code == 0);
    const std::string csv = slurp(a / "samples.csv");
    CHECK(count_lines(csv) == 65);  // header plus replicas
    CHECK(csv.rfind("replica,x_1,g,y_1,d\n", 0) == 0);

    const fs::path b = scratch_root() / "sim-b";
    const RunResult r2 = run_cli("rerun --manifest " +
                                 (a / "manifest.json").string() + " --out " +
                                 b.string() + " --check");
    CAPTURE(r2.err);
    REQUIRE(r2.code == 0);
    CHECK(r2.out.find("replay identical") != std::string::npos);
    CHECK(slurp(b / "samples.csv") == csv);
}

TEST_CASE("cli: limit-sample output matches the declared schema") {
    const fs::path model =
        write_model("lw2.json", R"({"kind":"levy-walk","beta":0.7})");
    const fs::path out = scratch_root() / "ls";
    const RunResult r =
        run_cli("limit-sample --model " + model.string() +
                " --t 1 --du 0.01 --reps 32 --seed 5 --out " + out.string());
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    const std::string csv = slurp(out / "samples.csv");
    CHECK(csv.rfind("replica,x_1,a,y_1,r,on_M\n", 0) == 0);
    CHECK(count_lines(csv) == 33);
    // du default is derived, so the manifest must pin the resolved value
    const std::string man = slurp(out / "manifest.json");
    CHECK(man.find("--du") != std::string::npos);
    CHECK(man.find("\"command\": \"limit-sample\"") != std::string::npos);
}

TEST_CASE("cli: converge emits the sweep table") {
    const fs::path model =
        write_model("ug-conv.json", R"({"kind":"uncoupled-gaussian","beta":0.5})");
    const fs::path out = scratch_root() / "conv";
    const RunResult r = run_cli(
        "converge --model " + model.string() +
        " --t 1 --n-list 10,50 --reps 300 --seeds 2 --limit-reps 1000 --du 0.01"
        " --seed 17 --out " +
        out.string());
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.rfind("n,marginal,distance,reps,seed\n", 0) == 0);
    CHECK(count_lines(csv) == 1 + 2 * 2 * 4);  // n values x seeds x marginals
}

TEST_CASE("cli: check-matching reports zero mismatches") {
    const fs::path model =
        write_model("lw-chk.json", R"({"kind":"levy-walk","beta":0.5})");
    const fs::path out = scratch_root() / "chk";
    const RunResult r = run_cli("check-matching --model " + model.string() +
                                " --n 20 --reps 50 --queries 50 --seed 7 --out " +
                                out.string());
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mismatches: 0") != std::string::npos);
    CHECK(count_lines(slurp(out / "matching.csv")) == 51);
}

TEST_CASE("cli: config file supplies fields, explicit flags override them") {
    const fs::path model =
        write_model("lw3.json", R"({"kind":"levy-walk","beta":0.5})");
    const fs::path cfg = scratch_root() / "law-config.json";
    std::ofstream(cfg) << R"({"command":"law","model":")" << model.string()
                       << R"(","t":1.0,"bins":10})"
                       << "\n";
    const fs::path o1 = scratch_root() / "cfg-t1";
    const fs::path o2 = scratch_root() / "cfg-t2";
    // the file alone carries a complete configuration
    const RunResult r1 =
        run_cli("law --config " + cfg.string() + " --out " + o1.string());
    CAPTURE(r1.err);
    REQUIRE(r1.code == 0);
    // a flag beats the file, and the manifest records the winning value
    const RunResult r2 = run_cli("law --config " + cfg.string() + " --t 2 --out " +
                                 o2.string());
    CAPTURE(r2.err);
    REQUIRE(r2.code == 0);
    const auto man = nlohmann::json::parse(slurp(o2 / "manifest.json"));
    const auto argv = man.at("argv").get<std::vector<std::string>>();
    bool t_is_two = false;
    for (std::size_t i = 0; i + 1 < argv.size(); ++i)
        if (argv[i] == "--t") t_is_two = argv[i + 1] == "2";
    CHECK(t_is_two);
    CHECK(man.at("params").at("t").get<double>() == 2.0);
    CHECK(slurp(o1 / "law.csv") != slurp(o2 / "law.csv"));
}

TEST_CASE("cli: inline model in a config file round-trips through rerun") {
    const fs::path cfg = scratch_root() / "ls-config.json";
    std::ofstream(cfg)
        << R"({"model":{"kind":"uncoupled-gaussian","beta":0.5},)"
        << R"("t":1.0,"du":0.01,"reps":16,"seed":99})"
        << "\n";
    const fs::path a = scratch_root() / "ls-cfg-a";
    const RunResult r =
        run_cli("limit-sample --config " + cfg.string() + " --out " + a.string());
    CAPTURE(r.err);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(a / "model.json"));  // resolved model is materialized
    const fs::path b = scratch_root() / "ls-cfg-b";
    const RunResult rr = run_cli("rerun --manifest " +
                                 (a / "manifest.json").string() + " --out " +
                                 b.string() + " --check");
    CAPTURE(rr.err);
    REQUIRE(rr.code == 0);
    CHECK(rr.out.find("replay identical") != std::string::npos);
}

TEST_CASE("cli: config files reject fields the command does not take") {
    const fs::path model =
        write_model("lw4.json", R"({"kind":"levy-walk","beta":0.5})");
    SUBCASE("unknown key") {
        const fs::path cfg = scratch_root() / "bad-key.json";
        std::ofstream(cfg) << R"({"model":")" << model.string()
                           << R"(","t":1.0,"frobnicate":3})"
                           << "\n";
        const RunResult r = run_cli("law --config " + cfg.string());
        CHECK(r.code == 2);
        CHECK(r.err.find("frobnicate") != std::string::npos);
    }
    SUBCASE("key belonging to another command") {
        const fs::path cfg = scratch_root() / "bad-seed.json";
        std::ofstream(cfg) << R"({"model":")" << model.string()
                           << R"(","t":1.0,"seed":4})"
                           << "\n";
        const RunResult r = run_cli("law --config " + cfg.string());
        CHECK(r.code == 2);
        CHECK(r.err.find("seed") != std::string::npos);
    }
}

TEST_CASE("cli: help exits zero") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("law --help").code == 0);
}
