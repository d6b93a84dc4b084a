#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stdout only; stderr is folded in when `merge` is set
Run run(const std::string& args, bool merge = false) {
    const std::string cmd = std::string(CHEMOSTAB_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string model(const char* name) { return std::string(CHEMOSTAB_MODELS_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::current_path() / "cli_scratch" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return dir / name;
}

}  // namespace

TEST_CASE("check") {
    auto r = run("check " + model("linear_chain.model"));
    CHECK(r.code == 0);
    CHECK(r.out.find("linear") != std::string::npos);
    CHECK(r.out.find("N=3") != std::string::npos);
    r = run("check " + model("dimerization.model"));
    CHECK(r.code == 0);
    CHECK(r.out.find("nonlinear") != std::string::npos);

    const auto dir = scratch("check");
    r = run("check " + model("linear_chain.model") + " --output " + dir.string());
    CHECK(r.code == 0);
    const auto doc = nlohmann::json::parse(slurp(dir / "check.json"));
    CHECK(doc["linear"] == true);
}

TEST_CASE("analyze exit codes") {
    CHECK(run("analyze " + model("minimal_ks.model")).code == 0);
    auto r = run("analyze " + model("minimal_ks.model") + " --chi 3");
    CHECK(r.code == 1);
    CHECK(r.out.find("unstable") != std::string::npos);
    r = run("analyze " + model("full_ks.model"), true);
    CHECK(r.code == 4);
    CHECK(r.out.find("error:") != std::string::npos);
    CHECK(run("analyze " + model("trimolecular.model")).code == 4);
    CHECK(run("analyze " + model("trimolecular.model") + " --pin v2=2").code == 0);
    CHECK(run("analyze " + model("minimal_ks.model") + " --pin nope=2").code == 64);
}

TEST_CASE("analyze JSON and files") {
    auto r = run("analyze " + model("dimerization.model") + " --chi 10 --report-json --quiet");
    CHECK(r.code == 1);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["unstable"] == true);
    CHECK(doc["modes"].size() == 64);

    const auto dir = scratch("analyze");
    r = run("--modes 8 analyze " + model("minimal_ks.model") + " --output " + dir.string());
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "report.json"))["modes"].size() == 8);
    CHECK(slurp(dir / "report.csv").rfind("mode_id,mu,max_re,abs_im_at_max\n", 0) == 0);
}

TEST_CASE("parse, io and validation errors") {
    const auto dir = scratch("errors");
    const auto bad_syntax = write_file(dir, "bad.model", R"({"crn": "v1 -> ) @ 1", "alpha": [1], "chi": 1,
 "D": 1, "D_tilde": [1], "domain": {"kind": "interval", "L": 1}})");
    auto r = run("check " + bad_syntax.string(), true);
    CHECK(r.code == 2);
    CHECK(r.out.find("bad.model:") != std::string::npos);
    CHECK(run("check " + (dir / "missing.model").string()).code == 2);

    const auto invalid = write_file(dir, "invalid.model", R"({"crn": "v1 -> 0 @ 1", "alpha": [0], "chi": 1,
 "D": 1, "D_tilde": [1], "domain": {"kind": "interval", "L": 1}})");
    CHECK(run("check " + invalid.string()).code == 3);
    CHECK(run("analyze " + model("minimal_ks.model") + " --chi -1").code == 3);
}

TEST_CASE("usage errors") {
    CHECK(run("").code == 64);
    CHECK(run("frobnicate").code == 64);
    CHECK(run("analyze").code == 64);
    CHECK(run("--help").code == 0);
    CHECK(run("sweep " + model("minimal_ks.model") + " --from 2 --to 1").code == 64);
    CHECK(run("crosscheck " + model("minimal_ks.model") + " --n 500").code == 64);
    auto r = run("simulate " + model("minimal_ks.model") + " --n 64 --dt 1", true);
    CHECK(r.code == 64);
    CHECK(r.out.find("use --dt") != std::string::npos);
}

TEST_CASE("sweep") {
    const auto dir = scratch("sweep");
    auto r = run("sweep " + model("minimal_ks.model") + " --from 0.5 --to 4 --points 8 --output " + dir.string());
    CHECK(r.code == 0);
    const std::string csv = slurp(dir / "sweep.csv");
    CHECK(csv.rfind("value,max_re,threshold,threshold_status\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    const auto doc = nlohmann::json::parse(slurp(dir / "sweep.json"));
    CHECK(std::abs(doc["threshold"].get<double>() - 2.0) < 1e-9);

    r = run("sweep " + model("trimolecular.model") + " --pin v2=2 --from 1 --to 20 --points 4 --output " +
            dir.string());
    CHECK(r.code == 0);
    CHECK(slurp(dir / "sweep.csv").rfind("value,max_re,threshold,threshold_status,K,det_M,K0\n", 0) == 0);

    r = run("sweep " + model("minimal_ks.model") + " --param alpha:v1 --from 0.5 --to 4 --points 4 --log");
    CHECK(r.code == 0);
}

TEST_CASE("simulate") {
    const auto dir = scratch("simulate");
    auto r = run("simulate " + model("minimal_ks.model") + " --chi 3 --n 64 --t-end 8 --window 3:8 --snapshots --output " +
                 dir.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("growth rate") != std::string::npos);
    CHECK(fs::exists(dir / "trajectory.csv"));
    CHECK(fs::exists(dir / "snapshots.bin"));
    const auto doc = nlohmann::json::parse(slurp(dir / "simulation.json"));
    CHECK(std::abs(doc["growth_rate"].get<double>() - 0.3027756) < 0.05 * 0.3027756);

    r = run("simulate " + model("autocatalytic.model") + " --chi 20 --amplitude 0.5 --n 32 --t-end 30");
    CHECK(r.code == 5);
    CHECK(r.out.find("diverged") != std::string::npos);
}

TEST_CASE("crosscheck") {
    auto r = run("crosscheck " + model("minimal_ks.model") + " --n 64");
    CHECK(r.code == 0);
    r = run("crosscheck " + model("dimerization.model") + " --n 32 --report-json --quiet");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["hausdorff_distance"].get<double>() <= 1e-8);
}

TEST_CASE("repeated runs are byte-identical") {
    for (const std::string args : {"analyze " + model("dimerization.model") + " --chi 7 --report-json",
                                   "sweep " + model("dimerization.model") + " --from 1 --to 20 --points 6",
                                   "simulate " + model("minimal_ks.model") + " --chi 3 --n 32 --t-end 2"}) {
        CAPTURE(args);
        const auto a = run(args), b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    const auto d1 = scratch("repeat1"), d2 = scratch("repeat2");
    const std::string base = "simulate " + model("dimerization.model") + " --chi 8 --n 32 --t-end 3 --snapshots --output ";
    run(base + d1.string());
    run(base + d2.string());
    for (const char* f : {"trajectory.csv", "snapshots.bin", "simulation.json"}) {
        CAPTURE(f);
        CHECK(slurp(d1 / f) == slurp(d2 / f));
        CHECK_FALSE(slurp(d1 / f).empty());
    }
}
