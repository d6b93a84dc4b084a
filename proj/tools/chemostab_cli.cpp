// chemostab command-line front end. Talks to the library only through the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chemostab/chemostab.h"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

enum Exit : int {
    kOk = 0,
    kUnstable = 1,
    kParse = 2,
    kValidation = 3,
    kSteadyState = 4,
    kDiverged = 5,
    kUsage = 64,
    kInternal = 70,
};

struct Failure {
    int code;
    std::string message;
};

int exit_for(cs_status st) {
    switch (st) {
        case CS_OK: return kOk;
        case CS_ERR_PARSE:
        case CS_ERR_IO: return kParse;
        case CS_ERR_VALIDATION: return kValidation;
        case CS_ERR_STEADY_STATE: return kSteadyState;
        case CS_ERR_INVALID_ARGUMENT:
        case CS_ERR_PRECONDITION:
        case CS_ERR_TIME_STEP:
        case CS_ERR_DIMENSION: return kUsage;
        default: return kInternal;
    }
}

void check(cs_status st) {
    if (st != CS_OK) throw Failure{exit_for(st), cs_last_error_message()};
}

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string take(char* s) {
    std::string out = s ? s : "";
    cs_string_free(s);
    return out;
}

struct ModelDeleter {
    void operator()(cs_model* m) const { cs_model_free(m); }
};
struct SteadyDeleter {
    void operator()(cs_steady_state* s) const { cs_steady_state_free(s); }
};
struct ReportDeleter {
    void operator()(cs_report* r) const { cs_report_free(r); }
};
struct TrajectoryDeleter {
    void operator()(cs_trajectory* t) const { cs_trajectory_free(t); }
};
using ModelPtr = std::unique_ptr<cs_model, ModelDeleter>;
using SteadyPtr = std::unique_ptr<cs_steady_state, SteadyDeleter>;
using ReportPtr = std::unique_ptr<cs_report, ReportDeleter>;
using TrajectoryPtr = std::unique_ptr<cs_trajectory, TrajectoryDeleter>;

struct Global {
    std::string output;
    bool report_json = false;
    std::size_t modes = 64;
    bool quiet = false;
};

struct ModelArgs {
    std::string path;
    std::optional<double> chi;
    std::vector<std::string> alpha;
    std::vector<std::string> pins;
    double u_star = 1.0;
};

void add_model_args(CLI::App* cmd, ModelArgs& a, bool overrides = true) {
    cmd->add_option("model", a.path, "path to a .model file")->required();
    if (!overrides) return;
    cmd->add_option("--chi", a.chi, "override the chemotactic sensitivity");
    cmd->add_option("--alpha", a.alpha, "override a production rate, NAME=VALUE (repeatable)");
    cmd->add_option("--pin", a.pins, "pin a species in the steady state, NAME=VALUE (repeatable)");
    cmd->add_option("--u-star", a.u_star, "homogeneous density u*")->capture_default_str();
}

std::pair<std::string, double> split_assignment(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw Failure{kUsage, "expected NAME=VALUE, got '" + s + "'"};
    const std::string value = s.substr(eq + 1);
    double v = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw Failure{kUsage, "not a number: '" + value + "'"};
    }
    return {s.substr(0, eq), v};
}

std::size_t species_index(const cs_model* m, const std::string& name) {
    std::size_t idx = 0;
    if (cs_model_species_index(m, name.c_str(), &idx) != CS_OK) throw Failure{kUsage, cs_last_error_message()};
    return idx;
}

std::string species_name(const cs_model* m, std::size_t k) {
    const char* name = nullptr;
    check(cs_model_species_name(m, k, &name));
    return name;
}

std::size_t species_count(const cs_model* m) {
    std::size_t n = 0;
    check(cs_model_species_count(m, &n));
    return n;
}

ModelPtr load(const ModelArgs& a) {
    cs_model* raw = nullptr;
    const cs_status st = cs_model_load(a.path.c_str(), &raw);
    if (st != CS_OK) throw Failure{exit_for(st), a.path + ":" + cs_last_error_message()};
    ModelPtr m(raw);
    if (a.chi) check(cs_model_set_chi(m.get(), *a.chi));
    for (const auto& s : a.alpha) {
        auto [name, value] = split_assignment(s);
        check(cs_model_set_alpha(m.get(), species_index(m.get(), name), value));
    }
    return m;
}

std::vector<cs_pin> pins_of(const cs_model* m, const ModelArgs& a) {
    std::vector<cs_pin> pins;
    for (const auto& s : a.pins) {
        auto [name, value] = split_assignment(s);
        pins.push_back({species_index(m, name), value});
    }
    return pins;
}

SteadyPtr steady(const cs_model* m, const ModelArgs& a) {
    const auto pins = pins_of(m, a);
    cs_steady_state* raw = nullptr;
    check(cs_steady_state_solve(m, a.u_star, pins.data(), pins.size(), &raw));
    return SteadyPtr(raw);
}

std::vector<double> steady_values(const cs_model* m, const cs_steady_state* ss) {
    std::vector<double> v(species_count(m));
    check(cs_steady_state_v(ss, v.data(), v.size()));
    return v;
}

void write_file(const Global& g, const std::string& name, const std::string& content) {
    fs::create_directories(g.output);
    const fs::path path = fs::path(g.output) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f.flush()) throw Failure{kInternal, "cannot write " + path.string()};
}

std::string mode_label(int i, int j) { return j < 0 ? std::to_string(i) : std::to_string(i) + ":" + std::to_string(j); }

double resolve_mu(const cs_model* m, std::optional<double> mu, std::size_t mode_index) {
    if (mu) {
        if (!(*mu < 0.0)) throw Failure{kUsage, "--mu must be negative"};
        return *mu;
    }
    if (mode_index == 0) throw Failure{kUsage, "--mode must be >= 1"};
    double out = 0.0;
    check(cs_model_neumann_mu(m, mode_index, &out, nullptr, nullptr));
    return out;
}

// check

int cmd_check(const Global& g, const ModelArgs& a) {
    auto m = load(a);
    const std::string desc = take([&] {
        char* s = nullptr;
        check(cs_model_describe(m.get(), &s));
        return s;
    }());
    const Json doc = Json::parse(desc);
    if (!g.quiet) {
        std::cout << a.path << ": " << (doc["linear"].get<bool>() ? "linear" : "nonlinear") << ", N="
                  << doc["N"].get<std::size_t>() << ", reactions=" << doc["reactions"].get<std::size_t>() << "\n";
        std::cout << "species:";
        for (const auto& s : doc["species"]) std::cout << ' ' << s.get<std::string>();
        std::cout << "\nchemoattractant: " << doc["chemoattractant"].get<std::string>() << "\n";
        if (doc["linear"].get<bool>()) {
            std::cout << "A (g(v) = -A v):\n";
            for (const auto& row : doc["A"]) {
                std::cout << ' ';
                for (const auto& x : row) std::cout << ' ' << fmt(x.get<double>());
                std::cout << '\n';
            }
            const auto& c = doc["m_matrix_checks"];
            std::cout << "nonsingular M-matrix: " << (doc["m_matrix"].get<bool>() ? "yes" : "no")
                      << " (sign pattern " << (c["sign_pattern"].get<bool>() ? "ok" : "fails") << ", nonsingular "
                      << (c["nonsingular"].get<bool>() ? "yes" : "no") << ", inverse nonnegative "
                      << (c["inverse_nonnegative"].get<bool>() ? "yes" : "no") << ")\n";
        }
    }
    if (g.report_json) std::cout << desc;
    if (!g.output.empty()) write_file(g, "check.json", desc);
    return kOk;
}

// analyze

int cmd_analyze(const Global& g, const ModelArgs& a, bool include_homogeneous) {
    auto m = load(a);
    auto ss = steady(m.get(), a);
    cs_report* raw = nullptr;
    check(cs_analyze(m.get(), ss.get(), g.modes, include_homogeneous ? 1 : 0, &raw));
    ReportPtr r(raw);

    int unstable = 0, marginal = 0, di = 0, dj = -1, s1 = 0, s2 = 0, certified = 0;
    double max_re = 0.0, dmu = 0.0, cutoff = 0.0;
    check(cs_report_unstable(r.get(), &unstable));
    check(cs_report_marginal(r.get(), &marginal));
    check(cs_report_max_re(r.get(), &max_re));
    check(cs_report_dominant(r.get(), &di, &dj, &dmu));
    check(cs_report_condition(r.get(), 1, &s1));
    check(cs_report_condition(r.get(), 2, &s2));
    check(cs_report_tail(r.get(), &certified, &cutoff));

    char* s = nullptr;
    check(cs_report_to_json(r.get(), &s));
    const std::string json = take(s);
    check(cs_report_to_csv(r.get(), &s));
    const std::string csv = take(s);

    if (!g.quiet) {
        double u = 0.0;
        check(cs_steady_state_u_star(ss.get(), &u));
        const auto v = steady_values(m.get(), ss.get());
        std::cout << "steady state: u*=" << fmt(u);
        for (std::size_t k = 0; k < v.size(); ++k) std::cout << ' ' << species_name(m.get(), k) << '=' << fmt(v[k]);
        std::cout << "\nmodes analysed: " << g.modes << "\n";
        std::cout << "dominant mode: " << mode_label(di, dj) << " (mu=" << fmt(dmu) << ")\n";
        std::cout << "max Re lambda: " << fmt(max_re) << "\n";
        std::cout << "irreducibility condition: " << (s1 ? "holds" : "does not hold") << "\n";
        std::cout << "path condition: " << (s2 ? "holds" : "does not hold") << "\n";
        std::cout << "tail: " << (certified ? "certified stable for mu < " + fmt(cutoff) : std::string("unverified"))
                  << "\n";
        std::cout << "verdict: " << (unstable ? "unstable" : marginal ? "marginal" : "stable") << "\n";
    }
    if (g.report_json) std::cout << json;
    if (!g.output.empty()) {
        write_file(g, "report.json", json);
        write_file(g, "report.csv", csv);
    }
    return unstable ? kUnstable : kOk;
}

// sweep

struct SweepArgs {
    std::string param = "chi";
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 16;
    bool log = false;
    std::optional<double> mu;
    std::size_t mode = 1;
};

std::vector<double> sweep_grid(const SweepArgs& s) {
    if (s.points < 2) throw Failure{kUsage, "--points must be at least 2"};
    if (!std::isfinite(s.from) || !std::isfinite(s.to) || !(s.from < s.to)) {
        throw Failure{kUsage, "grid needs finite --from < --to"};
    }
    if (s.log && !(s.from > 0.0)) throw Failure{kUsage, "a logarithmic grid needs --from > 0"};
    std::vector<double> grid;
    for (std::size_t k = 0; k < s.points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(s.points - 1);
        grid.push_back(s.log ? std::exp(std::log(s.from) + t * (std::log(s.to) - std::log(s.from)))
                             : s.from + t * (s.to - s.from));
    }
    grid.back() = s.to;
    return grid;
}

std::string threshold_text(const cs_threshold& t) {
    switch (t.status) {
        case CS_THRESHOLD_FOUND: return fmt(t.value);
        case CS_THRESHOLD_UNSTABLE_AT_MINIMUM: return fmt(t.value);
        default: return "none";
    }
}

std::string threshold_status(const cs_threshold& t) {
    switch (t.status) {
        case CS_THRESHOLD_FOUND: return "found";
        case CS_THRESHOLD_UNSTABLE_AT_MINIMUM: return "unstable_at_minimum";
        default: return "none";
    }
}

int cmd_sweep(const Global& g, const ModelArgs& a, const SweepArgs& s) {
    std::optional<std::size_t> alpha_species;
    std::string alpha_name;
    if (s.param.rfind("alpha:", 0) == 0) {
        alpha_name = s.param.substr(6);
    } else if (s.param != "chi") {
        throw Failure{kUsage, "--param must be chi or alpha:NAME"};
    }
    const auto grid = sweep_grid(s);
    auto m = load(a);
    if (!alpha_name.empty()) alpha_species = species_index(m.get(), alpha_name);
    const double mu = resolve_mu(m.get(), s.mu, s.mode);
    const auto pins = pins_of(m.get(), a);
    int trimolecular = 0;
    check(cs_model_is_trimolecular(m.get(), &trimolecular));

    cs_threshold threshold{};
    if (alpha_species) {
        check(cs_critical_alpha(m.get(), a.u_star, pins.data(), pins.size(), mu, *alpha_species, &threshold));
    } else {
        auto ss = steady(m.get(), a);
        check(cs_critical_chi(m.get(), ss.get(), mu, &threshold));
    }

    std::ostringstream csv;
    csv << "value,max_re,threshold,threshold_status";
    if (trimolecular) csv << ",K,det_M,K0";
    csv << '\n';
    Json rows = Json::array();
    for (double value : grid) {
        if (alpha_species) {
            check(cs_model_set_alpha(m.get(), *alpha_species, value));
        } else {
            check(cs_model_set_chi(m.get(), value));
        }
        auto ss = steady(m.get(), a);
        double max_re = 0.0;
        check(cs_mode_max_re(m.get(), ss.get(), mu, &max_re));
        csv << fmt(value) << ',' << fmt(max_re) << ',' << threshold_text(threshold) << ','
            << threshold_status(threshold);
        Json row = {{"value", value}, {"max_re", max_re}};
        if (trimolecular) {
            double chi = 0.0, u = 0.0;
            check(cs_model_get_chi(m.get(), &chi));
            check(cs_steady_state_u_star(ss.get(), &u));
            const double K = -mu * chi * u;
            cs_trimolecular d{};
            check(cs_trimolecular_determinant(m.get(), ss.get(), mu, K, &d));
            csv << ',' << fmt(K) << ',' << fmt(d.det) << ',' << fmt(d.K0);
            row["K"] = K;
            row["det_M"] = d.det;
            row["K0"] = d.K0;
        }
        csv << '\n';
        rows.push_back(row);
    }
    Json doc = {{"parameter", s.param},
                {"mu", mu},
                {"threshold", threshold.status == CS_THRESHOLD_NONE ? Json(nullptr) : Json(threshold.value)},
                {"threshold_status", threshold_status(threshold)},
                {"rows", rows}};
    if (!g.quiet) std::cout << csv.str();
    if (g.report_json) std::cout << doc.dump(2) << '\n';
    if (!g.output.empty()) {
        write_file(g, "sweep.csv", csv.str());
        write_file(g, "sweep.json", doc.dump(2) + "\n");
    }
    return kOk;
}

// simulate

struct SimArgs {
    std::size_t n = 256;
    std::optional<double> dt;
    double t_end = 10.0;
    std::size_t sample_every = 10;
    std::optional<double> amplitude;
    int mode = 1;
    std::string window;
    bool snapshots = false;
};

std::pair<double, double> parse_window(const std::string& w) {
    const auto colon = w.find(':');
    if (colon == std::string::npos) throw Failure{kUsage, "--window expects T0:T1"};
    try {
        std::size_t used = 0;
        const double t0 = std::stod(w.substr(0, colon), &used);
        const double t1 = std::stod(w.substr(colon + 1));
        if (!(t0 < t1)) throw Failure{kUsage, "--window needs T0 < T1"};
        return {t0, t1};
    } catch (const std::logic_error&) {
        throw Failure{kUsage, "--window expects T0:T1"};
    }
}

int cmd_simulate(const Global& g, const ModelArgs& a, const SimArgs& s) {
    std::optional<std::pair<double, double>> window;
    if (!s.window.empty()) window = parse_window(s.window);
    auto m = load(a);
    auto ss = steady(m.get(), a);
    double bound = 0.0;
    check(cs_max_stable_dt(m.get(), s.n, &bound));
    cs_sim_options opt{};
    opt.n = s.n;
    opt.dt = s.dt.value_or(bound);
    opt.t_end = s.t_end;
    opt.sample_every = s.sample_every;
    opt.amplitude = s.amplitude.value_or(1e-4 * a.u_star);
    opt.mode = s.mode;
    opt.keep_snapshots = s.snapshots && !g.output.empty();
    cs_trajectory* raw = nullptr;
    const cs_status st = cs_simulate(m.get(), ss.get(), &opt, &raw);
    if (st == CS_ERR_TIME_STEP) {
        throw Failure{kUsage, std::string(cs_last_error_message()) + "; use --dt " + fmt(cs_last_error_dt_bound()) +
                                  " or smaller"};
    }
    check(st);
    TrajectoryPtr t(raw);

    int diverged = 0;
    double diverged_at = 0.0, min_u = 0.0;
    std::size_t count = 0;
    check(cs_trajectory_diverged(t.get(), &diverged, &diverged_at));
    check(cs_trajectory_sample_count(t.get(), &count));
    check(cs_trajectory_min_u(t.get(), &min_u));
    double t_first = 0.0, m_first = 0.0, t_last = 0.0, m_last = 0.0, amp_last = 0.0, dev_last = 0.0;
    check(cs_trajectory_sample(t.get(), 0, &t_first, &m_first, nullptr, nullptr));
    check(cs_trajectory_sample(t.get(), count - 1, &t_last, &m_last, &amp_last, &dev_last));
    const double drift = m_first != 0.0 ? std::abs(m_last - m_first) / std::abs(m_first) : std::abs(m_last);

    std::optional<double> rate;
    if (window && !diverged) {
        double r = 0.0;
        check(cs_trajectory_growth_rate(t.get(), window->first, window->second, &r));
        rate = r;
    }

    char* csv_raw = nullptr;
    check(cs_trajectory_to_csv(t.get(), &csv_raw));
    const std::string csv = take(csv_raw);

    Json doc = {{"n", s.n},
                {"dt", opt.dt},
                {"dt_bound", bound},
                {"t_end", s.t_end},
                {"samples", count},
                {"diverged", diverged != 0},
                {"diverged_at", diverged ? Json(diverged_at) : Json(nullptr)},
                {"final_time", t_last},
                {"relative_mass_drift", drift},
                {"min_u", min_u},
                {"final_mode_amplitude", amp_last},
                {"final_max_deviation", dev_last},
                {"growth_rate", rate ? Json(*rate) : Json(nullptr)}};
    if (!g.quiet) {
        std::cout << "cells: " << s.n << ", dt: " << fmt(opt.dt) << " (bound " << fmt(bound) << "), samples: " << count
                  << "\n";
        if (diverged) std::cout << "diverged at t=" << fmt(diverged_at) << "\n";
        std::cout << "final t: " << fmt(t_last) << ", relative mass drift: " << fmt(drift) << ", min u: " << fmt(min_u)
                  << "\n";
        std::cout << "mode " << s.mode << " amplitude: " << fmt(amp_last) << ", max deviation: " << fmt(dev_last)
                  << "\n";
        if (rate) std::cout << "growth rate: " << fmt(*rate) << "\n";
    }
    if (g.report_json) std::cout << doc.dump(2) << '\n';
    if (!g.output.empty()) {
        write_file(g, "trajectory.csv", csv);
        write_file(g, "simulation.json", doc.dump(2) + "\n");
        if (s.snapshots) {
            const fs::path path = fs::path(g.output) / "snapshots.bin";
            check(cs_trajectory_write_snapshots(t.get(), path.string().c_str()));
        }
    }
    return diverged ? kDiverged : kOk;
}

// crosscheck

int cmd_crosscheck(const Global& g, const ModelArgs& a, std::size_t n) {
    auto m = load(a);
    auto ss = steady(m.get(), a);
    double distance = 0.0;
    check(cs_crosscheck(m.get(), ss.get(), n, &distance));
    const bool ok = distance <= 1e-6;
    if (!g.quiet) {
        std::cout << "cells: " << n << "\nhausdorff distance: " << fmt(distance) << "\n"
                  << (ok ? "agreement within 1e-6" : "disagreement above 1e-6") << "\n";
    }
    Json doc = {{"n", n}, {"hausdorff_distance", distance}, {"ok", ok}};
    if (g.report_json) std::cout << doc.dump(2) << '\n';
    if (!g.output.empty()) write_file(g, "crosscheck.json", doc.dump(2) + "\n");
    return ok ? kOk : kUnstable;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear stability of chemotaxis models coupled to mass-action reaction networks"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--output", g.output, "directory for report, CSV and snapshot files");
    app.add_flag("--report-json", g.report_json, "print the structured JSON report to stdout");
    app.add_option("--modes", g.modes, "number of Neumann modes to analyse")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "suppress human-readable output");

    ModelArgs check_args, analyze_args, sweep_args, sim_args, cross_args;
    auto* check_cmd = app.add_subcommand("check", "parse and validate a model");
    add_model_args(check_cmd, check_args, false);

    auto* analyze_cmd = app.add_subcommand("analyze", "steady state and per-mode spectra; exit 1 when unstable");
    add_model_args(analyze_cmd, analyze_args);
    bool include_homogeneous = false;
    analyze_cmd->add_flag("--include-homogeneous", include_homogeneous, "count the mu = 0 mode in the verdict");

    auto* sweep_cmd = app.add_subcommand("sweep", "max Re lambda over a parameter grid plus the bisected threshold");
    add_model_args(sweep_cmd, sweep_args);
    SweepArgs sweep;
    sweep_cmd->add_option("--param", sweep.param, "chi or alpha:NAME")->capture_default_str();
    sweep_cmd->add_option("--from", sweep.from, "grid start")->required();
    sweep_cmd->add_option("--to", sweep.to, "grid end")->required();
    sweep_cmd->add_option("--points", sweep.points, "grid points")->capture_default_str();
    sweep_cmd->add_flag("--log", sweep.log, "logarithmic grid");
    sweep_cmd->add_option("--mu", sweep.mu, "Laplacian eigenvalue (negative)");
    sweep_cmd->add_option("--mode", sweep.mode, "use the k-th Neumann eigenvalue when --mu is absent")
        ->capture_default_str();

    auto* sim_cmd = app.add_subcommand("simulate", "integrate the nonlinear system on an interval");
    add_model_args(sim_cmd, sim_args);
    SimArgs sim;
    sim_cmd->add_option("--n", sim.n, "cells")->capture_default_str();
    sim_cmd->add_option("--dt", sim.dt, "time step (default: the stability bound)");
    sim_cmd->add_option("--t-end", sim.t_end, "final time")->capture_default_str();
    sim_cmd->add_option("--sample-every", sim.sample_every, "steps between samples")->capture_default_str();
    sim_cmd->add_option("--amplitude", sim.amplitude, "cosine perturbation of u (default 1e-4 u*)");
    sim_cmd->add_option("--mode", sim.mode, "perturbed and tracked mode")->capture_default_str();
    sim_cmd->add_option("--window", sim.window, "T0:T1 window for the growth-rate fit");
    sim_cmd->add_flag("--snapshots", sim.snapshots, "write snapshots.bin into --output");

    auto* cross_cmd = app.add_subcommand("crosscheck", "compare the discretized operator with the mode spectra");
    add_model_args(cross_cmd, cross_args);
    std::size_t cross_n = 64;
    cross_cmd->add_option("--n", cross_n, "cells (<= 128)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }

    try {
        if (*check_cmd) return cmd_check(g, check_args);
        if (*analyze_cmd) return cmd_analyze(g, analyze_args, include_homogeneous);
        if (*sweep_cmd) return cmd_sweep(g, sweep_args, sweep);
        if (*sim_cmd) return cmd_simulate(g, sim_args, sim);
        if (*cross_cmd) return cmd_crosscheck(g, cross_args, cross_n);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
