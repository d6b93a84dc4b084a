#include "chemostab/chemostab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "chemostab/crn_parser.hpp"
#include "chemostab/error.hpp"
#include "chemostab/report.hpp"
#include "chemostab/simulator.hpp"
#include "chemostab/spectral.hpp"
#include "chemostab/steady_state.hpp"
#include "json.hpp"

using namespace chemostab;

struct cs_model {
    ModelSpec spec;
};

struct cs_steady_state {
    SteadyState ss;
};

struct cs_report {
    StabilityReport report;
    ModelSpec spec;
    SteadyState ss;
};

struct cs_trajectory {
    Trajectory traj;
    ModelSpec spec;
};

namespace {

struct LastError {
    std::string message;
    int line = 0;
    int column = 0;
    double dt_bound = 0.0;
};

thread_local LastError last_error;

cs_status fail(cs_status status, const std::string& message, int line = 0, int column = 0) {
    last_error = {message, line, column, 0.0};
    return status;
}

template <class F>
cs_status guarded(F&& body) {
    try {
        body();
        last_error = {};
        return CS_OK;
    } catch (const ParseError& e) {
        return fail(CS_ERR_PARSE, e.what(), e.line(), e.column());
    } catch (const ValidationError& e) {
        return fail(CS_ERR_VALIDATION, e.what());
    } catch (const SteadyStateError& e) {
        return fail(CS_ERR_STEADY_STATE, e.what());
    } catch (const TimeStepError& e) {
        fail(CS_ERR_TIME_STEP, e.what());
        last_error.dt_bound = e.bound();
        return CS_ERR_TIME_STEP;
    } catch (const PreconditionError& e) {
        return fail(CS_ERR_PRECONDITION, e.what());
    } catch (const DimensionError& e) {
        return fail(CS_ERR_DIMENSION, e.what());
    } catch (const NumericalError& e) {
        return fail(CS_ERR_NUMERICAL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CS_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

#define CS_REQUIRE(cond)                                                          \
    do {                                                                          \
        if (!(cond)) return fail(CS_ERR_INVALID_ARGUMENT, "invalid argument: " #cond); \
    } while (0)

std::vector<Pin> to_pins(const cs_pin* pins, std::size_t count) {
    std::vector<Pin> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back({pins[k].species, pins[k].value});
    return out;
}

cs_threshold to_c(const Threshold& t) {
    cs_threshold out{};
    out.value = t.value;
    switch (t.status) {
        case ThresholdStatus::found: out.status = CS_THRESHOLD_FOUND; break;
        case ThresholdStatus::unstable_at_minimum: out.status = CS_THRESHOLD_UNSTABLE_AT_MINIMUM; break;
        case ThresholdStatus::none: out.status = CS_THRESHOLD_NONE; break;
    }
    return out;
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "0.1.0"; }

const char* cs_status_name(cs_status status) {
    switch (status) {
        case CS_OK: return "ok";
        case CS_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CS_ERR_PARSE: return "parse error";
        case CS_ERR_VALIDATION: return "validation error";
        case CS_ERR_STEADY_STATE: return "steady-state failure";
        case CS_ERR_PRECONDITION: return "precondition violated";
        case CS_ERR_TIME_STEP: return "time step too large";
        case CS_ERR_DIMENSION: return "dimension mismatch";
        case CS_ERR_NUMERICAL: return "numerical failure";
        case CS_ERR_IO: return "i/o error";
        case CS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cs_last_error_message(void) { return last_error.message.c_str(); }
int cs_last_error_line(void) { return last_error.line; }
int cs_last_error_column(void) { return last_error.column; }
double cs_last_error_dt_bound(void) { return last_error.dt_bound; }

void cs_string_free(char* s) { std::free(s); }

cs_status cs_model_load(const char* path, cs_model** out) {
    CS_REQUIRE(path && out);
    *out = nullptr;
    {
        std::ifstream probe(path);
        if (!probe) return fail(CS_ERR_IO, std::string("cannot open ") + path);
    }
    return guarded([&] { *out = new cs_model{load_model(path)}; });
}

cs_status cs_model_parse(const char* text, const char* base_dir, cs_model** out) {
    CS_REQUIRE(text && out);
    *out = nullptr;
    return guarded([&] { *out = new cs_model{parse_model(text, base_dir ? base_dir : "")}; });
}

void cs_model_free(cs_model* m) { delete m; }

cs_status cs_model_species_count(const cs_model* m, size_t* out) {
    CS_REQUIRE(m && out);
    *out = m->spec.species_count();
    return CS_OK;
}

cs_status cs_model_reaction_count(const cs_model* m, size_t* out) {
    CS_REQUIRE(m && out);
    *out = m->spec.network.reactions().size();
    return CS_OK;
}

cs_status cs_model_species_name(const cs_model* m, size_t index, const char** out) {
    CS_REQUIRE(m && out);
    if (index >= m->spec.species_count()) return fail(CS_ERR_DIMENSION, "species index out of range");
    *out = m->spec.network.species()[index].name.c_str();
    return CS_OK;
}

cs_status cs_model_species_index(const cs_model* m, const char* name, size_t* out) {
    CS_REQUIRE(m && name && out);
    auto idx = m->spec.network.find_species(name);
    if (!idx) return fail(CS_ERR_INVALID_ARGUMENT, std::string("unknown species '") + name + "'");
    *out = *idx;
    return CS_OK;
}

cs_status cs_model_chemoattractant(const cs_model* m, size_t* out) {
    CS_REQUIRE(m && out);
    *out = m->spec.chemoattractant;
    return CS_OK;
}

cs_status cs_model_get_chi(const cs_model* m, double* out) {
    CS_REQUIRE(m && out);
    *out = m->spec.chi;
    return CS_OK;
}

cs_status cs_model_set_chi(cs_model* m, double chi) {
    CS_REQUIRE(m);
    return guarded([&] {
        ModelSpec copy = m->spec;
        copy.chi = chi;
        copy.validate();
        m->spec = std::move(copy);
    });
}

cs_status cs_model_get_alpha(const cs_model* m, size_t species, double* out) {
    CS_REQUIRE(m && out);
    if (species >= m->spec.species_count()) return fail(CS_ERR_DIMENSION, "species index out of range");
    *out = m->spec.alpha[static_cast<Eigen::Index>(species)];
    return CS_OK;
}

cs_status cs_model_set_alpha(cs_model* m, size_t species, double value) {
    CS_REQUIRE(m);
    if (species >= m->spec.species_count()) return fail(CS_ERR_DIMENSION, "species index out of range");
    return guarded([&] {
        ModelSpec copy = m->spec;
        copy.alpha[static_cast<Eigen::Index>(species)] = value;
        copy.validate();
        m->spec = std::move(copy);
    });
}

cs_status cs_model_is_linear(const cs_model* m, int* out) {
    CS_REQUIRE(m && out);
    return guarded([&] { *out = extract_linear(m->spec.network).has_value() ? 1 : 0; });
}

cs_status cs_model_linear_part(const cs_model* m, double* A, size_t len, int* is_m_matrix) {
    CS_REQUIRE(m && A);
    const std::size_t N = m->spec.species_count();
    if (len < N * N) return fail(CS_ERR_DIMENSION, "output buffer shorter than N*N");
    auto lin = extract_linear(m->spec.network);
    if (!lin) return fail(CS_ERR_PRECONDITION, "network is not linear");
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) A[r * N + c] = lin->A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    if (is_m_matrix) *is_m_matrix = is_nonsingular_m_matrix(lin->A) ? 1 : 0;
    return CS_OK;
}

cs_status cs_model_describe(const cs_model* m, char** json) {
    CS_REQUIRE(m && json);
    *json = nullptr;
    return guarded([&] {
        const auto& spec = m->spec;
        nlohmann::ordered_json doc;
        nlohmann::ordered_json species = nlohmann::ordered_json::array();
        for (const auto& s : spec.network.species()) species.push_back(s.name);
        doc["N"] = spec.species_count();
        doc["reactions"] = spec.network.reactions().size();
        doc["species"] = species;
        doc["chemoattractant"] = spec.network.species()[spec.chemoattractant].name;
        auto lin = extract_linear(spec.network);
        doc["linear"] = lin.has_value();
        if (lin) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (Eigen::Index r = 0; r < lin->A.rows(); ++r) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (Eigen::Index c = 0; c < lin->A.cols(); ++c) row.push_back(lin->A(r, c));
                rows.push_back(row);
            }
            const MMatrixCheck check = check_nonsingular_m_matrix(lin->A);
            doc["A"] = rows;
            doc["m_matrix"] = check.ok();
            doc["m_matrix_checks"] = {{"sign_pattern", check.sign_pattern},
                                      {"nonsingular", check.nonsingular},
                                      {"inverse_nonnegative", check.inverse_nonnegative}};
        }
        *json = dup_string(doc.dump(2) + "\n");
    });
}

cs_status cs_model_crn(const cs_model* m, char** text) {
    CS_REQUIRE(m && text);
    *text = nullptr;
    return guarded([&] { *text = dup_string(serialize_crn(m->spec.network)); });
}

cs_status cs_model_neumann_mu(const cs_model* m, size_t k, double* mu, int* i, int* j) {
    CS_REQUIRE(m && mu);
    return guarded([&] {
        const auto spec = neumann_eigenvalues(m->spec.domain, k + 1);
        *mu = spec.mu[k];
        if (i) *i = spec.modes[k].i;
        if (j) *j = spec.modes[k].j;
    });
}

cs_status cs_steady_state_solve(const cs_model* m, double u_star, const cs_pin* pins, size_t pin_count,
                                cs_steady_state** out) {
    CS_REQUIRE(m && out && (pins || pin_count == 0));
    *out = nullptr;
    return guarded([&] { *out = new cs_steady_state{solve_steady_state(m->spec, u_star, to_pins(pins, pin_count))}; });
}

void cs_steady_state_free(cs_steady_state* ss) { delete ss; }

cs_status cs_steady_state_u_star(const cs_steady_state* ss, double* out) {
    CS_REQUIRE(ss && out);
    *out = ss->ss.u_star;
    return CS_OK;
}

cs_status cs_steady_state_v(const cs_steady_state* ss, double* v, size_t len) {
    CS_REQUIRE(ss && v);
    if (len < static_cast<std::size_t>(ss->ss.v_star.size())) return fail(CS_ERR_DIMENSION, "output buffer too short");
    for (Eigen::Index k = 0; k < ss->ss.v_star.size(); ++k) v[k] = ss->ss.v_star[k];
    return CS_OK;
}

cs_status cs_steady_state_residual(const cs_steady_state* ss, double* out) {
    CS_REQUIRE(ss && out);
    *out = ss->ss.residual_norm;
    return CS_OK;
}

cs_status cs_steady_state_iterations(const cs_steady_state* ss, int* out) {
    CS_REQUIRE(ss && out);
    *out = ss->ss.iterations;
    return CS_OK;
}

cs_status cs_mode_max_re(const cs_model* m, const cs_steady_state* ss, double mu, double* out) {
    CS_REQUIRE(m && ss && out);
    return guarded([&] { *out = mode_max_real_part(m->spec, ss->ss, mu); });
}

cs_status cs_critical_chi(const cs_model* m, const cs_steady_state* ss, double mu, cs_threshold* out) {
    CS_REQUIRE(m && ss && out);
    return guarded([&] { *out = to_c(critical_chi(m->spec, ss->ss, mu)); });
}

cs_status cs_critical_alpha(const cs_model* m, double u_star, const cs_pin* pins, size_t pin_count, double mu,
                            size_t species, cs_threshold* out) {
    CS_REQUIRE(m && out && (pins || pin_count == 0));
    return guarded([&] { *out = to_c(critical_alpha(m->spec, u_star, to_pins(pins, pin_count), mu, species)); });
}

cs_status cs_model_is_trimolecular(const cs_model* m, int* out) {
    CS_REQUIRE(m && out);
    *out = is_trimolecular(m->spec) ? 1 : 0;
    return CS_OK;
}

cs_status cs_trimolecular_determinant(const cs_model* m, const cs_steady_state* ss, double mu, double K,
                                      cs_trimolecular* out) {
    CS_REQUIRE(m && ss && out);
    return guarded([&] {
        const auto d = trimolecular_determinant(m->spec, ss->ss, mu, K);
        *out = {d.det, d.C, d.slope, d.K0, d.cubic.b2, d.cubic.b1, d.cubic.b0};
    });
}

cs_status cs_analyze(const cs_model* m, const cs_steady_state* ss, size_t mode_count, int include_homogeneous_mode,
                     cs_report** out) {
    CS_REQUIRE(m && ss && out);
    *out = nullptr;
    return guarded([&] {
        StabilityOptions opts;
        opts.include_homogeneous_mode = include_homogeneous_mode != 0;
        *out = new cs_report{stability_verdict(m->spec, ss->ss, mode_count, opts), m->spec, ss->ss};
    });
}

void cs_report_free(cs_report* r) { delete r; }

cs_status cs_report_unstable(const cs_report* r, int* out) {
    CS_REQUIRE(r && out);
    *out = r->report.unstable ? 1 : 0;
    return CS_OK;
}

cs_status cs_report_marginal(const cs_report* r, int* out) {
    CS_REQUIRE(r && out);
    *out = r->report.marginal ? 1 : 0;
    return CS_OK;
}

cs_status cs_report_max_re(const cs_report* r, double* out) {
    CS_REQUIRE(r && out);
    *out = r->report.overall_max_re;
    return CS_OK;
}

cs_status cs_report_dominant(const cs_report* r, int* i, int* j, double* mu) {
    CS_REQUIRE(r);
    if (i) *i = r->report.dominant_mode.i;
    if (j) *j = r->report.dominant_mode.j;
    if (mu) *mu = r->report.dominant_mu;
    return CS_OK;
}

cs_status cs_report_mode_count(const cs_report* r, size_t* out) {
    CS_REQUIRE(r && out);
    *out = r->report.per_mode.size();
    return CS_OK;
}

cs_status cs_report_mode(const cs_report* r, size_t k, double* mu, double* max_re, double* abs_im) {
    CS_REQUIRE(r);
    if (k >= r->report.per_mode.size()) return fail(CS_ERR_DIMENSION, "mode index out of range");
    const auto& m = r->report.per_mode[k];
    if (mu) *mu = m.mu;
    if (max_re) *max_re = m.max_re;
    if (abs_im) *abs_im = m.abs_im_at_max;
    return CS_OK;
}

cs_status cs_report_condition(const cs_report* r, int which, int* applicable) {
    CS_REQUIRE(r && applicable && (which == 1 || which == 2));
    *applicable = (which == 1 ? r->report.suff1 : r->report.suff2).applicable ? 1 : 0;
    return CS_OK;
}

cs_status cs_report_tail(const cs_report* r, int* certified, double* cutoff_mu) {
    CS_REQUIRE(r);
    if (certified) *certified = r->report.tail.certified ? 1 : 0;
    if (cutoff_mu) *cutoff_mu = r->report.tail.cutoff_mu;
    return CS_OK;
}

cs_status cs_report_to_json(const cs_report* r, char** out) {
    CS_REQUIRE(r && out);
    *out = nullptr;
    return guarded([&] { *out = dup_string(report_json(r->report, r->spec, r->ss)); });
}

cs_status cs_report_to_csv(const cs_report* r, char** out) {
    CS_REQUIRE(r && out);
    *out = nullptr;
    return guarded([&] { *out = dup_string(report_csv(r->report)); });
}

cs_status cs_max_stable_dt(const cs_model* m, size_t n, double* out) {
    CS_REQUIRE(m && out);
    return guarded([&] { *out = max_stable_dt(m->spec, model_grid(m->spec, n)); });
}

cs_status cs_simulate(const cs_model* m, const cs_steady_state* ss, const cs_sim_options* options,
                      cs_trajectory** out) {
    CS_REQUIRE(m && ss && options && out);
    *out = nullptr;
    return guarded([&] {
        const Grid1D grid = model_grid(m->spec, options->n);
        const State ic = cosine_perturbation(ss->ss, grid, options->amplitude, options->mode);
        SimulationOptions so;
        so.tracked_mode = options->mode;
        so.keep_snapshots = options->keep_snapshots != 0;
        so.reference = ss->ss;
        *out = new cs_trajectory{simulate(m->spec, ic, options->dt, options->t_end, options->sample_every, so), m->spec};
    });
}

void cs_trajectory_free(cs_trajectory* t) { delete t; }

cs_status cs_trajectory_diverged(const cs_trajectory* t, int* diverged, double* at) {
    CS_REQUIRE(t);
    if (diverged) *diverged = t->traj.diverged ? 1 : 0;
    if (at) *at = t->traj.diverged_at;
    return CS_OK;
}

cs_status cs_trajectory_sample_count(const cs_trajectory* t, size_t* out) {
    CS_REQUIRE(t && out);
    *out = t->traj.samples.size();
    return CS_OK;
}

cs_status cs_trajectory_sample(const cs_trajectory* t, size_t k, double* time, double* mass, double* amplitude,
                               double* max_deviation) {
    CS_REQUIRE(t);
    if (k >= t->traj.samples.size()) return fail(CS_ERR_DIMENSION, "sample index out of range");
    const auto& s = t->traj.samples[k];
    if (time) *time = s.t;
    if (mass) *mass = s.mass;
    if (amplitude) *amplitude = s.mode_amplitude;
    if (max_deviation) *max_deviation = s.max_deviation;
    return CS_OK;
}

cs_status cs_trajectory_min_u(const cs_trajectory* t, double* out) {
    CS_REQUIRE(t && out);
    *out = t->traj.min_u;
    return CS_OK;
}

cs_status cs_trajectory_growth_rate(const cs_trajectory* t, double t0, double t1, double* out) {
    CS_REQUIRE(t && out);
    return guarded([&] { *out = growth_rate(t->traj, t0, t1); });
}

cs_status cs_trajectory_to_csv(const cs_trajectory* t, char** out) {
    CS_REQUIRE(t && out);
    *out = nullptr;
    return guarded([&] { *out = dup_string(trajectory_csv(t->traj, t->spec)); });
}

cs_status cs_trajectory_write_snapshots(const cs_trajectory* t, const char* path) {
    CS_REQUIRE(t && path);
    std::ofstream f(path, std::ios::binary);
    if (!f) return fail(CS_ERR_IO, std::string("cannot write ") + path);
    cs_status st = guarded([&] { write_snapshots(t->traj, t->spec.species_count(), f); });
    if (st == CS_OK && !f.flush()) return fail(CS_ERR_IO, std::string("write failed: ") + path);
    return st;
}

cs_status cs_crosscheck(const cs_model* m, const cs_steady_state* ss, size_t n, double* distance) {
    CS_REQUIRE(m && ss && distance);
    return guarded([&] { *distance = discrete_cross_check(m->spec, ss->ss, model_grid(m->spec, n)).hausdorff_distance; });
}

}  // extern "C"
