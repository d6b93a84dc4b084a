#include "chemostab/report.hpp"

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

#include "chemostab/error.hpp"
#include "chemostab/format.hpp"
#include "json.hpp"

namespace chemostab {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    return x;
}

Json vector_json(const Vector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number(v[i]));
    return arr;
}

Json condition_json(const ConditionReport& c) {
    Json j;
    j["applicable"] = c.applicable;
    j["positive_steady_state"] = c.positive_steady_state;
    j["alpha_positive"] = c.alpha_positive;
    j["metzler"] = c.metzler;
    if (c.irreducible) j["irreducible"] = *c.irreducible;
    if (c.path_exists) j["path_exists"] = *c.path_exists;
    j["i_star"] = c.i_star ? Json(*c.i_star) : Json(nullptr);
    j["reason"] = c.reason;
    return j;
}

void put_i64(std::ostream& out, std::int64_t x) { out.write(reinterpret_cast<const char*>(&x), sizeof x); }
void put_f64(std::ostream& out, double x) { out.write(reinterpret_cast<const char*>(&x), sizeof x); }

std::int64_t get_i64(std::istream& in) {
    std::int64_t x = 0;
    if (!in.read(reinterpret_cast<char*>(&x), sizeof x)) throw Error("truncated snapshot file");
    return x;
}
double get_f64(std::istream& in) {
    double x = 0;
    if (!in.read(reinterpret_cast<char*>(&x), sizeof x)) throw Error("truncated snapshot file");
    return x;
}

}  // namespace

std::string report_json(const StabilityReport& report, const ModelSpec& model, const SteadyState& ss) {
    Json doc;
    Json species = Json::array();
    for (const auto& s : model.network.species()) species.push_back(s.name);
    doc["species"] = species;
    doc["chemoattractant"] = model.network.species()[model.chemoattractant].name;
    doc["chi"] = number(model.chi);
    doc["steady_state"] = {{"u_star", number(ss.u_star)},
                           {"v_star", vector_json(ss.v_star)},
                           {"residual_norm", number(ss.residual_norm)},
                           {"iterations", ss.iterations}};
    doc["unstable"] = report.unstable;
    doc["marginal"] = report.marginal;
    doc["overall_max_re"] = number(report.overall_max_re);
    doc["dominant_mode"] = report.dominant_mode.str();
    doc["dominant_mu"] = number(report.dominant_mu);
    doc["homogeneous_max_re"] = number(report.homogeneous_max_re);
    doc["include_homogeneous_mode"] = report.include_homogeneous_mode;
    doc["suff1"] = condition_json(report.suff1);
    doc["suff2"] = condition_json(report.suff2);
    doc["tail"] = {{"certified", report.tail.certified},
                   {"cutoff_mu", number(report.tail.cutoff_mu)},
                   {"last_computed_mu", number(report.tail.last_computed_mu)},
                   {"scaling", number(report.tail.scaling)}};
    Json modes = Json::array();
    for (const auto& m : report.per_mode) {
        Json eig = Json::array();
        for (const auto& z : m.eigenvalues) eig.push_back(Json::array({number(z.real()), number(z.imag())}));
        modes.push_back({{"mode", m.mode.str()},
                         {"mu", number(m.mu)},
                         {"max_re", number(m.max_re)},
                         {"abs_im_at_max", number(m.abs_im_at_max)},
                         {"eigenvalues", eig}});
    }
    doc["modes"] = modes;
    return doc.dump(2) + "\n";
}

std::string report_csv(const StabilityReport& report) {
    std::ostringstream out;
    out << "mode_id,mu,max_re,abs_im_at_max\n";
    for (const auto& m : report.per_mode) {
        out << m.mode.str() << ',' << format_double(m.mu) << ',' << format_double(m.max_re) << ','
            << format_double(m.abs_im_at_max) << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const Trajectory& traj, const ModelSpec& model) {
    std::ostringstream out;
    out << "t,mass,mode_amplitude,max_deviation";
    for (const auto& s : model.network.species()) out << ",mean_" << s.name;
    out << '\n';
    for (const auto& s : traj.samples) {
        out << format_double(s.t) << ',' << format_double(s.mass) << ',' << format_double(s.mode_amplitude) << ','
            << format_double(s.max_deviation);
        for (Eigen::Index k = 0; k < s.species_means.size(); ++k) out << ',' << format_double(s.species_means[k]);
        out << '\n';
    }
    return out.str();
}

void write_snapshots(const Trajectory& traj, std::size_t species_count, std::ostream& out) {
    put_i64(out, static_cast<std::int64_t>(traj.n));
    put_i64(out, static_cast<std::int64_t>(species_count));
    put_i64(out, static_cast<std::int64_t>(traj.snapshots.size()));
    for (const auto& s : traj.snapshots) {
        put_f64(out, s.t);
        for (Eigen::Index j = 0; j < s.u.size(); ++j) put_f64(out, s.u[j]);
        for (Eigen::Index k = 0; k < s.v.rows(); ++k) {
            for (Eigen::Index j = 0; j < s.v.cols(); ++j) put_f64(out, s.v(k, j));
        }
    }
}

std::vector<State> read_snapshots(std::istream& in) {
    const auto n = get_i64(in);
    const auto N = get_i64(in);
    const auto count = get_i64(in);
    if (n < 0 || N < 0 || count < 0) throw Error("corrupt snapshot header");
    std::vector<State> out;
    for (std::int64_t c = 0; c < count; ++c) {
        State s;
        s.t = get_f64(in);
        s.u.resize(n);
        for (std::int64_t j = 0; j < n; ++j) s.u[j] = get_f64(in);
        s.v.resize(N, n);
        for (std::int64_t k = 0; k < N; ++k) {
            for (std::int64_t j = 0; j < n; ++j) s.v(k, j) = get_f64(in);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace chemostab
