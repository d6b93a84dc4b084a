#include <sstream>

#include "chemostab/report.hpp"
#include "chemostab/steady_state.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

using namespace chemostab;
using Json = nlohmann::json;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("report JSON") {
    ModelSpec m = testing::bundled("dimerization.model");
    m.chi = 10;
    const auto ss = solve_steady_state(m, 2.0);
    const auto rep = stability_verdict(m, ss, 12);
    const Json doc = Json::parse(report_json(rep, m, ss));
    CHECK(doc["species"] == Json::array({"v1", "v2"}));
    CHECK(doc["chemoattractant"] == "v2");
    CHECK(doc["chi"] == 10.0);
    CHECK(doc["steady_state"]["u_star"] == 2.0);
    CHECK(doc["steady_state"]["v_star"][0].get<double>() == ss.v_star[0]);
    CHECK(doc["unstable"] == rep.unstable);
    CHECK(doc["overall_max_re"].get<double>() == rep.overall_max_re);
    CHECK(doc["dominant_mode"] == rep.dominant_mode.str());
    CHECK(doc["suff1"]["applicable"] == true);
    CHECK(doc["suff1"]["i_star"] == 0);
    CHECK(doc["tail"]["certified"] == rep.tail.certified);
    REQUIRE(doc["modes"].size() == 12);
    CHECK(doc["modes"][3]["mu"] == -9.0);
    CHECK(doc["modes"][3]["eigenvalues"].size() == 3);
    CHECK(doc["modes"][3]["max_re"].get<double>() == rep.per_mode[3].max_re);
}

TEST_CASE("report JSON writes null for non-finite values") {
    const ModelSpec m = testing::bundled("minimal_ks.model");
    const auto ss = solve_steady_state(m, 1.0);
    auto rep = stability_verdict(m, ss, 4);
    rep.homogeneous_max_re = std::numeric_limits<double>::infinity();
    const Json doc = Json::parse(report_json(rep, m, ss));
    CHECK(doc["homogeneous_max_re"].is_null());
}

TEST_CASE("report CSV") {
    const ModelSpec m = testing::bundled("minimal_ks.model");
    const auto rep = stability_verdict(m, solve_steady_state(m, 1.0), 5);
    const auto l = lines(report_csv(rep));
    REQUIRE(l.size() == 6);
    CHECK(l[0] == "mode_id,mu,max_re,abs_im_at_max");
    CHECK(l[1].rfind("0,0,", 0) == 0);
    CHECK(l[2].rfind("1,-1,", 0) == 0);
    CHECK(l[5].rfind("4,-16,", 0) == 0);
    // mode 1 of the minimal model: (-3 + sqrt 5) / 2, real
    std::istringstream row(l[2]);
    std::string id, mu, re, im;
    std::getline(row, id, ',');
    std::getline(row, mu, ',');
    std::getline(row, re, ',');
    std::getline(row, im, ',');
    CHECK(std::stod(re) == doctest::Approx((-3 + std::sqrt(5.0)) / 2).epsilon(1e-15));
    CHECK(std::stod(im) == 0.0);
}

TEST_CASE("rectangle mode ids in CSV") {
    ModelSpec m = testing::bundled("minimal_ks.model");
    m.domain = Rectangle{testing::kPi, testing::kPi};
    const auto l = lines(report_csv(stability_verdict(m, solve_steady_state(m, 1.0), 4)));
    CHECK(l[1].rfind("0:0,", 0) == 0);
    CHECK(l[4].rfind("1:1,-2,", 0) == 0);
}

TEST_CASE("trajectory CSV") {
    const ModelSpec m = testing::bundled("dimerization.model");
    const auto ss = solve_steady_state(m, 1.0);
    const Grid1D g = model_grid(m, 16);
    const double dt = max_stable_dt(m, g);
    const auto t = simulate(m, cosine_perturbation(ss, g, 1e-3), dt, 20 * dt, 10);
    const auto l = lines(trajectory_csv(t, m));
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "t,mass,mode_amplitude,max_deviation,mean_v1,mean_v2");
    CHECK(std::count(l[3].begin(), l[3].end(), ',') == 5);
    CHECK(l[1].rfind("0,", 0) == 0);
}

TEST_CASE("snapshot round trip") {
    const ModelSpec m = testing::bundled("trimolecular.model");
    const auto ss = solve_steady_state(m, 1.0, {Pin{1, 2.0}});
    const Grid1D g = model_grid(m, 12);
    const double dt = max_stable_dt(m, g);
    SimulationOptions opts;
    opts.keep_snapshots = true;
    const auto t = simulate(m, cosine_perturbation(ss, g, 0.1), dt, 7 * dt, 3, opts);
    std::stringstream buf;
    write_snapshots(t, 3, buf);
    CHECK(buf.str().size() == 8 * (3 + t.snapshots.size() * (1 + 12 * 4)));
    const auto back = read_snapshots(buf);
    REQUIRE(back.size() == t.snapshots.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].t == t.snapshots[k].t);
        CHECK(back[k].u == t.snapshots[k].u);
        CHECK(back[k].v == t.snapshots[k].v);
    }
    std::stringstream cut(buf.str().substr(0, 40));
    std::stringstream full(buf.str());
    CHECK_NOTHROW(read_snapshots(full));
    CHECK_THROWS_AS(read_snapshots(cut), Error);
}
