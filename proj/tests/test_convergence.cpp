#include <cmath>

#include "chemostab/simulator.hpp"
#include "chemostab/spectral.hpp"
#include "chemostab/steady_state.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace chemostab;

namespace {

double measured_rate(const ModelSpec& m, const SteadyState& ss, std::size_t n) {
    const Grid1D g = model_grid(m, n);
    // dt shrinks with h^2, samples every 0.05 time units
    const double dt = max_stable_dt(m, g);
    const auto every = static_cast<std::size_t>(std::max(1.0, std::round(0.05 / dt)));
    SimulationOptions opts;
    opts.reference = ss;
    const auto t = simulate(m, cosine_perturbation(ss, g, 1e-6, 1), dt, 10.0, every, opts);
    REQUIRE_FALSE(t.diverged);
    return growth_rate(t, 3.0, 10.0);
}

}  // namespace

TEST_CASE("growth rate converges at second order") {
    for (const char* name : {"minimal_ks.model", "dimerization.model"}) {
        CAPTURE(std::string(name));
        ModelSpec m = testing::bundled(name);
        const auto ss = solve_steady_state(m, 1.0);
        m.chi = 1.5 * critical_chi(m, ss, -1.0).value;
        const double r1 = measured_rate(m, ss, 128);
        const double r2 = measured_rate(m, ss, 256);
        const double r3 = measured_rate(m, ss, 512);
        const double ratio = (r1 - r2) / (r2 - r3);
        MESSAGE(std::string(name) << ": rates " << r1 << " " << r2 << " " << r3 << ", ratio " << ratio);
        CHECK(ratio >= 3.0);
        CHECK(ratio <= 5.0);
        CHECK(std::abs(r3 - mode_max_real_part(m, ss, -1.0)) < 1e-3);
    }
}
