#include <cmath>
#include <random>

#include "chemostab/crn_parser.hpp"
#include "chemostab/steady_state.hpp"
#include "doctest.h"
#include "matrix_oracles.hpp"
#include "support.hpp"

using namespace chemostab;

namespace {

// Positive root of a v^2 + b v - c = 0 by bisection.
double positive_root(double a, double b, double c) {
    double lo = 0.0, hi = 1.0;
    while (a * hi * hi + b * hi - c < 0) hi *= 2;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        (a * mid * mid + b * mid - c < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ModelSpec with_network(const std::string& crn, Vector alpha) {
    ModelSpec m;
    m.network = parse_crn(crn);
    m.alpha = std::move(alpha);
    m.D_tilde = Vector::Ones(m.alpha.size());
    m.chemoattractant = m.network.size() - 1;
    m.domain = Interval{testing::kPi};
    m.validate();
    return m;
}

}  // namespace

TEST_CASE("extract_linear") {
    auto lin = extract_linear(parse_crn("v1 -> 0 @ 0.7"));
    REQUIRE(lin);
    CHECK(lin->A(0, 0) == 0.7);

    const auto net = parse_crn("v1 -> v2 @ 2\nv1 -> 0 @ 0.5\nv2 -> 0 @ 3");
    lin = extract_linear(net);
    REQUIRE(lin);
    CHECK(lin->A(0, 0) == 2.5);
    CHECK(lin->A(0, 1) == 0.0);
    CHECK(lin->A(1, 0) == -2.0);
    CHECK(lin->A(1, 1) == 3.0);
    CHECK((eval_jacobian(net, Vector::Ones(2)) + lin->A).cwiseAbs().maxCoeff() == 0.0);

    CHECK_FALSE(extract_linear(testing::bundled("dimerization.model").network));
    CHECK_FALSE(extract_linear(parse_crn("v1 -> 2 v2 @ 1")));
    CHECK_FALSE(extract_linear(parse_crn("0 -> v1 @ 1\nv1 -> 0 @ 1")));
}

TEST_CASE("linear_steady_state examples") {
    auto ss = linear_steady_state(Matrix::Constant(1, 1, 1.0), Vector::Constant(1, 2.0), 3.0);
    CHECK(ss.v_star[0] == doctest::Approx(6.0));
    CHECK(ss.nonnegative);

    Matrix A(2, 2);
    A << 2, -1, -1, 2;
    ss = linear_steady_state(A, (Vector(2) << 1, 0).finished(), 3.0);
    CHECK(ss.v_star[0] == doctest::Approx(2.0));
    CHECK(ss.v_star[1] == doctest::Approx(1.0));
    CHECK(ss.residual_norm < 1e-12);

    A << 1, -2, -2, 1;
    try {
        linear_steady_state(A, (Vector(2) << 1, 1).finished(), 1.0);
        FAIL("expected MMatrixError");
    } catch (const MMatrixError& e) {
        CHECK(std::string(e.what()).find("inverse has negative entries") != std::string::npos);
        CHECK_FALSE(e.check().inverse_nonnegative);
    }
    A << 1, -1, -1, 1;
    CHECK_THROWS_AS(linear_steady_state(A, Vector::Ones(2), 1.0), MMatrixError);
    A << 1, 1, 0, 1;
    CHECK_THROWS_AS(linear_steady_state(A, Vector::Ones(2), 1.0), MMatrixError);
}

TEST_CASE("linear steady states satisfy A v = u alpha on random M-matrices") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_real_distribution<double> a(0.0, 2.0), u(0.1, 10.0);
    int done = 0;
    while (done < 300) {
        auto c = testing::random_m_matrix_case(rng, dim(rng));
        if (!c || !c->by_definition) continue;
        ++done;
        Vector alpha(c->A.rows());
        for (Eigen::Index k = 0; k < alpha.size(); ++k) alpha[k] = a(rng);
        const double us = u(rng);
        const auto ss = linear_steady_state(c->A, alpha, us);
        CHECK((c->A * ss.v_star - us * alpha).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ss.v_star.cwiseAbs().maxCoeff()));
        CHECK(ss.nonnegative);
    }
}

TEST_CASE("newton on dimerization") {
    const ModelSpec m = testing::bundled("dimerization.model");
    NewtonOptions opts;
    opts.initial_guess = Vector::Ones(2);
    const auto ss = newton_steady_state(m, 2.0, opts);
    CHECK(std::abs(ss.v_star[0] - (std::sqrt(5.0) - 1)) < 1e-12);
    CHECK(std::abs(ss.v_star[1] - (3 - std::sqrt(5.0))) < 1e-12);
    CHECK(ss.positive());
    CHECK(ss.residual_norm <= 1e-10 * std::max(1.0, ss.v_star.cwiseAbs().maxCoeff()));
}

TEST_CASE("dimerization family over u* in [1e-2, 1e2]") {
    const ModelSpec m = testing::bundled("dimerization.model");
    // k1 gamma2 / (k2 + gamma2) v1^2 + gamma1 v1 - alpha1 u = 0 with unit rates
    for (int k = 0; k <= 40; ++k) {
        const double u = std::pow(10.0, -2.0 + 4.0 * k / 40.0);
        const auto ss = solve_steady_state(m, u);
        const double root = positive_root(0.5, 1.0, u);
        CHECK(testing::rel_err(ss.v_star[0], root) < 1e-9);
        CHECK(std::abs(ss.v_star[1] - root * root / 2) <= 1e-9 * std::max(1.0, root * root / 2));
    }
}

TEST_CASE("trimolecular needs a pin") {
    const ModelSpec m = testing::bundled("trimolecular.model");
    try {
        solve_steady_state(m, 1.0);
        FAIL("expected a steady-state error");
    } catch (const SteadyStateError& e) {
        CHECK(std::string(e.what()).find("degenerate") != std::string::npos);
        CHECK(std::string(e.what()).find("pin") != std::string::npos);
    }
    const auto ss = solve_steady_state(m, 1.0, {Pin{1, 2.0}});
    CHECK(ss.v_star[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ss.v_star[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ss.v_star[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("newton is exact on linear networks") {
    for (const char* name : {"minimal_ks.model", "linear_chain.model"}) {
        CAPTURE(name);
        const ModelSpec m = testing::bundled(name);
        const auto lin = extract_linear(m.network);
        REQUIRE(lin);
        const auto closed = linear_steady_state(lin->A, m.alpha, 1.5);
        NewtonOptions opts;
        opts.initial_guess = Vector::Zero(static_cast<Eigen::Index>(m.species_count()));
        const auto newton = newton_steady_state(m, 1.5, opts);
        CHECK(newton.iterations <= 1);
        CHECK((newton.v_star - closed.v_star).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(solve_steady_state(m, 1.5).iterations == 0);
    }
}

TEST_CASE("default initial guess") {
    const ModelSpec m = testing::bundled("linear_chain.model");
    const Vector g = default_initial_guess(m, 2.0);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(0.5));
    CHECK(g[2] == doctest::Approx(0.5));
    const Vector pinned = default_initial_guess(m, 2.0, {Pin{2, 7.0}});
    CHECK(pinned[2] == 7.0);
}

TEST_CASE("nonnegativity is reported, not enforced") {
    // F(v) = u - v^2 has roots +-2 at u = 4; start Newton near the negative one
    const ModelSpec m = with_network("2 v1 -> v1 @ 1", Vector::Constant(1, 1.0));
    NewtonOptions opts;
    opts.initial_guess = Vector::Constant(1, -3.0);
    const auto ss = newton_steady_state(m, 4.0, opts);
    CHECK(ss.v_star[0] == doctest::Approx(-2.0));
    CHECK_FALSE(ss.nonnegative);
    CHECK_FALSE(ss.positive());
}

TEST_CASE("no steady state") {
    const ModelSpec m = testing::bundled("full_ks.model");
    CHECK_THROWS_AS(solve_steady_state(m, 1.0), SteadyStateError);
}

TEST_CASE("unit production steady states invert A") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_real_distribution<double> entry(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = dim(rng);
        Matrix B(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B(i, j) = entry(rng);
        const double s = testing::dense_spectral_radius(B) + 1.0;
        const Matrix A = s * Matrix::Identity(n, n) - B;
        Matrix C(n, n);
        for (int i = 0; i < n; ++i) C.col(i) = linear_steady_state(A, Vector::Unit(n, i), 1.0).v_star;
        CHECK((A * C - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-9);
    }
}
