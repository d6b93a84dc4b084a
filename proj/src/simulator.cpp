#include "chemostab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "chemostab/error.hpp"
#include "chemostab/format.hpp"

namespace chemostab {

namespace {

constexpr double kBlowUpThreshold = 1e12;

// Mass-action kinetics flattened for per-cell evaluation in the time loop.
class KineticsKernel {
public:
    explicit KineticsKernel(const ReactionNetwork& net) {
        for (const auto& r : net.reactions()) {
            Flat f;
            f.rate = r.rate;
            for (auto [k, s] : r.reactants) f.reactants.emplace_back(k, s);
            std::map<std::size_t, int> change;
            for (auto [k, s] : r.reactants) change[k] -= s;
            for (auto [k, s] : r.products) change[k] += s;
            for (auto [k, c] : change) {
                if (c != 0) f.changes.emplace_back(k, static_cast<double>(c));
            }
            flats_.push_back(std::move(f));
        }
    }

    void eval(const double* v, double* g, std::size_t n_species) const {
        std::fill(g, g + n_species, 0.0);
        for (const auto& f : flats_) {
            double flux = f.rate;
            for (auto [k, s] : f.reactants) {
                for (int p = 0; p < s; ++p) flux *= v[k];
            }
            for (auto [k, c] : f.changes) g[k] += c * flux;
        }
    }

private:
    struct Flat {
        double rate = 0.0;
        std::vector<std::pair<std::size_t, int>> reactants;
        std::vector<std::pair<std::size_t, double>> changes;
    };
    std::vector<Flat> flats_;
};

// Factorized (I - r L) for the cell-centred Neumann Laplacian L (scaled by
// h^2), solved by the Thomas algorithm.
class ImplicitDiffusion {
public:
    ImplicitDiffusion(std::size_t n, double r) : r_(r), cp_(n), inv_(n) {
        auto diag = [&](std::size_t j) { return (j == 0 || j == n - 1) ? 1.0 + r : 1.0 + 2.0 * r; };
        double denom = diag(0);
        inv_[0] = 1.0 / denom;
        cp_[0] = -r * inv_[0];
        for (std::size_t j = 1; j < n; ++j) {
            denom = diag(j) + r * cp_[j - 1];
            inv_[j] = 1.0 / denom;
            cp_[j] = -r * inv_[j];
        }
    }

    // x <- (I - r L)^{-1} x, solved for the increment so rounding scales
    // with the update rather than with |x|.
    void solve(std::vector<double>& x, std::vector<double>& d) const {
        const std::size_t n = x.size();
        for (std::size_t j = 0; j < n; ++j) {
            const double left = j > 0 ? x[j] - x[j - 1] : 0.0;
            const double right = j + 1 < n ? x[j + 1] - x[j] : 0.0;
            d[j] = r_ * (right - left);
        }
        d[0] *= inv_[0];
        for (std::size_t j = 1; j < n; ++j) d[j] = (d[j] + r_ * d[j - 1]) * inv_[j];
        for (std::size_t j = n - 1; j-- > 0;) d[j] -= cp_[j] * d[j + 1];
        for (std::size_t j = 0; j < n; ++j) x[j] += d[j];
    }

private:
    double r_;
    std::vector<double> cp_;
    std::vector<double> inv_;
};

Matrix neumann_laplacian(const Grid1D& grid) {
    const auto n = static_cast<Eigen::Index>(grid.n());
    const double s = 1.0 / (grid.h() * grid.h());
    Matrix L = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j > 0) {
            L(j, j - 1) += s;
            L(j, j) -= s;
        }
        if (j + 1 < n) {
            L(j, j + 1) += s;
            L(j, j) -= s;
        }
    }
    return L;
}

}  // namespace

Grid1D::Grid1D(std::size_t n, double length) : n_(n), length_(length) {
    if (n < 2) throw PreconditionError("grid needs at least 2 cells");
    if (!(length > 0.0) || !std::isfinite(length)) throw PreconditionError("grid length must be positive");
}

Grid1D model_grid(const ModelSpec& model, std::size_t n) {
    const auto* iv = std::get_if<Interval>(&model.domain);
    if (!iv) throw PreconditionError("simulation requires an interval domain");
    return Grid1D(n, iv->length);
}

double max_stable_dt(const ModelSpec& model, const Grid1D& grid) {
    const double dmax = std::max(model.D, model.D_tilde.maxCoeff());
    return 0.4 * grid.h() * grid.h() / dmax;
}

State homogeneous_state(const SteadyState& ss, const Grid1D& grid) {
    const auto n = static_cast<Eigen::Index>(grid.n());
    State s;
    s.u = Vector::Constant(n, ss.u_star);
    s.v = ss.v_star.replicate(1, n);
    return s;
}

State cosine_perturbation(const SteadyState& ss, const Grid1D& grid, double amplitude, int mode) {
    State s = homogeneous_state(ss, grid);
    const double k = mode * std::numbers::pi / grid.length();
    for (std::size_t j = 0; j < grid.n(); ++j) s.u[static_cast<Eigen::Index>(j)] += amplitude * std::cos(k * grid.x(j));
    return s;
}

double total_mass(const State& state, const Grid1D& grid) { return grid.h() * state.u.sum(); }

Trajectory simulate(const ModelSpec& model, const State& ic, double dt, double t_end, std::size_t sample_every,
                    const SimulationOptions& options) {
    const std::size_t n = static_cast<std::size_t>(ic.u.size());
    const std::size_t N = model.species_count();
    if (n < kMinSimulationCells) {
        throw PreconditionError("simulation needs at least " + std::to_string(kMinSimulationCells) + " cells");
    }
    if (static_cast<std::size_t>(ic.v.rows()) != N || static_cast<std::size_t>(ic.v.cols()) != n) {
        throw DimensionError("initial condition does not match the model and grid");
    }
    if (!ic.u.allFinite() || !ic.v.allFinite()) throw PreconditionError("initial condition is not finite");
    if ((ic.u.array() < 0.0).any() || (ic.v.array() < 0.0).any()) {
        throw PreconditionError("initial condition must be nonnegative");
    }
    if (sample_every == 0) throw PreconditionError("sample_every must be positive");
    if (options.tracked_mode < 1) throw PreconditionError("tracked mode must be >= 1");
    const Grid1D grid = model_grid(model, n);
    const double bound = max_stable_dt(model, grid);
    if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
    if (dt > bound) {
        throw TimeStepError("dt = " + format_double(dt) + " exceeds the stability bound 0.4 h^2 / max(D, D_tilde) = " +
                                format_double(bound),
                            bound);
    }

    const double h = grid.h();
    const std::size_t steps =
        t_end > 0.0 ? static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / dt - 1e-9))) : 0;
    const double step = steps ? t_end / static_cast<double>(steps) : dt;

    // fields[0] = u, fields[1 + k] = v_k
    std::vector<std::vector<double>> fields(N + 1, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        fields[0][j] = ic.u[static_cast<Eigen::Index>(j)];
        for (std::size_t k = 0; k < N; ++k) {
            fields[1 + k][j] = ic.v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
        }
    }

    Vector ref_v(static_cast<Eigen::Index>(N));
    double ref_u = 0.0;
    if (options.reference) {
        ref_u = options.reference->u_star;
        ref_v = options.reference->v_star;
    } else {
        ref_u = ic.u.mean();
        ref_v = ic.v.rowwise().mean();
    }

    std::vector<ImplicitDiffusion> solvers;
    solvers.emplace_back(n, step * model.D / (h * h));
    for (std::size_t k = 0; k < N; ++k) solvers.emplace_back(n, step * model.D_tilde[static_cast<Eigen::Index>(k)] / (h * h));

    const KineticsKernel kinetics(model.network);
    const std::size_t c = 1 + model.chemoattractant;
    std::vector<double> cosines(n);
    const double kx = options.tracked_mode * std::numbers::pi / grid.length();
    for (std::size_t j = 0; j < n; ++j) cosines[j] = std::cos(kx * grid.x(j));

    Trajectory traj;
    traj.n = n;
    traj.tracked_mode = options.tracked_mode;
    traj.min_u = ic.u.minCoeff();

    auto record = [&](double t) {
        TrajectorySample s;
        s.t = t;
        double sum = 0.0;
        double proj = 0.0;
        double dev = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += fields[0][j];
            proj += fields[0][j] * cosines[j];
            dev = std::max(dev, std::abs(fields[0][j] - ref_u));
        }
        s.mass = h * sum;
        s.mode_amplitude = 2.0 * proj / static_cast<double>(n);
        s.species_means.resize(static_cast<Eigen::Index>(N));
        for (std::size_t k = 0; k < N; ++k) {
            double m = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                m += fields[1 + k][j];
                dev = std::max(dev, std::abs(fields[1 + k][j] - ref_v[static_cast<Eigen::Index>(k)]));
            }
            s.species_means[static_cast<Eigen::Index>(k)] = m / static_cast<double>(n);
        }
        s.max_deviation = dev;
        traj.samples.push_back(std::move(s));
        if (options.keep_snapshots) {
            State snap;
            snap.t = t;
            snap.u = Eigen::Map<const Vector>(fields[0].data(), static_cast<Eigen::Index>(n));
            snap.v.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(n));
            for (std::size_t k = 0; k < N; ++k) {
                snap.v.row(static_cast<Eigen::Index>(k)) =
                    Eigen::Map<const Vector>(fields[1 + k].data(), static_cast<Eigen::Index>(n)).transpose();
            }
            traj.snapshots.push_back(std::move(snap));
        }
    };

    record(ic.t);
    std::vector<double> flux(n + 1, 0.0);  // flux[f] at face f - 1/2; boundary faces stay 0
    std::vector<double> conc(N), rate(N), work(n);
    std::vector<std::vector<double>> next(N + 1, std::vector<double>(n));

    for (std::size_t s = 1; s <= steps; ++s) {
        const auto& u = fields[0];
        const auto& vc = fields[c];
        for (std::size_t f = 1; f < n; ++f) {
            const double w = model.chi * (vc[f] - vc[f - 1]) / h;
            flux[f] = w * (w >= 0.0 ? u[f - 1] : u[f]);
        }
        for (std::size_t j = 0; j < n; ++j) next[0][j] = u[j] - step / h * (flux[j + 1] - flux[j]);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < N; ++k) conc[k] = fields[1 + k][j];
            kinetics.eval(conc.data(), rate.data(), N);
            for (std::size_t k = 0; k < N; ++k) {
                next[1 + k][j] = conc[k] + step * (model.alpha[static_cast<Eigen::Index>(k)] * u[j] + rate[k]);
            }
        }
        for (std::size_t f = 0; f <= N; ++f) solvers[f].solve(next[f], work);
        std::swap(fields, next);

        const double t = ic.t + static_cast<double>(s) * step;
        bool bad = false;
        for (std::size_t f = 0; f <= N && !bad; ++f) {
            for (double x : fields[f]) {
                if (!std::isfinite(x) || (f == 0 && x > kBlowUpThreshold)) {
                    bad = true;
                    break;
                }
            }
        }
        if (bad) {
            traj.diverged = true;
            traj.diverged_at = t;
            return traj;
        }
        traj.min_u = std::min(traj.min_u, *std::min_element(fields[0].begin(), fields[0].end()));
        if (s % sample_every == 0 || s == steps) record(t);
    }
    return traj;
}

double growth_rate(const Trajectory& traj, double t0, double t1) {
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    std::size_t count = 0;
    for (const auto& s : traj.samples) {
        if (s.t < t0 || s.t > t1) continue;
        if (!(s.mode_amplitude > 0.0)) {
            throw PreconditionError("growth_rate: tracked amplitude is not positive at t = " + format_double(s.t));
        }
        const double y = std::log(s.mode_amplitude);
        st += s.t;
        sy += y;
        stt += s.t * s.t;
        sty += s.t * y;
        ++count;
    }
    if (count < 2) throw PreconditionError("growth_rate: fewer than two samples in the window");
    const double m = static_cast<double>(count);
    const double denom = m * stt - st * st;
    if (!(denom > 0.0)) throw PreconditionError("growth_rate: degenerate time window");
    return (m * sty - st * sy) / denom;
}

std::vector<double> discrete_neumann_eigenvalues(const Grid1D& grid) {
    std::vector<double> mu(grid.n());
    const double h = grid.h();
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double s = std::sin(static_cast<double>(i) * std::numbers::pi / (2.0 * static_cast<double>(grid.n())));
        mu[i] = -(4.0 / (h * h)) * s * s;
    }
    return mu;
}

Matrix linearized_operator(const ModelSpec& model, const SteadyState& ss, const Grid1D& grid) {
    const auto n = static_cast<Eigen::Index>(grid.n());
    const auto N = static_cast<Eigen::Index>(model.species_count());
    const Matrix L = neumann_laplacian(grid);
    const Matrix I = Matrix::Identity(n, n);
    const Matrix J = eval_jacobian(model.network, ss.v_star);
    const auto c = static_cast<Eigen::Index>(model.chemoattractant);
    Matrix op = Matrix::Zero((N + 1) * n, (N + 1) * n);
    op.block(0, 0, n, n) = model.D * L;
    op.block(0, (1 + c) * n, n, n) = -model.chi * ss.u_star * L;
    for (Eigen::Index k = 0; k < N; ++k) {
        op.block((1 + k) * n, 0, n, n) = model.alpha[k] * I;
        for (Eigen::Index l = 0; l < N; ++l) {
            op.block((1 + k) * n, (1 + l) * n, n, n) = J(k, l) * I;
        }
        op.block((1 + k) * n, (1 + k) * n, n, n) += model.D_tilde[k] * L;
    }
    return op;
}

double hausdorff_distance(const std::vector<Complexd>& a, const std::vector<Complexd>& b) {
    auto directed = [](const std::vector<Complexd>& from, const std::vector<Complexd>& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() || b.empty()) {
        return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::max(directed(a, b), directed(b, a));
}

CrossCheckReport discrete_cross_check(const ModelSpec& model, const SteadyState& ss, const Grid1D& grid) {
    if (grid.n() > 128) throw PreconditionError("discrete_cross_check: n > 128 is too expensive for a dense solve");
    CrossCheckReport rep;
    rep.n = grid.n();
    rep.operator_eigenvalues = dense_eigenvalues(linearized_operator(model, ss, grid));
    const Matrix J = eval_jacobian(model.network, ss.v_star);
    for (double mu : discrete_neumann_eigenvalues(grid)) {
        auto eig = mode_spectrum(assemble_mode_matrix(model, ss.u_star, J, mu));
        rep.reduced_eigenvalues.insert(rep.reduced_eigenvalues.end(), eig.begin(), eig.end());
    }
    std::sort(rep.reduced_eigenvalues.begin(), rep.reduced_eigenvalues.end(), [](const Complexd& a, const Complexd& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    rep.hausdorff_distance = hausdorff_distance(rep.operator_eigenvalues, rep.reduced_eigenvalues);
    return rep;
}

}  // namespace chemostab
