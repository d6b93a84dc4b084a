#include "chemostab/steady_state.hpp"

#include <cmath>
#include <sstream>

#include "chemostab/format.hpp"

namespace chemostab {

namespace {

std::string describe(const Vector& v) {
    std::ostringstream os;
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << format_double(v[i]);
    os << ")";
    return os.str();
}

double residual_of(const ModelSpec& model, double u_star, const Vector& v) {
    return (model.alpha * u_star + eval_kinetics(model.network, v)).cwiseAbs().maxCoeff();
}

SteadyState finish(double u_star, Vector v, double residual, int iterations) {
    SteadyState ss;
    ss.u_star = u_star;
    ss.nonnegative = (v.array() >= 0.0).all();
    ss.v_star = std::move(v);
    ss.residual_norm = residual;
    ss.iterations = iterations;
    return ss;
}

}  // namespace

bool SteadyState::positive() const { return u_star > 0.0 && v_star.size() > 0 && (v_star.array() > 0.0).all(); }

std::optional<LinearPart> extract_linear(const ReactionNetwork& net) {
    for (const auto& r : net.reactions()) {
        if (r.order() != 1) return std::nullopt;
        for (auto [_, s] : r.products) {
            if (s > 1) return std::nullopt;
        }
    }
    const auto n = static_cast<Eigen::Index>(net.size());
    // g is linear, so its Jacobian at any point is the matrix of the map.
    Matrix A = -eval_jacobian(net, Vector::Zero(n));
    A = A.unaryExpr([](double x) { return x == 0.0 ? 0.0 : x; });  // no negative zeros
    return LinearPart{A};
}

SteadyState linear_steady_state(const Matrix& A, const Vector& alpha, double u_star) {
    if (A.rows() != A.cols() || A.rows() != alpha.size()) {
        throw DimensionError("linear_steady_state: A and alpha sizes disagree");
    }
    if (!(u_star > 0.0)) throw PreconditionError("linear_steady_state: u* must be positive");
    const MMatrixCheck check = check_nonsingular_m_matrix(A);
    if (!check.sign_pattern) {
        throw MMatrixError("A is not an M-matrix: an off-diagonal entry is positive", check);
    }
    if (!check.nonsingular) throw MMatrixError("A is not a nonsingular M-matrix: A is singular", check);
    if (!check.inverse_nonnegative) {
        throw MMatrixError("A is not a nonsingular M-matrix: inverse has negative entries", check);
    }
    Vector v = u_star * A.fullPivLu().solve(alpha);
    // Clear roundoff-level negatives; the exact solution is nonnegative.
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v[i] < 0.0 && v[i] > -1e-14 * std::max(1.0, v.cwiseAbs().maxCoeff())) v[i] = 0.0;
    }
    const double residual = (A * v - u_star * alpha).cwiseAbs().maxCoeff();
    return finish(u_star, std::move(v), residual, 0);
}

Vector default_initial_guess(const ModelSpec& model, double u_star, const std::vector<Pin>& pins) {
    const auto n = static_cast<Eigen::Index>(model.species_count());
    const Matrix A0 = -eval_jacobian(model.network, Vector::Zero(n));
    Vector v0 = Vector::Ones(n);
    if (is_nonsingular_m_matrix(A0)) {
        v0 = u_star * A0.fullPivLu().solve(model.alpha);
    }
    for (const auto& p : pins) {
        if (p.species < model.species_count()) v0[static_cast<Eigen::Index>(p.species)] = p.value;
    }
    return v0;
}

SteadyState newton_steady_state(const ModelSpec& model, double u_star, const NewtonOptions& options) {
    if (!(u_star > 0.0) || !std::isfinite(u_star)) throw PreconditionError("newton_steady_state: u* must be positive");
    const auto n = static_cast<Eigen::Index>(model.species_count());
    for (const auto& p : options.pins) {
        if (p.species >= model.species_count()) throw PreconditionError("pin references an unknown species");
    }
    const auto m = n + static_cast<Eigen::Index>(options.pins.size());

    Vector v = options.initial_guess ? *options.initial_guess : default_initial_guess(model, u_star, options.pins);
    if (v.size() != n) throw DimensionError("initial guess has the wrong length");
    if (!v.allFinite()) throw PreconditionError("initial guess is not finite");

    auto residual = [&](const Vector& x) {
        Vector F(m);
        F.head(n) = model.alpha * u_star + eval_kinetics(model.network, x);
        for (std::size_t k = 0; k < options.pins.size(); ++k) {
            const auto& p = options.pins[k];
            F[n + static_cast<Eigen::Index>(k)] = x[static_cast<Eigen::Index>(p.species)] - p.value;
        }
        return F;
    };

    Vector F = residual(v);
    double norm = F.cwiseAbs().maxCoeff();
    for (int it = 0; it <= options.max_iterations; ++it) {
        if (norm <= 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) {
            return finish(u_star, v, residual_of(model, u_star, v), it);
        }
        if (it == options.max_iterations) break;

        Matrix Jf = Matrix::Zero(m, n);
        Jf.topRows(n) = eval_jacobian(model.network, v);
        for (std::size_t k = 0; k < options.pins.size(); ++k) {
            Jf(n + static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(options.pins[k].species)) = 1.0;
        }
        Eigen::ColPivHouseholderQR<Matrix> qr(Jf);
        if (qr.rank() < n) {
            std::string msg = "singular Jacobian at iterate " + describe(v);
            if (options.pins.empty()) {
                msg += "; the steady states may form a degenerate family, pin a species to select one";
            }
            throw SteadyStateError(msg);
        }
        const Vector delta = qr.solve(-F);

        double t = 1.0;
        bool accepted = false;
        for (int k = 0; k <= 20; ++k, t *= 0.5) {
            Vector trial = v + t * delta;
            Vector Ft = residual(trial);
            const double trial_norm = Ft.cwiseAbs().maxCoeff();
            if (std::isfinite(trial_norm) && trial_norm < norm) {
                v = std::move(trial);
                F = std::move(Ft);
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            throw SteadyStateError("Newton line search stalled at iterate " + describe(v) +
                                   " with residual " + format_double(norm));
        }
    }
    throw SteadyStateError("Newton did not converge in " + std::to_string(options.max_iterations) +
                           " iterations; best residual " + format_double(norm));
}

SteadyState solve_steady_state(const ModelSpec& model, double u_star, const std::vector<Pin>& pins) {
    if (pins.empty()) {
        if (auto lin = extract_linear(model.network); lin && is_nonsingular_m_matrix(lin->A)) {
            return linear_steady_state(lin->A, model.alpha, u_star);
        }
    }
    NewtonOptions opts;
    opts.pins = pins;
    return newton_steady_state(model, u_star, opts);
}

}  // namespace chemostab
