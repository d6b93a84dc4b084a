#include "chemostab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "chemostab/error.hpp"
#include "chemostab/matrix_analysis.hpp"

namespace chemostab {

namespace {

// Parlett–Reinsch balancing with radix 2 (exact in floating point).
void balance(Matrix& A) {
    constexpr double kRadix = 2.0;
    constexpr double kRadix2 = kRadix * kRadix;
    const auto n = A.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(A(j, i));
                    r += std::abs(A(i, j));
                }
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / kRadix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= kRadix;
                c *= kRadix2;
            }
            g = r * kRadix;
            while (c > g) {
                f /= kRadix;
                c /= kRadix2;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                A.row(i) /= f;
                A.col(i) *= f;
            }
        }
    }
}

double max_re_of(const std::vector<Complexd>& eig) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& z : eig) m = std::max(m, z.real());
    return m;
}

double domain_mu(const DomainSpec& d, int i, int j) {
    const double pi = std::numbers::pi;
    if (const auto* iv = std::get_if<Interval>(&d)) {
        const double k = i * pi / iv->length;
        return 0.0 - k * k;
    }
    const auto& r = std::get<Rectangle>(d);
    const double kx = i * pi / r.lx;
    const double ky = j * pi / r.ly;
    return 0.0 - (kx * kx + ky * ky);
}

ConditionReport base_condition(const ModelSpec& model, const SteadyState& ss, const Matrix& J) {
    ConditionReport rep;
    rep.positive_steady_state = ss.positive();
    rep.alpha_positive = (model.alpha.array() > 0.0).any();
    rep.metzler = is_metzler(J);
    if (!rep.positive_steady_state) rep.reason = "steady state is not positive";
    else if (!rep.alpha_positive) rep.reason = "no species is produced (alpha = 0)";
    else if (!rep.metzler) rep.reason = "J is not Metzler";
    return rep;
}

}  // namespace

std::string ModeId::str() const {
    return j < 0 ? std::to_string(i) : std::to_string(i) + ":" + std::to_string(j);
}

NeumannSpectrum neumann_eigenvalues(const DomainSpec& domain, std::size_t count) {
    if (count == 0) throw PreconditionError("neumann_eigenvalues: count must be at least 1");
    NeumannSpectrum spec;
    spec.domain = domain;
    const int cnt = static_cast<int>(count);
    if (std::holds_alternative<Interval>(domain)) {
        for (int i = 0; i < cnt; ++i) {
            spec.modes.push_back({i, -1});
            spec.mu.push_back(domain_mu(domain, i, -1));
        }
        return spec;
    }
    // Any (i, j) with i >= count or j >= count has at least `count` modes
    // strictly above it, so the first count x count lattice suffices.
    struct Entry {
        double mu;
        ModeId id;
    };
    std::vector<Entry> all;
    all.reserve(count * count);
    for (int i = 0; i < cnt; ++i) {
        for (int j = 0; j < cnt; ++j) all.push_back({domain_mu(domain, i, j), {i, j}});
    }
    std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
        if (a.mu != b.mu) return a.mu > b.mu;
        if (a.id.i + a.id.j != b.id.i + b.id.j) return a.id.i + a.id.j < b.id.i + b.id.j;
        return a.id.j < b.id.j;
    });
    for (std::size_t k = 0; k < count; ++k) {
        spec.mu.push_back(all[k].mu);
        spec.modes.push_back(all[k].id);
    }
    return spec;
}

ModeMatrix assemble_mode_matrix(const ModelSpec& model, double u_star, const Matrix& J, double mu) {
    if (mu > 0.0) throw PreconditionError("mode matrix requires mu <= 0");
    const auto n = static_cast<Eigen::Index>(model.species_count());
    if (J.rows() != n || J.cols() != n) throw DimensionError("Jacobian does not match species count");
    ModeMatrix mm;
    mm.mu = mu;
    mm.K = mu == 0.0 ? 0.0 : -mu * model.chi * u_star;
    mm.M = Matrix::Zero(n + 1, n + 1);
    mm.M(0, 0) = model.D * mu;
    mm.M(0, 1 + static_cast<Eigen::Index>(model.chemoattractant)) = mm.K;
    mm.M.block(1, 0, n, 1) = model.alpha;
    mm.M.block(1, 1, n, n) = J;
    for (Eigen::Index k = 0; k < n; ++k) mm.M(1 + k, 1 + k) += mu * model.D_tilde[k];
    return mm;
}

ModeMatrix build_M(const ModelSpec& model, const SteadyState& ss, double mu) {
    return assemble_mode_matrix(model, ss.u_star, eval_jacobian(model.network, ss.v_star), mu);
}

std::vector<Complexd> dense_eigenvalues(const Matrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("dense_eigenvalues: matrix is not square");
    if (!A.allFinite()) throw NumericalError("dense_eigenvalues: matrix has non-finite entries");
    if (A.rows() == 0) return {};
    Matrix B = A;
    balance(B);
    Eigen::EigenSolver<Matrix> es(B, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    std::vector<Complexd> eig(es.eigenvalues().begin(), es.eigenvalues().end());
    std::sort(eig.begin(), eig.end(), [](const Complexd& a, const Complexd& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return eig;
}

double mode_max_real_part(const ModelSpec& model, const SteadyState& ss, double mu) {
    return max_re_of(mode_spectrum(build_M(model, ss, mu)));
}

ConditionReport check_suff1(const ModelSpec& model, const SteadyState& ss) {
    const Matrix J = eval_jacobian(model.network, ss.v_star);
    ConditionReport rep = base_condition(model, ss, J);
    rep.irreducible = is_irreducible(J);
    for (Eigen::Index i = 0; i < model.alpha.size(); ++i) {
        if (model.alpha[i] > 0.0) {
            rep.i_star = static_cast<std::size_t>(i);
            break;
        }
    }
    if (rep.reason.empty() && !*rep.irreducible) rep.reason = "J is reducible";
    rep.applicable = rep.positive_steady_state && rep.alpha_positive && *rep.irreducible && rep.metzler;
    return rep;
}

ConditionReport check_suff2(const ModelSpec& model, const SteadyState& ss) {
    const Matrix J = eval_jacobian(model.network, ss.v_star);
    ConditionReport rep = base_condition(model, ss, J);
    const DirectedGraph gt = digraph(J.transpose());
    rep.path_exists = false;
    for (Eigen::Index i = 0; i < model.alpha.size(); ++i) {
        if (model.alpha[i] > 0.0 && has_path(gt, static_cast<std::size_t>(i), model.chemoattractant)) {
            rep.path_exists = true;
            rep.i_star = static_cast<std::size_t>(i);
            break;
        }
    }
    if (rep.reason.empty() && !*rep.path_exists) {
        rep.reason = "no produced species has a path to the chemoattractant in G(J^T)";
    }
    rep.applicable = rep.positive_steady_state && rep.alpha_positive && *rep.path_exists && rep.metzler;
    return rep;
}

TailCertificate tail_certificate(const ModelSpec& model, double u_star, const Matrix& J, double last_computed_mu) {
    TailCertificate cert;
    cert.last_computed_mu = last_computed_mu;
    // S M S^-1 with S = diag(s, 1, ..., 1): row 0 radius becomes s chi u* |mu|
    // = D |mu| / 2, always inside Re < 0; column 0 entries become alpha_k / s.
    cert.scaling = 0.5 * model.D / (model.chi * u_star);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < J.rows(); ++k) {
        double reach = J(k, k) + model.alpha[k] / cert.scaling;
        for (Eigen::Index l = 0; l < J.cols(); ++l) {
            if (l != k) reach += std::abs(J(k, l));
        }
        worst = std::max(worst, std::max(reach, 0.0) / model.D_tilde[k]);
    }
    cert.cutoff_mu = worst > 0.0 ? -worst : 0.0;
    cert.certified = last_computed_mu < 0.0 && last_computed_mu < cert.cutoff_mu;
    return cert;
}

StabilityReport stability_verdict(const ModelSpec& model, const SteadyState& ss, std::size_t mode_count,
                                  const StabilityOptions& options) {
    if (mode_count < 2) throw PreconditionError("stability_verdict: mode_count must be at least 2");
    if (static_cast<std::size_t>(ss.v_star.size()) != model.species_count()) {
        throw DimensionError("steady state does not match the model");
    }
    const NeumannSpectrum spectrum = neumann_eigenvalues(model.domain, mode_count);
    const Matrix J = eval_jacobian(model.network, ss.v_star);

    StabilityReport rep;
    rep.include_homogeneous_mode = options.include_homogeneous_mode;
    rep.overall_max_re = -std::numeric_limits<double>::infinity();
    rep.homogeneous_max_re = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < spectrum.mu.size(); ++m) {
        ModeResult res;
        res.mode = spectrum.modes[m];
        res.mu = spectrum.mu[m];
        res.eigenvalues = mode_spectrum(assemble_mode_matrix(model, ss.u_star, J, res.mu));
        std::vector<Complexd> counted = res.eigenvalues;
        if (res.mu == 0.0) {
            // The zero first row of M(0) contributes an exact zero eigenvalue.
            auto it = std::min_element(counted.begin(), counted.end(),
                                       [](const Complexd& a, const Complexd& b) { return std::abs(a) < std::abs(b); });
            counted.erase(it);
        }
        res.max_re = -std::numeric_limits<double>::infinity();
        for (const auto& z : counted) {
            if (z.real() > res.max_re) {
                res.max_re = z.real();
                res.abs_im_at_max = std::abs(z.imag());
            }
        }
        if (res.mu == 0.0) rep.homogeneous_max_re = res.max_re;
        if ((res.mu < 0.0 || options.include_homogeneous_mode) && res.max_re > rep.overall_max_re) {
            rep.overall_max_re = res.max_re;
            rep.dominant_mode = res.mode;
            rep.dominant_mu = res.mu;
        }
        rep.per_mode.push_back(std::move(res));
    }
    rep.unstable = rep.overall_max_re > options.neutral_tolerance;
    rep.marginal = std::abs(rep.overall_max_re) <= options.neutral_tolerance;
    rep.suff1 = check_suff1(model, ss);
    rep.suff2 = check_suff2(model, ss);
    rep.tail = tail_certificate(model, ss.u_star, J, spectrum.mu.back());
    return rep;
}

Threshold first_instability(const std::function<double(double)>& max_re, double lo, double hi) {
    constexpr int kGridPoints = 64;
    constexpr int kBisections = 60;
    if (!(lo > 0.0) || !(hi > lo)) throw PreconditionError("first_instability: invalid bracket");
    const double log_lo = std::log10(lo);
    const double log_hi = std::log10(hi);
    double prev = lo;
    if (max_re(lo) > 0.0) return {ThresholdStatus::unstable_at_minimum, lo};
    for (int k = 1; k < kGridPoints; ++k) {
        const double x = k == kGridPoints - 1
                             ? hi
                             : std::pow(10.0, log_lo + (log_hi - log_lo) * k / (kGridPoints - 1));
        if (max_re(x) > 0.0) {
            double a = prev;
            double b = x;
            for (int it = 0; it < kBisections; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                if (max_re(mid) > 0.0) b = mid;
                else a = mid;
            }
            return {ThresholdStatus::found, 0.5 * (a + b)};
        }
        prev = x;
    }
    return {ThresholdStatus::none, 0.0};
}

Threshold critical_chi(const ModelSpec& model, const SteadyState& ss, double mu) {
    if (!(mu < 0.0)) throw PreconditionError("critical_chi requires mu < 0");
    const Matrix J = eval_jacobian(model.network, ss.v_star);
    ModelSpec trial = model;
    return first_instability([&](double chi) {
        trial.chi = chi;
        return max_re_of(mode_spectrum(assemble_mode_matrix(trial, ss.u_star, J, mu)));
    });
}

Threshold critical_alpha(const ModelSpec& model, double u_star, const std::vector<Pin>& pins, double mu,
                         std::size_t species) {
    if (!(mu < 0.0)) throw PreconditionError("critical_alpha requires mu < 0");
    if (species >= model.species_count()) throw PreconditionError("critical_alpha: species index out of range");
    ModelSpec trial = model;
    std::optional<Vector> guess;
    return first_instability([&](double a) {
        trial.alpha[static_cast<Eigen::Index>(species)] = a;
        NewtonOptions opts;
        opts.pins = pins;
        opts.initial_guess = guess;
        SteadyState ss;
        try {
            ss = newton_steady_state(trial, u_star, opts);
        } catch (const SteadyStateError&) {
            if (!guess) throw;
            opts.initial_guess.reset();
            ss = newton_steady_state(trial, u_star, opts);
        }
        guess = ss.v_star;
        return mode_max_real_part(trial, ss, mu);
    });
}

bool routh_hurwitz_cubic(double b2, double b1, double b0) { return b2 > 0.0 && b0 > 0.0 && b1 * b2 - b0 > 0.0; }

CubicCoefficients trimolecular_cubic(double a, double b, double c, double d1, double d2, double d3) {
    CubicCoefficients k;
    k.b2 = a + b + c + d1 + d2 + d3;
    k.b1 = a * (d2 + d3) + b * (d1 + d3) + c * (d1 + d2) + d1 * d2 + d1 * d3 + d2 * d3;
    k.b0 = a * d2 * d3 + b * d1 * d3 + c * d1 * d2 + d1 * d2 * d3;
    return k;
}

namespace {

struct TrimolecularShape {
    std::size_t v1, v2, v3;
    double k1, k2, gamma1;
};

bool is_pair(const Complex& c, std::size_t& x, std::size_t& y) {
    if (c.size() != 2) return false;
    auto it = c.begin();
    x = it->first;
    const int sx = it->second;
    ++it;
    y = it->first;
    return sx == 1 && it->second == 1;
}

bool is_single(const Complex& c, std::size_t& z) {
    if (c.size() != 1 || c.begin()->second != 1) return false;
    z = c.begin()->first;
    return true;
}

std::optional<TrimolecularShape> match_trimolecular(const ModelSpec& model) {
    const auto& net = model.network;
    if (net.size() != 3 || net.reactions().size() != 3) return std::nullopt;
    const Reaction *fwd = nullptr, *bwd = nullptr, *decay = nullptr;
    std::size_t x = 0, y = 0, z = 0, w = 0;
    for (const auto& r : net.reactions()) {
        std::size_t p = 0, q = 0, s = 0;
        if (is_pair(r.reactants, p, q) && is_single(r.products, s)) {
            fwd = &r;
            x = p, y = q, z = s;
        } else if (is_single(r.reactants, s) && is_pair(r.products, p, q)) {
            bwd = &r;
        } else if (is_single(r.reactants, s) && r.products.empty()) {
            decay = &r;
            w = s;
        }
    }
    if (!fwd || !bwd || !decay) return std::nullopt;
    if (bwd->reactants != fwd->products || bwd->products != fwd->reactants) return std::nullopt;
    if (w != x && w != y) return std::nullopt;
    TrimolecularShape shape{w, w == x ? y : x, z, fwd->rate, bwd->rate, decay->rate};
    if (model.chemoattractant != shape.v3) return std::nullopt;
    for (Eigen::Index i = 0; i < 3; ++i) {
        const bool produced = static_cast<std::size_t>(i) == shape.v1;
        if (produced ? !(model.alpha[i] > 0.0) : model.alpha[i] != 0.0) return std::nullopt;
    }
    return shape;
}

}  // namespace

bool is_trimolecular(const ModelSpec& model) { return match_trimolecular(model).has_value(); }

TrimolecularDeterminant trimolecular_determinant(const ModelSpec& model, const SteadyState& ss, double mu, double K) {
    const auto shape = match_trimolecular(model);
    if (!shape) {
        throw PreconditionError(
            "model is not the trimolecular network v1 + v2 <-> v3, v1 -> 0 with production of v1 and "
            "chemoattractant v3");
    }
    if (!(mu < 0.0)) throw PreconditionError("trimolecular_determinant requires mu < 0");
    if (!(K >= 0.0)) throw PreconditionError("trimolecular_determinant requires K >= 0");
    const Matrix J = eval_jacobian(model.network, ss.v_star);
    auto det_at = [&](double k) {
        ModelSpec trial = model;
        trial.chi = k / (-mu * ss.u_star);
        return assemble_mode_matrix(trial, ss.u_star, J, mu).M.determinant();
    };
    const auto i1 = static_cast<Eigen::Index>(shape->v1);
    const auto i2 = static_cast<Eigen::Index>(shape->v2);
    const auto i3 = static_cast<Eigen::Index>(shape->v3);

    TrimolecularDeterminant out;
    out.det = det_at(K);
    out.C = det_at(0.0);
    out.slope = model.alpha[i1] * shape->k1 * ss.v_star[i2] * mu * model.D_tilde[i2];
    out.K0 = -out.C / out.slope;
    out.a = shape->k1 * ss.v_star[i2];
    out.b = shape->k1 * ss.v_star[i1];
    out.c = shape->k2;
    out.d1 = shape->gamma1 - mu * model.D_tilde[i1];
    out.d2 = -mu * model.D_tilde[i2];
    out.d3 = -mu * model.D_tilde[i3];
    out.cubic = trimolecular_cubic(out.a, out.b, out.c, out.d1, out.d2, out.d3);

    const double predicted = out.C + out.slope * K;
    const double scale = std::max({1.0, std::abs(out.det), std::abs(out.C), std::abs(out.slope * K)});
    if (std::abs(out.det - predicted) > 1e-9 * scale) {
        throw NumericalError("determinant is not affine in K as expected");
    }
    return out;
}

}  // namespace chemostab
