#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chemostab/model.hpp"
#include "chemostab/steady_state.hpp"

namespace chemostab {

using Complexd = std::complex<double>;

/// Neumann Laplacian mode: cos(i pi x / L) on an interval (j == -1), or
/// cos(i pi x / Lx) cos(j pi y / Ly) on a rectangle.
struct ModeId {
    int i = 0;
    int j = -1;

    std::string str() const;
    bool operator==(const ModeId&) const = default;
};

/// Eigenvalues mu_0 = 0 > mu_1 >= mu_2 >= ... with their modes.
struct NeumannSpectrum {
    DomainSpec domain;
    std::vector<double> mu;
    std::vector<ModeId> modes;
};

NeumannSpectrum neumann_eigenvalues(const DomainSpec& domain, std::size_t count);

/// M(mu) = [[D mu, kappa^T], [alpha, J + mu diag(D_tilde)]] with
/// kappa = K e_c, K = -mu chi u*, c the chemoattractant.
struct ModeMatrix {
    double mu = 0.0;
    Matrix M;
    double K = 0.0;
};

/// M(mu) for an explicit Jacobian J. Throws PreconditionError for mu > 0.
ModeMatrix assemble_mode_matrix(const ModelSpec& model, double u_star, const Matrix& J, double mu);
ModeMatrix build_M(const ModelSpec& model, const SteadyState& ss, double mu);

/// All eigenvalues of a small dense nonsymmetric matrix (balanced, then
/// Hessenberg QR), sorted by decreasing real part then imaginary part.
/// Throws NumericalError if the QR iteration fails.
std::vector<Complexd> dense_eigenvalues(const Matrix& A);
inline std::vector<Complexd> mode_spectrum(const ModeMatrix& mm) { return dense_eigenvalues(mm.M); }

/// Largest real part of the spectrum of M(mu).
double mode_max_real_part(const ModelSpec& model, const SteadyState& ss, double mu);

/// Sufficient-condition check. `applicable` is the conjunction of the
/// booleans that the condition uses.
struct ConditionReport {
    bool applicable = false;
    bool positive_steady_state = false;
    bool alpha_positive = false;
    bool metzler = false;
    std::optional<bool> irreducible;  // irreducibility variant only
    std::optional<bool> path_exists;  // path variant only
    std::optional<std::size_t> i_star;
    std::string reason;
};

/// Some alpha_i > 0, J irreducible, J Metzler, at a positive steady state.
ConditionReport check_suff1(const ModelSpec& model, const SteadyState& ss);
/// Some alpha_i > 0 with a path i -> chemoattractant in G(J^T), J Metzler,
/// at a positive steady state.
ConditionReport check_suff2(const ModelSpec& model, const SteadyState& ss);

/// Gershgorin certificate that every mode with mu < cutoff_mu has all
/// eigenvalues in Re < 0. Row/column 0 of M(mu) are balanced by `scaling`
/// first so the chemotactic coupling and the production column stay bounded.
struct TailCertificate {
    bool certified = false;
    double cutoff_mu = 0.0;
    double last_computed_mu = 0.0;
    double scaling = 1.0;
};

TailCertificate tail_certificate(const ModelSpec& model, double u_star, const Matrix& J, double last_computed_mu);

struct ModeResult {
    ModeId mode;
    double mu = 0.0;
    std::vector<Complexd> eigenvalues;
    double max_re = 0.0;           // for mu = 0 the structural zero is excluded
    double abs_im_at_max = 0.0;
};

struct StabilityOptions {
    /// Count the mu_0 = 0 mode (minus its structural zero) in the verdict.
    /// Off by default: perturbations are taken with zero mean.
    bool include_homogeneous_mode = false;
    /// |Re| at or below this is treated as neutral.
    double neutral_tolerance = 1e-9;
};

struct StabilityReport {
    std::vector<ModeResult> per_mode;
    double overall_max_re = 0.0;
    bool unstable = false;
    bool marginal = false;             // |overall_max_re| <= neutral_tolerance
    ModeId dominant_mode;
    double dominant_mu = 0.0;
    double homogeneous_max_re = 0.0;   // mode 0 without its structural zero
    bool include_homogeneous_mode = false;
    ConditionReport suff1;
    ConditionReport suff2;
    TailCertificate tail;
};

/// Per-mode spectra over the first `mode_count` Neumann modes plus the
/// sufficient-condition reports and tail certificate. mode_count >= 2.
StabilityReport stability_verdict(const ModelSpec& model, const SteadyState& ss, std::size_t mode_count,
                                  const StabilityOptions& options = {});

enum class ThresholdStatus { found, unstable_at_minimum, none };

struct Threshold {
    ThresholdStatus status = ThresholdStatus::none;
    double value = 0.0;
};

/// First crossing of `max_re(p) = 0` from below on [lo, hi]: a 64-point
/// log-grid scan followed by 60 bisection steps.
Threshold first_instability(const std::function<double(double)>& max_re, double lo = 1e-8, double hi = 1e8);

/// Smallest chi (u* fixed) at which M(mu) gains an eigenvalue with Re > 0.
Threshold critical_chi(const ModelSpec& model, const SteadyState& ss, double mu);

/// Same search over alpha[species]; the steady state is recomputed at every
/// trial value by Newton continuation with the given pins.
Threshold critical_alpha(const ModelSpec& model, double u_star, const std::vector<Pin>& pins, double mu,
                         std::size_t species);

/// True iff every root of x^3 + b2 x^2 + b1 x + b0 has negative real part.
bool routh_hurwitz_cubic(double b2, double b1, double b0);

struct CubicCoefficients {
    double b2 = 0.0;
    double b1 = 0.0;
    double b0 = 0.0;
};

/// Characteristic polynomial of [[-a-d1, -b, c], [-a, -b-d2, c], [a, b, -c-d3]].
CubicCoefficients trimolecular_cubic(double a, double b, double c, double d1, double d2, double d3);

/// det M(mu) for the network v1 + v2 <-> v3, v1 -> 0 with production of v1
/// only and v3 the chemoattractant, split as C + slope * K.
struct TrimolecularDeterminant {
    double det = 0.0;       // dense determinant at the requested K
    double C = 0.0;         // dense determinant at K = 0
    double slope = 0.0;     // alpha1 k1 v2* mu D_tilde2
    double K0 = 0.0;        // -C / slope, where det changes sign
    double a = 0.0, b = 0.0, c = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;
    CubicCoefficients cubic;
};

/// Throws PreconditionError if the model does not have the trimolecular
/// shape, NumericalError if the dense determinant disagrees with the affine
/// formula beyond 1e-9 relative.
TrimolecularDeterminant trimolecular_determinant(const ModelSpec& model, const SteadyState& ss, double mu, double K);

/// True when the model has the shape trimolecular_determinant accepts.
bool is_trimolecular(const ModelSpec& model);

}  // namespace chemostab
