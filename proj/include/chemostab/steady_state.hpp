#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chemostab/error.hpp"
#include "chemostab/matrix_analysis.hpp"
#include "chemostab/model.hpp"

namespace chemostab {

/// Homogeneous steady state: alpha * u_star + g(v_star) = 0.
struct SteadyState {
    double u_star = 0.0;
    Vector v_star;
    double residual_norm = 0.0;  // max-norm of alpha * u_star + g(v_star)
    bool nonnegative = false;    // every v_star entry >= 0
    int iterations = 0;          // Newton iterations; 0 for closed form

    /// u_star > 0 and every v_star entry > 0.
    bool positive() const;
};

/// g(v) = -A v for a network made only of first-order conversions and decays.
struct LinearPart {
    Matrix A;
};

/// Raised by linear_steady_state when A is not a nonsingular M-matrix.
class MMatrixError : public SteadyStateError {
public:
    MMatrixError(const std::string& what, MMatrixCheck check) : SteadyStateError(what), check_(check) {}
    const MMatrixCheck& check() const noexcept { return check_; }

private:
    MMatrixCheck check_;
};

/// Returns A with g(v) = -A v when every reaction has exactly one reactant
/// molecule and at most one molecule of each product; nullopt otherwise.
std::optional<LinearPart> extract_linear(const ReactionNetwork& net);

/// v* = u* A^-1 alpha. Throws MMatrixError naming the failed sub-check.
SteadyState linear_steady_state(const Matrix& A, const Vector& alpha, double u_star);

/// Extra equation v[species] = value, used to select one member of a
/// degenerate steady-state family.
struct Pin {
    std::size_t species = 0;
    double value = 0.0;
};

struct NewtonOptions {
    std::vector<Pin> pins;
    std::optional<Vector> initial_guess;
    int max_iterations = 200;
};

/// u* A0^-1 alpha for the linearization A0 = -J(0) when A0 is a nonsingular
/// M-matrix, all ones otherwise. Pinned entries are overwritten.
Vector default_initial_guess(const ModelSpec& model, double u_star, const std::vector<Pin>& pins = {});

/// Damped Newton (Gauss–Newton when pins are present) on
/// F(v) = alpha u* + g(v). Throws SteadyStateError on a singular Jacobian or
/// when 200 iterations do not reach the residual tolerance.
SteadyState newton_steady_state(const ModelSpec& model, double u_star, const NewtonOptions& options = {});

/// Closed form for linear M-matrix networks without pins, Newton otherwise.
SteadyState solve_steady_state(const ModelSpec& model, double u_star, const std::vector<Pin>& pins = {});

}  // namespace chemostab
