#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chemostab/model.hpp"
#include "chemostab/spectral.hpp"
#include "chemostab/steady_state.hpp"

namespace chemostab {

/// Cell-centred grid on [0, L]: x_j = (j + 1/2) h, h = L / n.
class Grid1D {
public:
    Grid1D(std::size_t n, double length);

    std::size_t n() const noexcept { return n_; }
    double length() const noexcept { return length_; }
    double h() const noexcept { return length_ / static_cast<double>(n_); }
    double x(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * h(); }

private:
    std::size_t n_;
    double length_;
};

/// Smallest grid `simulate` accepts.
inline constexpr std::size_t kMinSimulationCells = 8;

/// Cell averages of u and of each chemical (row k of `v` is species k).
struct State {
    Vector u;
    Matrix v;
    double t = 0.0;
};

struct TrajectorySample {
    double t = 0.0;
    double mass = 0.0;
    double mode_amplitude = 0.0;  // signed cosine coefficient of u
    double max_deviation = 0.0;   // max |field - reference| over all fields
    Vector species_means;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    std::vector<State> snapshots;  // filled when keep_snapshots is set
    std::size_t n = 0;
    int tracked_mode = 1;
    bool diverged = false;
    double diverged_at = 0.0;
    double min_u = 0.0;            // negative values are reported, not clamped
};

struct SimulationOptions {
    int tracked_mode = 1;
    bool keep_snapshots = false;
    /// Reference for max_deviation; defaults to the spatial mean of the
    /// initial condition.
    std::optional<SteadyState> reference;
};

/// Interval domain of the model as a grid. Throws PreconditionError for
/// rectangles.
Grid1D model_grid(const ModelSpec& model, std::size_t n);

/// Largest admissible time step 0.4 h^2 / max(D, max D_tilde).
double max_stable_dt(const ModelSpec& model, const Grid1D& grid);

/// Thrown by simulate when dt exceeds max_stable_dt.
class TimeStepError : public PreconditionError {
public:
    TimeStepError(const std::string& what, double bound) : PreconditionError(what), bound_(bound) {}
    double bound() const noexcept { return bound_; }

private:
    double bound_;
};

/// Spatially constant state at the steady state.
State homogeneous_state(const SteadyState& ss, const Grid1D& grid);

/// Steady state plus amplitude * cos(mode pi x / L) added to u.
State cosine_perturbation(const SteadyState& ss, const Grid1D& grid, double amplitude, int mode = 1);

/// Integrates the chemotaxis system on an interval with zero-flux ends:
/// diffusion by backward Euler (one tridiagonal solve per field), upwinded
/// chemotactic flux and kinetics explicit. Samples every `sample_every`
/// steps and at t_end. Non-finite values or u > 1e12 stop the run with
/// `diverged` set.
Trajectory simulate(const ModelSpec& model, const State& ic, double dt, double t_end, std::size_t sample_every,
                    const SimulationOptions& options = {});

/// h * sum(u).
double total_mass(const State& state, const Grid1D& grid);

/// Least-squares slope of log(mode_amplitude) over samples in [t0, t1].
/// Throws PreconditionError if an amplitude in the window is <= 0 or fewer
/// than two samples fall inside.
double growth_rate(const Trajectory& traj, double t0, double t1);

/// Eigenvalues -(4/h^2) sin^2(i pi / (2n)), i = 0..n-1, of the cell-centred
/// Neumann Laplacian.
std::vector<double> discrete_neumann_eigenvalues(const Grid1D& grid);

/// The simulator's spatial scheme linearized at (u*, v*), as a dense
/// (N+1)n x (N+1)n matrix ordered field-major.
Matrix linearized_operator(const ModelSpec& model, const SteadyState& ss, const Grid1D& grid);

struct CrossCheckReport {
    std::size_t n = 0;
    double hausdorff_distance = 0.0;
    std::vector<Complexd> operator_eigenvalues;
    std::vector<Complexd> reduced_eigenvalues;
};

/// Compares the spectrum of the linearized operator with the union of
/// eig M(mu_i^h) over the discrete Laplacian eigenvalues. n <= 128.
CrossCheckReport discrete_cross_check(const ModelSpec& model, const SteadyState& ss, const Grid1D& grid);

/// Symmetric Hausdorff distance between two finite point sets in C.
double hausdorff_distance(const std::vector<Complexd>& a, const std::vector<Complexd>& b);

}  // namespace chemostab
