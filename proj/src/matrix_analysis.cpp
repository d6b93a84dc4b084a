#include "chemostab/matrix_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <Eigen/Eigenvalues>

#include "chemostab/error.hpp"

namespace chemostab {

namespace {

void require_square(const Matrix& A, const char* what) {
    if (A.rows() != A.cols()) throw DimensionError(std::string(what) + ": matrix is not square");
}

// Recursive Tarjan. Components come out sinks-first, which is exactly the
// order that makes the permuted matrix block lower-triangular.
class Tarjan {
public:
    explicit Tarjan(const DirectedGraph& g)
        : g_(g), index_(g.size(), kUnvisited), low_(g.size(), 0), on_stack_(g.size(), false) {}

    std::vector<std::vector<std::size_t>> run() {
        for (std::size_t v = 0; v < g_.size(); ++v) {
            if (index_[v] == kUnvisited) visit(v);
        }
        return std::move(components_);
    }

private:
    static constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();

    void visit(std::size_t v) {
        index_[v] = low_[v] = counter_++;
        stack_.push_back(v);
        on_stack_[v] = true;
        for (std::size_t w : g_.successors(v)) {
            if (index_[w] == kUnvisited) {
                visit(w);
                low_[v] = std::min(low_[v], low_[w]);
            } else if (on_stack_[w]) {
                low_[v] = std::min(low_[v], index_[w]);
            }
        }
        if (low_[v] == index_[v]) {
            std::vector<std::size_t> component;
            std::size_t w;
            do {
                w = stack_.back();
                stack_.pop_back();
                on_stack_[w] = false;
                component.push_back(w);
            } while (w != v);
            std::sort(component.begin(), component.end());
            components_.push_back(std::move(component));
        }
    }

    const DirectedGraph& g_;
    std::vector<std::size_t> index_;
    std::vector<std::size_t> low_;
    std::vector<bool> on_stack_;
    std::vector<std::size_t> stack_;
    std::size_t counter_ = 0;
    std::vector<std::vector<std::size_t>> components_;
};

bool is_nonnegative(const Matrix& A) { return (A.array() >= 0.0).all(); }

PerronResult perron_dense(const Matrix& A) {
    Eigen::EigenSolver<Matrix> es(A, true);
    if (es.info() != Eigen::Success) throw NumericalError("perron_root: dense eigensolve failed");
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < A.rows(); ++i) {
        if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
    }
    Vector x = es.eigenvectors().col(best).real().cwiseAbs();
    x /= x.maxCoeff();
    return {es.eigenvalues()[best].real(), x};
}

}  // namespace

void DirectedGraph::add_edge(std::size_t from, std::size_t to) {
    if (from >= out_.size() || to >= out_.size()) throw PreconditionError("add_edge: vertex out of range");
    auto& succ = out_[from];
    auto it = std::lower_bound(succ.begin(), succ.end(), to);
    if (it == succ.end() || *it != to) succ.insert(it, to);
}

bool DirectedGraph::has_edge(std::size_t from, std::size_t to) const {
    const auto& succ = out_.at(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

std::vector<std::pair<std::size_t, std::size_t>> DirectedGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < out_.size(); ++i) {
        for (std::size_t j : out_[i]) out.emplace_back(i, j);
    }
    return out;
}

std::vector<std::size_t> ClassDecomposition::class_of() const {
    std::vector<std::size_t> cls(permutation.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t v : classes[c]) cls[v] = c;
    }
    return cls;
}

DirectedGraph digraph(const Matrix& A) {
    require_square(A, "digraph");
    DirectedGraph g(static_cast<std::size_t>(A.rows()));
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (A(i, j) != 0.0) g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return g;
}

ClassDecomposition strongly_connected_components(const DirectedGraph& g) {
    ClassDecomposition d;
    d.classes = Tarjan(g).run();
    for (const auto& c : d.classes) d.permutation.insert(d.permutation.end(), c.begin(), c.end());
    const auto cls = d.class_of();
    for (auto [u, v] : g.edges()) {
        if (cls[u] != cls[v]) d.condensation_edges.emplace_back(cls[u], cls[v]);
    }
    std::sort(d.condensation_edges.begin(), d.condensation_edges.end());
    d.condensation_edges.erase(std::unique(d.condensation_edges.begin(), d.condensation_edges.end()),
                               d.condensation_edges.end());
    return d;
}

bool is_irreducible(const Matrix& A) {
    require_square(A, "is_irreducible");
    if (A.rows() == 0) throw PreconditionError("is_irreducible: empty matrix");
    return strongly_connected_components(digraph(A)).classes.size() == 1;
}

bool is_metzler(const Matrix& A) {
    require_square(A, "is_metzler");
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (i != j && A(i, j) < 0.0) return false;
        }
    }
    return true;
}

MMatrixCheck check_nonsingular_m_matrix(const Matrix& A) {
    require_square(A, "is_nonsingular_m_matrix");
    MMatrixCheck check;
    check.sign_pattern = true;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (i != j && A(i, j) > 0.0) check.sign_pattern = false;
        }
    }
    if (A.rows() == 0) return check;
    Eigen::FullPivLU<Matrix> lu(A);
    check.nonsingular = lu.isInvertible() && A.allFinite();
    if (check.nonsingular) {
        const Matrix inv = lu.inverse();
        // roundoff slack scaled to the size of the inverse
        const double slack = 1e-12 * std::max(1.0, inv.cwiseAbs().maxCoeff());
        check.inverse_nonnegative = inv.minCoeff() >= -slack;
    }
    return check;
}

RowSumBounds row_sum_bounds(const Matrix& A) {
    require_square(A, "row_sum_bounds");
    if (A.rows() == 0) throw PreconditionError("row_sum_bounds: empty matrix");
    if (!is_nonnegative(A)) throw PreconditionError("row_sum_bounds: matrix has a negative entry");
    const Vector sums = A.rowwise().sum();
    return {sums.minCoeff(), sums.maxCoeff()};
}

PerronResult perron_root(const Matrix& A) {
    require_square(A, "perron_root");
    if (A.rows() == 0) throw PreconditionError("perron_root: empty matrix");
    if (!is_nonnegative(A)) throw PreconditionError("perron_root: matrix has a negative entry");
    if (!is_irreducible(A)) throw PreconditionError("perron_root: matrix is reducible");
    const auto n = A.rows();
    if (n == 1) return {A(0, 0), Vector::Ones(1)};

    const RowSumBounds bounds = row_sum_bounds(A);
    // A + shift*I is primitive, so plain power iteration converges.
    const double shift = A.diagonal().maxCoeff() + 1.0;
    const Matrix B = A + shift * Matrix::Identity(n, n);

    constexpr int kMaxIterations = 100000;
    Vector x = Vector::Ones(n);
    for (int it = 0; it < kMaxIterations; ++it) {
        const Vector y = B * x;
        // Collatz–Wielandt: min and max of y_i / x_i bracket rho(B).
        const Vector ratios = y.cwiseQuotient(x);
        const double lo = ratios.minCoeff();
        const double hi = ratios.maxCoeff();
        x = y / y.maxCoeff();
        if (!x.allFinite() || (x.array() <= 0.0).any()) break;
        if (hi - lo <= 1e-12 * hi) {
            const double rho = std::clamp(0.5 * (lo + hi) - shift, bounds.min_row_sum, bounds.max_row_sum);
            return {rho, x};
        }
    }
    PerronResult dense = perron_dense(A);
    dense.rho = std::clamp(dense.rho, bounds.min_row_sum, bounds.max_row_sum);
    return dense;
}

double nonnegative_spectral_radius(const Matrix& A) {
    require_square(A, "nonnegative_spectral_radius");
    if (!is_nonnegative(A)) throw PreconditionError("nonnegative_spectral_radius: matrix has a negative entry");
    const auto d = strongly_connected_components(digraph(A));
    double rho = 0.0;
    for (const auto& cls : d.classes) {
        const auto m = static_cast<Eigen::Index>(cls.size());
        Matrix block(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                block(i, j) = A(static_cast<Eigen::Index>(cls[static_cast<std::size_t>(i)]),
                                static_cast<Eigen::Index>(cls[static_cast<std::size_t>(j)]));
            }
        }
        rho = std::max(rho, m == 1 ? block(0, 0) : perron_root(block).rho);
    }
    return rho;
}

BlockTriangular block_triangularize(const Matrix& A) {
    require_square(A, "block_triangularize");
    BlockTriangular out;
    out.decomposition = strongly_connected_components(digraph(A));
    const auto& p = out.decomposition.permutation;
    const auto n = A.rows();
    out.T.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.T(i, j) = A(static_cast<Eigen::Index>(p[static_cast<std::size_t>(i)]),
                            static_cast<Eigen::Index>(p[static_cast<std::size_t>(j)]));
        }
    }
    return out;
}

bool has_path(const DirectedGraph& g, std::size_t from, std::size_t to) {
    if (from >= g.size() || to >= g.size()) throw PreconditionError("has_path: vertex index out of range");
    if (from == to) return true;
    std::vector<bool> seen(g.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(from);
    seen[from] = true;
    while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t w : g.successors(v)) {
            if (w == to) return true;
            if (!seen[w]) {
                seen[w] = true;
                frontier.push(w);
            }
        }
    }
    return false;
}

}  // namespace chemostab
