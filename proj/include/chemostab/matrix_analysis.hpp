#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chemostab/linalg.hpp"

namespace chemostab {

/// G(A): an edge i -> j for every nonzero A(i, j), loops included.
class DirectedGraph {
public:
    explicit DirectedGraph(std::size_t n = 0) : out_(n) {}

    void add_edge(std::size_t from, std::size_t to);
    bool has_edge(std::size_t from, std::size_t to) const;

    std::size_t size() const noexcept { return out_.size(); }
    /// Sorted successor list of `v`.
    const std::vector<std::size_t>& successors(std::size_t v) const { return out_.at(v); }
    /// All edges in (from, to) lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

private:
    std::vector<std::vector<std::size_t>> out_;
};

/// Strongly connected components ordered so that every condensation edge
/// points from a later class to an earlier one. Permuting a matrix by
/// `permutation` then gives a block lower-triangular matrix.
struct ClassDecomposition {
    std::vector<std::vector<std::size_t>> classes;  // each sorted ascending
    std::vector<std::size_t> permutation;           // position -> original index
    std::vector<std::pair<std::size_t, std::size_t>> condensation_edges;  // (from class, to class)

    /// Class number of every vertex.
    std::vector<std::size_t> class_of() const;
};

struct RowSumBounds {
    double min_row_sum = 0.0;
    double max_row_sum = 0.0;
};

struct PerronResult {
    double rho = 0.0;
    Vector vector;  // positive, unit max-norm
};

struct BlockTriangular {
    Matrix T;
    ClassDecomposition decomposition;
};

/// Outcome of the nonsingular M-matrix test, one flag per sub-check.
struct MMatrixCheck {
    bool sign_pattern = false;         // off-diagonal entries <= 0
    bool nonsingular = false;
    bool inverse_nonnegative = false;

    bool ok() const noexcept { return sign_pattern && nonsingular && inverse_nonnegative; }
};

DirectedGraph digraph(const Matrix& A);
ClassDecomposition strongly_connected_components(const DirectedGraph& g);

/// A single vertex counts as strongly connected.
bool is_irreducible(const Matrix& A);
bool is_metzler(const Matrix& A);

MMatrixCheck check_nonsingular_m_matrix(const Matrix& A);
inline bool is_nonsingular_m_matrix(const Matrix& A) { return check_nonsingular_m_matrix(A).ok(); }

/// Min and max row sums; throws PreconditionError if A has a negative entry.
RowSumBounds row_sum_bounds(const Matrix& A);

/// Perron root and positive eigenvector of a nonnegative irreducible matrix.
/// Shifted power iteration with a Collatz–Wielandt stopping rule; falls back
/// to a dense eigensolve if the iteration stalls.
PerronResult perron_root(const Matrix& A);

/// Spectral radius of any nonnegative matrix, taken as the largest Perron
/// root over the irreducible diagonal blocks of its block-triangular form.
double nonnegative_spectral_radius(const Matrix& A);

BlockTriangular block_triangularize(const Matrix& A);

/// Reachability by a path of length >= 0, so has_path(g, i, i) is true.
bool has_path(const DirectedGraph& g, std::size_t from, std::size_t to);

}  // namespace chemostab
