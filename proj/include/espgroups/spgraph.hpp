#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "espgroups/brick.hpp"

namespace esp {

// Bipartite sum-product graph SP_{Q,n}: both sides are Q^n x Q, and
// (x, z_x) ~ (y, z_y) iff <x, y> = z_x + z_y.
//
// Vertices are numbered X side first, each side lexicographic by (vec, z):
// X-side vertex v in [0, side), Y-side vertex side + v.
class SPGraph {
public:
    // Throws TooLarge when q^(n+1) > 4096.
    SPGraph(QTablePtr Q, int n);

    const QTable& table() const { return *Q_; }
    const QTablePtr& table_ptr() const { return Q_; }
    int dimension() const { return n_; }
    std::int64_t side_size() const { return side_; }
    std::int64_t vertex_count() const { return 2 * side_; }

    bool is_x_side(std::int64_t v) const { return v < side_; }
    // Decodes a global vertex id into (vec, z).
    std::pair<QVec, Elem> vertex_label(std::int64_t v) const;
    std::int64_t vertex_index(bool y_side, const QVec& vec, Elem z) const;

    bool adjacent(std::int64_t u, std::int64_t v) const;
    std::int64_t degree(std::int64_t v) const;

    // Common neighbors of two distinct same-side vertices.
    // Throws SameVertex / DifferentSides.
    std::int64_t common_neighbors(std::int64_t u, std::int64_t v) const;

    // Row of the bipartite incidence as 64-bit words over the opposite side:
    // X-side rows index Y-side vertices and vice versa.
    const std::uint64_t* row(std::int64_t v) const;
    int words_per_row() const { return words_; }

    // Edges between B (X-side local indices) and C (Y-side local indices).
    std::int64_t count_edges(const std::vector<std::int64_t>& B,
                             const std::vector<std::int64_t>& C) const;

    // Plain text edge list "u v", deterministic order.
    void dump_edges(std::ostream& out) const;

private:
    QTablePtr Q_;
    int n_;
    std::int64_t side_;
    int words_;
    std::vector<std::uint64_t> xrows_;  // side_ rows over Y side
    std::vector<std::uint64_t> yrows_;  // side_ rows over X side (transpose)
};

// Same-side non-collision graph H: u ~ v iff same side and zero common
// neighbors in G. For a sum-product graph this is (q-1)-regular.
struct HGraph {
    std::int64_t vertices = 0;
    int words = 0;
    std::vector<std::uint64_t> rows;  // vertices x words adjacency bitset
    bool regular = false;             // every degree == q-1
    std::int64_t expected_degree = 0;

    bool edge(std::int64_t u, std::int64_t v) const {
        return (rows[static_cast<size_t>(u) * words + (v >> 6)] >>
                (v & 63)) & 1u;
    }
};

HGraph h_graph(const SPGraph& G);

// Entrywise integer identity
//   M^2 = q^(n-1) (J 0; 0 J) + (q^n - q^(n-1)) I - q^(n-1) E,
// with E the adjacency matrix of h_graph(G).
bool m_squared_check(const SPGraph& G);

struct SpectralReport {
    double lambda1 = 0, lambda2 = 0, lambda_min = 0;
    double bound = 0;  // sqrt(2) * q^(n/2)
    bool pass = false;
    int solver_iterations = 0;  // Jacobi sweeps
    double residual = 0;
    std::vector<double> eigenvalues;  // all, sorted descending
};

// Full spectrum of the 2*side symmetric adjacency matrix via Jacobi
// rotations (residual 1e-9, 100-sweep cap; throws NoConvergence).
// pass = (lambda2 <= bound + tol).
SpectralReport spectrum(const SPGraph& G, double tol = 1e-6);

struct MixingResult {
    std::int64_t edges = 0;
    double expected = 0;   // d |B||C| / side
    double deviation = 0;  // |edges - expected|
    double bound = 0;      // lambda2 * sqrt(|B||C|)
    bool pass = false;
};

// Exact edge count against the expander mixing bound, using the given
// (computed) lambda2. B and C are side-local indices.
MixingResult mixing_check(const SPGraph& G, const std::vector<std::int64_t>& B,
                          const std::vector<std::int64_t>& C, double lambda2,
                          double tol = 1e-6);

struct EdgeWitness {
    QVec x, y;
    Elem z = 0;       // factor from Z via the set E
    Elem zprime = 0;  // factor from Z via the set F
};

// Reconstructs the two vertex sets E = X' x (-Z + lambda) and
// F = {(b - y, -z [- f(y, b-y) for the M family]) : z in Z, y in Y'} inside
// SP_{Q,n} and returns an edge between them, i.e. a solution of
//   z + z' + <x, b-y> [+ f(y, b-y)] = lambda.
// Throws PreconditionFailed when certificate(B, a, b) does not hold and
// NoWitness if no edge exists (a soundness violation).
EdgeWitness lemma4_set_check(const Brick& B, const QVec& a, const QVec& b,
                             Elem lambda);

}  // namespace esp
