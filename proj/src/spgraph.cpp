#include "espgroups/spgraph.hpp"

#include <bit>
#include <cmath>
#include <ostream>

#include "espgroups/jacobi.hpp"

namespace esp {

namespace {

std::int64_t pow_i64(int base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

QVec rank_to_vec(std::int64_t rank, int q, int n) {
    QVec v(n);
    for (int i = n; i-- > 0;) {
        v[i] = static_cast<Elem>(rank % q);
        rank /= q;
    }
    return v;
}

std::int64_t vec_to_rank(const QVec& v, int q) {
    std::int64_t r = 0;
    for (Elem e : v) {
        if (e < 0 || e >= q)
            throw IndexOutOfRange("vertex coordinate " + std::to_string(e) +
                                  " out of range");
        r = r * q + e;
    }
    return r;
}

void set_bit(std::uint64_t* row, std::int64_t i) {
    row[i >> 6] |= std::uint64_t{1} << (i & 63);
}

bool get_bit(const std::uint64_t* row, std::int64_t i) {
    return (row[i >> 6] >> (i & 63)) & 1u;
}

std::int64_t popcount_row(const std::uint64_t* row, int words) {
    std::int64_t c = 0;
    for (int w = 0; w < words; ++w) c += std::popcount(row[w]);
    return c;
}

std::int64_t popcount_and(const std::uint64_t* a, const std::uint64_t* b,
                          int words) {
    std::int64_t c = 0;
    for (int w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
    return c;
}

}  // namespace

SPGraph::SPGraph(QTablePtr Q, int n) : Q_(std::move(Q)), n_(n) {
    if (!Q_) throw Error("null table");
    if (n_ < 1) throw DimensionMismatch("dimension n must be >= 1");
    const int q = Q_->order();
    side_ = 1;
    for (int i = 0; i < n_ + 1; ++i) {
        side_ *= q;
        if (side_ > 4096)
            throw TooLarge("sum-product graph guard: q^(n+1) > 4096");
    }
    words_ = static_cast<int>((side_ + 63) / 64);
    xrows_.assign(static_cast<size_t>(side_) * words_, 0);
    yrows_.assign(static_cast<size_t>(side_) * words_, 0);

    // One dot product per (x vec, y vec) pair; the z loops only consult the
    // addition table.
    const std::int64_t vecs = pow_i64(q, n_);
    for (std::int64_t rx = 0; rx < vecs; ++rx) {
        const QVec xv = rank_to_vec(rx, q, n_);
        for (std::int64_t ry = 0; ry < vecs; ++ry) {
            const QVec yv = rank_to_vec(ry, q, n_);
            const Elem s = dot(*Q_, xv, yv);
            for (Elem zx = 0; zx < q; ++zx)
                for (Elem zy = 0; zy < q; ++zy)
                    if (Q_->add(zx, zy) == s) {
                        const std::int64_t u = rx * q + zx;
                        const std::int64_t v = ry * q + zy;
                        set_bit(&xrows_[static_cast<size_t>(u) * words_], v);
                        set_bit(&yrows_[static_cast<size_t>(v) * words_], u);
                    }
        }
    }
}

std::pair<QVec, Elem> SPGraph::vertex_label(std::int64_t v) const {
    if (v < 0 || v >= 2 * side_)
        throw IndexOutOfRange("vertex id " + std::to_string(v) + " out of range");
    const std::int64_t local = v % side_;
    const int q = Q_->order();
    return {rank_to_vec(local / q, q, n_), static_cast<Elem>(local % q)};
}

std::int64_t SPGraph::vertex_index(bool y_side, const QVec& vec, Elem z) const {
    if (static_cast<int>(vec.size()) != n_)
        throw DimensionMismatch("vertex vector must have length n");
    const int q = Q_->order();
    if (z < 0 || z >= q)
        throw IndexOutOfRange("vertex z out of range");
    return (y_side ? side_ : 0) + vec_to_rank(vec, q) * q + z;
}

bool SPGraph::adjacent(std::int64_t u, std::int64_t v) const {
    if (u < 0 || u >= 2 * side_ || v < 0 || v >= 2 * side_)
        throw IndexOutOfRange("vertex id out of range");
    if (is_x_side(u) == is_x_side(v)) return false;
    if (is_x_side(v)) std::swap(u, v);
    return get_bit(&xrows_[static_cast<size_t>(u) * words_], v - side_);
}

std::int64_t SPGraph::degree(std::int64_t v) const {
    return popcount_row(row(v), words_);
}

std::int64_t SPGraph::common_neighbors(std::int64_t u, std::int64_t v) const {
    if (u == v) throw SameVertex("common_neighbors needs distinct vertices");
    if (is_x_side(u) != is_x_side(v))
        throw DifferentSides("common_neighbors needs same-side vertices");
    return popcount_and(row(u), row(v), words_);
}

const std::uint64_t* SPGraph::row(std::int64_t v) const {
    if (v < 0 || v >= 2 * side_)
        throw IndexOutOfRange("vertex id " + std::to_string(v) + " out of range");
    return is_x_side(v) ? &xrows_[static_cast<size_t>(v) * words_]
                        : &yrows_[static_cast<size_t>(v - side_) * words_];
}

std::int64_t SPGraph::count_edges(const std::vector<std::int64_t>& B,
                                  const std::vector<std::int64_t>& C) const {
    std::vector<std::uint64_t> cmask(words_, 0);
    for (std::int64_t c : C) {
        if (c < 0 || c >= side_)
            throw IndexOutOfRange("Y-side local index out of range");
        set_bit(cmask.data(), c);
    }
    std::int64_t e = 0;
    for (std::int64_t b : B) {
        if (b < 0 || b >= side_)
            throw IndexOutOfRange("X-side local index out of range");
        e += popcount_and(&xrows_[static_cast<size_t>(b) * words_], cmask.data(),
                          words_);
    }
    return e;
}

void SPGraph::dump_edges(std::ostream& out) const {
    for (std::int64_t u = 0; u < side_; ++u) {
        const std::uint64_t* r = &xrows_[static_cast<size_t>(u) * words_];
        for (std::int64_t v = 0; v < side_; ++v)
            if (get_bit(r, v)) out << u << ' ' << side_ + v << '\n';
    }
}

HGraph h_graph(const SPGraph& G) {
    const std::int64_t side = G.side_size();
    const std::int64_t total = 2 * side;
    HGraph H;
    H.vertices = total;
    H.words = static_cast<int>((total + 63) / 64);
    H.rows.assign(static_cast<size_t>(total) * H.words, 0);
    H.expected_degree = G.table().order() - 1;

    for (std::int64_t s = 0; s < 2; ++s)
        for (std::int64_t u = 0; u < side; ++u)
            for (std::int64_t v = u + 1; v < side; ++v) {
                const std::int64_t gu = s * side + u, gv = s * side + v;
                if (G.common_neighbors(gu, gv) == 0) {
                    set_bit(&H.rows[static_cast<size_t>(gu) * H.words], gv);
                    set_bit(&H.rows[static_cast<size_t>(gv) * H.words], gu);
                }
            }

    H.regular = true;
    for (std::int64_t v = 0; v < total; ++v)
        if (popcount_row(&H.rows[static_cast<size_t>(v) * H.words], H.words) !=
            H.expected_degree) {
            H.regular = false;
            break;
        }
    return H;
}

bool m_squared_check(const SPGraph& G) {
    const int q = G.table().order();
    const int n = G.dimension();
    const std::int64_t side = G.side_size();
    const std::int64_t qn = pow_i64(q, n);
    const std::int64_t qn1 = n >= 1 ? pow_i64(q, n - 1) : 0;

    const HGraph E = h_graph(G);

    // Same-side blocks: (M^2)[u][v] = |N(u) ∩ N(v)| over the opposite side.
    // Cross-side blocks of both sides of the identity vanish structurally
    // (M^2 entries because the graph is bipartite; the right side because J
    // is block-diagonal, I is diagonal, and E has same-side edges only).
    for (std::int64_t s = 0; s < 2; ++s)
        for (std::int64_t u = 0; u < side; ++u)
            for (std::int64_t v = u; v < side; ++v) {
                const std::int64_t gu = s * side + u, gv = s * side + v;
                const std::int64_t lhs =
                    gu == gv ? G.degree(gu) : G.common_neighbors(gu, gv);
                const std::int64_t rhs = qn1 + (gu == gv ? qn - qn1 : 0) -
                                         (gu != gv && E.edge(gu, gv) ? qn1 : 0);
                if (lhs != rhs) return false;
            }
    return true;
}

SpectralReport spectrum(const SPGraph& G, double tol) {
    const std::int64_t side = G.side_size();
    const std::int64_t dim = 2 * side;
    if (dim > 4096)
        throw TooLarge("dense eigensolver guard: 2 q^(n+1) > 4096");

    std::vector<double> m(static_cast<size_t>(dim) * dim, 0.0);
    for (std::int64_t u = 0; u < side; ++u) {
        const std::uint64_t* r = G.row(u);
        for (std::int64_t v = 0; v < side; ++v)
            if (get_bit(r, v)) {
                m[static_cast<size_t>(u) * dim + (side + v)] = 1.0;
                m[static_cast<size_t>(side + v) * dim + u] = 1.0;
            }
    }

    const JacobiResult jr =
        jacobi_eigenvalues(std::move(m), static_cast<int>(dim), 1e-9, 100);

    SpectralReport rep;
    rep.eigenvalues = jr.eigenvalues;
    rep.lambda1 = jr.eigenvalues.front();
    rep.lambda2 = jr.eigenvalues.size() > 1 ? jr.eigenvalues[1] : 0.0;
    rep.lambda_min = jr.eigenvalues.back();
    rep.bound = std::sqrt(2.0 * pow_i64(G.table().order(), G.dimension()));
    rep.pass = rep.lambda2 <= rep.bound + tol;
    rep.solver_iterations = jr.sweeps;
    rep.residual = jr.residual;
    return rep;
}

MixingResult mixing_check(const SPGraph& G, const std::vector<std::int64_t>& B,
                          const std::vector<std::int64_t>& C, double lambda2,
                          double tol) {
    const double d = static_cast<double>(pow_i64(G.table().order(), G.dimension()));
    MixingResult r;
    r.edges = G.count_edges(B, C);
    const double nb = static_cast<double>(B.size());
    const double nc = static_cast<double>(C.size());
    r.expected = d * nb * nc / static_cast<double>(G.side_size());
    r.deviation = std::abs(static_cast<double>(r.edges) - r.expected);
    r.bound = lambda2 * std::sqrt(nb * nc);
    r.pass = r.deviation <= r.bound + tol;
    return r;
}

EdgeWitness lemma4_set_check(const Brick& B, const QVec& a, const QVec& b,
                             Elem lambda) {
    if (!certificate(B, a, b))
        throw PreconditionFailed("lemma4_set_check requires the certificate");

    const GroupParams& P = B.params();
    const QTable& Q = P.table();
    const int n = P.n();
    const int q = P.q();
    const SPGraph G(P.table_ptr(), n);

    std::vector<ElemSet> Xp(n), Yp(n);
    for (int i = 0; i < n; ++i) {
        Xp[i] = shifted_intersection(Q, B.X()[i], a[i]);
        Yp[i] = shifted_intersection(Q, B.Y()[i], b[i]);
    }

    // E = X' x (-Z + lambda) on the X side; remember z for the witness.
    struct EVertex {
        QVec x;
        Elem z;
        std::int64_t id;
    };
    std::vector<EVertex> E;
    {
        std::vector<size_t> ix(n, 0);
        QVec x(n);
        for (;;) {
            for (int i = 0; i < n; ++i) x[i] = Xp[i][ix[i]];
            for (Elem z : B.Z()) {
                const Elem u = Q.add(Q.neg(z), lambda);
                E.push_back({x, z, G.vertex_index(false, x, u)});
            }
            int i = n - 1;
            while (i >= 0 && ++ix[i] == Xp[i].size()) ix[i--] = 0;
            if (i < 0) break;
        }
    }

    // F = {(b - y, -z' - f(y, b-y)) : z' in Z, y in Y'} on the Y side; the
    // carry shift applies to the M family only.
    struct FVertex {
        QVec y;
        Elem z;
        std::int64_t id;
    };
    std::vector<FVertex> F;
    {
        std::vector<size_t> iy(n, 0);
        QVec y(n), by(n);
        for (;;) {
            for (int i = 0; i < n; ++i) y[i] = Yp[i][iy[i]];
            for (int i = 0; i < n; ++i) by[i] = Q.sub(b[i], y[i]);
            Elem shift = 0;
            if (P.family() == Family::M)
                shift = static_cast<Elem>(carry_f(q, y, by) % q);
            for (Elem z : B.Z()) {
                const Elem v = Q.neg(Q.add(z, shift));
                F.push_back({y, z, G.vertex_index(true, by, v) - G.side_size()});
            }
            int i = n - 1;
            while (i >= 0 && ++iy[i] == Yp[i].size()) iy[i--] = 0;
            if (i < 0) break;
        }
    }

    for (const EVertex& e : E) {
        const std::uint64_t* r = G.row(e.id);
        for (const FVertex& f : F)
            if (get_bit(r, f.id)) return {e.x, f.y, e.z, f.z};
    }
    throw NoWitness("certificate held but E-F edge search found none");
}

}  // namespace esp
