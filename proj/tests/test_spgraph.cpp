#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "doctest.h"
#include "espgroups/jacobi.hpp"
#include "espgroups/spgraph.hpp"

using namespace esp;

namespace {

QTablePtr prime_ptr(int p) {
    return std::make_shared<QTable>(QTable::prime(p));
}

QTablePtr hall9() {
    static QTablePtr t = std::make_shared<QTable>(
        QTable::load(std::string(ESP_DATA_DIR) + "/hall9.qtable"));
    return t;
}

// (table, n) for the five structural instances.
std::vector<std::pair<QTablePtr, int>> instances() {
    return {{prime_ptr(2), 1},
            {prime_ptr(3), 1},
            {prime_ptr(3), 2},
            {prime_ptr(5), 1},
            {hall9(), 1}};
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

TEST_CASE("hand-checked adjacency at q = 2, n = 1") {
    const SPGraph G(prime_ptr(2), 1);
    CHECK(G.side_size() == 4);
    CHECK(G.vertex_count() == 8);
    // (x, zx) ~ (y, zy) iff x*y = zx + zy over F_2. Vertex order per side:
    // (0,0), (0,1), (1,0), (1,1).
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
            const int x = u >> 1, zx = u & 1, y = v >> 1, zy = v & 1;
            const bool want = (x * y) % 2 == (zx + zy) % 2;
            CHECK(G.adjacent(u, 4 + v) == want);
            CHECK(G.adjacent(4 + v, u) == want);  // symmetric
            CHECK_FALSE(G.adjacent(u, v));        // same side: never adjacent
        }
}

TEST_CASE("vertex numbering round-trips") {
    const SPGraph G(hall9(), 1);
    for (std::int64_t v = 0; v < G.vertex_count(); ++v) {
        const auto [vec, z] = G.vertex_label(v);
        CHECK(G.vertex_index(!G.is_x_side(v), vec, z) == v);
    }
    CHECK_THROWS_AS(G.vertex_index(false, {0, 0}, 0), DimensionMismatch);
    CHECK_THROWS_AS(G.vertex_index(false, {9}, 0), IndexOutOfRange);
}

TEST_CASE("regularity: every vertex has degree q^n") {
    for (const auto& [Q, n] : instances()) {
        const SPGraph G(Q, n);
        const std::int64_t want = ipow(Q->order(), n);
        CHECK(G.side_size() == ipow(Q->order(), n + 1));
        for (std::int64_t v = 0; v < G.vertex_count(); ++v)
            CHECK(G.degree(v) == want);
    }
}

TEST_CASE("common-neighbor dichotomy") {
    for (const auto& [Q, n] : instances()) {
        const SPGraph G(Q, n);
        const int q = Q->order();
        const std::int64_t qn1 = ipow(q, n - 1);
        for (std::int64_t u = 0; u < G.side_size(); ++u)
            for (std::int64_t v = u + 1; v < G.side_size(); ++v) {
                // Same vector: zero common neighbors; else exactly q^(n-1).
                const bool same_vec =
                    G.vertex_label(u).first == G.vertex_label(v).first;
                const std::int64_t want = same_vec ? 0 : qn1;
                CHECK(G.common_neighbors(u, v) == want);
                CHECK(G.common_neighbors(G.side_size() + u,
                                         G.side_size() + v) == want);
            }
        CHECK_THROWS_AS(G.common_neighbors(0, 0), SameVertex);
        CHECK_THROWS_AS(G.common_neighbors(0, G.side_size()), DifferentSides);
    }
}

TEST_CASE("H graph is (q-1)-regular and marks same-vector pairs") {
    for (const auto& [Q, n] : instances()) {
        const SPGraph G(Q, n);
        const HGraph H = h_graph(G);
        CHECK(H.regular);
        CHECK(H.expected_degree == Q->order() - 1);
        CHECK(H.vertices == G.vertex_count());
        // Edges pair distinct same-side vertices sharing the vector part.
        for (std::int64_t u = 0; u < G.vertex_count(); ++u)
            for (std::int64_t v = 0; v < G.vertex_count(); ++v) {
                if (u == v || G.is_x_side(u) != G.is_x_side(v)) {
                    CHECK_FALSE(H.edge(u, v));
                    continue;
                }
                const bool same_vec =
                    G.vertex_label(u).first == G.vertex_label(v).first;
                CHECK(H.edge(u, v) == same_vec);
            }
    }
}

TEST_CASE("matrix-squared identity holds entrywise") {
    for (const auto& [Q, n] : instances()) {
        const SPGraph G(Q, n);
        CHECK(m_squared_check(G));
    }
}

TEST_CASE("spectrum: exact extremes, the lambda2 bound, and moments") {
    // lambda2 equals q^(n/2) exactly at the five instances.
    const double expected_l2[] = {std::sqrt(2.0), std::sqrt(3.0), 3.0,
                                  std::sqrt(5.0), 3.0};
    int k = 0;
    for (const auto& [Q, n] : instances()) {
        const SPGraph G(Q, n);
        const SpectralReport rep = spectrum(G);
        const double d = ipow(Q->order(), n);
        CHECK(rep.pass);
        CHECK(rep.lambda1 == doctest::Approx(d).epsilon(1e-7));
        CHECK(rep.lambda_min == doctest::Approx(-d).epsilon(1e-7));
        CHECK(rep.lambda2 == doctest::Approx(expected_l2[k]).epsilon(1e-7));
        CHECK(rep.lambda2 <= rep.bound + 1e-6);
        CHECK(rep.residual < 1e-9);
        CHECK(rep.eigenvalues.size() == static_cast<size_t>(G.vertex_count()));

        // Moment oracles, independent of the eigensolver:
        //   sum lambda   = tr A   = 0
        //   sum lambda^2 = tr A^2 = 2 * side * q^n   (directed edge count)
        //   sum lambda^4 = ||A^2||_F^2
        //                = 2 side (q^2n + (side - q) q^(2n-2))
        // and the spectrum is symmetric (bipartite graph).
        const double side = static_cast<double>(G.side_size());
        double s1 = 0, s2 = 0, s4 = 0;
        for (double l : rep.eigenvalues) {
            s1 += l;
            s2 += l * l;
            s4 += l * l * l * l;
        }
        const double qn1 = ipow(Q->order(), n - 1);
        CHECK(std::fabs(s1) < 1e-6);
        CHECK(s2 == doctest::Approx(2 * side * d).epsilon(1e-7));
        CHECK(s4 == doctest::Approx(2 * side *
                                    (d * d + (side - Q->order()) * qn1 * qn1))
                        .epsilon(1e-7));
        for (size_t i = 0; i < rep.eigenvalues.size(); ++i)
            CHECK(std::fabs(rep.eigenvalues[i] +
                            rep.eigenvalues[rep.eigenvalues.size() - 1 - i]) <
                  1e-6);
        ++k;
    }
}

TEST_CASE("mixing lemma on seeded random vertex sets") {
    std::mt19937_64 rng(0);
    for (const auto& [Q, n] : instances()) {
        const SPGraph G(Q, n);
        const double l2 = spectrum(G).lambda2;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<std::int64_t> B, C;
            for (std::int64_t v = 0; v < G.side_size(); ++v) {
                if (rng() & 1u) B.push_back(v);
                if (rng() & 1u) C.push_back(v);
            }
            const MixingResult r = mixing_check(G, B, C, l2);
            CHECK(r.pass);
            CHECK(r.deviation <= r.bound + 1e-6);

            // Exact edge count against a direct double loop.
            std::int64_t brute = 0;
            for (std::int64_t u : B)
                for (std::int64_t v : C)
                    brute += G.adjacent(u, G.side_size() + v) ? 1 : 0;
            CHECK(r.edges == brute);
        }
    }
}

TEST_CASE("edge dumps are deterministic and complete") {
    const SPGraph G(prime_ptr(3), 1);
    std::ostringstream a, b;
    G.dump_edges(a);
    G.dump_edges(b);
    CHECK(a.str() == b.str());
    std::istringstream in(a.str());
    std::int64_t u, v, count = 0;
    while (in >> u >> v) {
        CHECK(G.adjacent(u, v));
        ++count;
    }
    CHECK(count == G.side_size() * 3);  // side * degree undirected edges
}

TEST_CASE("lemma4_set_check witness solves the coset equation") {
    for (Family fam : {Family::Heisenberg, Family::M}) {
        const GroupParams P(fam, prime_ptr(3), 1);
        const ElemSet F = {0, 1, 2};
        const Brick B(P, {F}, {F}, F);
        const QTable& Q = P.table();
        for (Elem a = 0; a < 3; ++a)
            for (Elem b = 0; b < 3; ++b)
                for (Elem lambda = 0; lambda < 3; ++lambda) {
                    const EdgeWitness w =
                        lemma4_set_check(B, {a}, {b}, lambda);
                    // Membership in the shifted sets and in Z.
                    const ElemSet Xp = shifted_intersection(Q, B.X()[0], a);
                    const ElemSet Yp = shifted_intersection(Q, B.Y()[0], b);
                    CHECK(std::count(Xp.begin(), Xp.end(), w.x[0]) == 1);
                    CHECK(std::count(Yp.begin(), Yp.end(), w.y[0]) == 1);
                    CHECK(std::count(F.begin(), F.end(), w.z) == 1);
                    CHECK(std::count(F.begin(), F.end(), w.zprime) == 1);
                    // z + z' + <x, b-y> (+ f(y, b-y)) = lambda.
                    const QVec by{Q.sub(b, w.y[0])};
                    Elem lhs = Q.add(Q.add(w.z, w.zprime),
                                     dot(Q, w.x, by));
                    if (fam == Family::M)
                        lhs = Q.add(lhs,
                                    static_cast<Elem>(carry_f(3, w.y, by) % 3));
                    CHECK(lhs == lambda);
                }
    }

    // Without the certificate the reconstruction refuses to run.
    const GroupParams H(Family::Heisenberg, prime_ptr(3), 1);
    const Brick tiny(H, {{0}}, {{0}}, {0, 1});
    CHECK_THROWS_AS(lemma4_set_check(tiny, {0}, {0}, 0), PreconditionFailed);
}

TEST_CASE("lemma4_set_check witness over the hall9 brick") {
    const Brick B = load_brick(std::string(ESP_DATA_DIR) + "/hall9_n1.brick",
                               Family::Heisenberg);
    const QTable& Q = B.params().table();
    for (Elem lambda : {0, 4, 8}) {
        const EdgeWitness w = lemma4_set_check(B, {2}, {7}, lambda);
        const QVec by{Q.sub(7, w.y[0])};
        CHECK(Q.add(Q.add(w.z, w.zprime), dot(Q, w.x, by)) == lambda);
    }
}

TEST_CASE("size guards") {
    CHECK_THROWS_AS(SPGraph(prime_ptr(11), 3), TooLarge);  // 11^4 > 4096
    const SPGraph G(prime_ptr(7), 3);  // 7^4 = 2401 builds fine
    CHECK(G.side_size() == 2401);
    CHECK_THROWS_AS(spectrum(G), TooLarge);  // dense 4802 x 4802 refused
}

TEST_CASE("jacobi eigensolver unit checks") {
    // [[2,1],[1,2]] has eigenvalues 3 and 1.
    const JacobiResult r = jacobi_eigenvalues({2, 1, 1, 2}, 2);
    REQUIRE(r.eigenvalues.size() == 2);
    CHECK(r.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.residual < 1e-9);

    // Already-diagonal input converges in zero rotations.
    const JacobiResult d =
        jacobi_eigenvalues({5, 0, 0, 0, -1, 0, 0, 0, 2}, 3);
    CHECK(d.eigenvalues == std::vector<double>{5, 2, -1});

    CHECK_THROWS_AS(jacobi_eigenvalues({2, 1, 1, 2}, 2, 1e-12, 0),
                    NoConvergence);
}
