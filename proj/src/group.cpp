#include "espgroups/group.hpp"

#include <random>
#include <sstream>

namespace esp {

std::string to_string(const GElem& g) {
    std::ostringstream out;
    out << '[';
    for (size_t i = 0; i < g.x.size(); ++i)
        out << (i ? "," : "") << g.x[i];
    out << " | ";
    for (size_t i = 0; i < g.y.size(); ++i)
        out << (i ? "," : "") << g.y[i];
    out << " | " << g.z << ']';
    return out.str();
}

GroupParams::GroupParams(Family family, QTablePtr Q, int n)
    : family_(family), Q_(std::move(Q)), n_(n) {
    if (!Q_) throw Error("null table");
    if (n_ < 1) throw DimensionMismatch("dimension n must be >= 1");
    if (family_ == Family::M && !Q_->is_prime_field())
        throw NotMFamily("the M family is defined over prime fields only; table '" +
                         Q_->name() + "' is not one");
    // |G| = q^(2n+1), kept within 62 bits so rank arithmetic cannot overflow.
    order_ = 1;
    const auto q = static_cast<std::uint64_t>(Q_->order());
    for (int i = 0; i < 2 * n_ + 1; ++i) {
        if (order_ > (std::uint64_t{1} << 62) / q)
            throw TooLarge("group order q^(2n+1) exceeds 2^62");
        order_ *= q;
    }
}

int carry_f(int p, const QVec& y, const QVec& yprime) {
    if (y.size() != yprime.size())
        throw DimensionMismatch("carry_f: vectors of length " +
                                std::to_string(y.size()) + " and " +
                                std::to_string(yprime.size()));
    int carries = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || y[i] >= p || yprime[i] < 0 || yprime[i] >= p)
            throw IndexOutOfRange("carry_f: entry outside [0, p)");
        carries += (y[i] + yprime[i]) / p;
    }
    return carries;
}

namespace {

QVec vec_add(const QTable& Q, const QVec& u, const QVec& v) {
    QVec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = Q.add(u[i], v[i]);
    return w;
}

QVec vec_neg(const QTable& Q, const QVec& u) {
    QVec w(u.size());
    for (size_t i = 0; i < u.size(); ++i) w[i] = Q.neg(u[i]);
    return w;
}

void check_shapes(const GElem& g, const GElem& h) {
    if (g.x.size() != g.y.size() || h.x.size() != h.y.size() ||
        g.x.size() != h.x.size())
        throw DimensionMismatch("group elements of mismatched dimension");
}

}  // namespace

GElem h_mul(const QTable& Q, const GElem& g, const GElem& h) {
    check_shapes(g, h);
    return {vec_add(Q, g.x, h.x), vec_add(Q, g.y, h.y),
            Q.add(Q.add(g.z, h.z), dot(Q, g.x, h.y))};
}

GElem m_mul(const QTable& Q, const GElem& g, const GElem& h) {
    if (!Q.is_prime_field())
        throw NotMFamily("m_mul requires a prime field table");
    check_shapes(g, h);
    const int p = Q.order();
    const Elem f = static_cast<Elem>(carry_f(p, g.y, h.y) % p);
    return {vec_add(Q, g.x, h.x), vec_add(Q, g.y, h.y),
            Q.add(Q.add(Q.add(g.z, h.z), dot(Q, g.x, h.y)), f)};
}

GElem mul(const GroupParams& P, const GElem& g, const GElem& h) {
    return P.family() == Family::M ? m_mul(P.table(), g, h)
                                   : h_mul(P.table(), g, h);
}

GElem identity(const GroupParams& P) {
    return {QVec(P.n(), 0), QVec(P.n(), 0), 0};
}

GElem gpow(const GroupParams& P, const GElem& g, std::uint64_t k) {
    GElem acc = identity(P);
    for (std::uint64_t i = 0; i < k; ++i) acc = mul(P, acc, g);
    return acc;
}

GElem inverse(const GroupParams& P, const GElem& g) {
    const QTable& Q = P.table();
    GElem inv{vec_neg(Q, g.x), vec_neg(Q, g.y), 0};
    // Solve g * inv = identity for the last coordinate:
    // z + z' + <x, -y> (+ f(y, -y)) = 0.
    Elem t = Q.add(g.z, dot(Q, g.x, inv.y));
    if (P.family() == Family::M)
        t = Q.add(t, static_cast<Elem>(carry_f(Q.order(), g.y, inv.y) % Q.order()));
    inv.z = Q.neg(t);
    return inv;
}

bool RelationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

RelationReport check_relations(const GroupParams& P) {
    if (!P.table().is_prime_field())
        throw NotAField("presentation relations are stated over prime fields");
    if (P.n() > 64) throw TooLarge("relation check limited to n <= 64");

    const int n = P.n();
    const int p = P.q();
    const GElem id = identity(P);

    auto gen_a = [&](int i) {
        GElem g = id;
        g.x[i] = 1;
        return g;
    };
    auto gen_b = [&](int i) {
        GElem g = id;
        g.y[i] = 1;
        return g;
    };
    const GElem c{QVec(n, 0), QVec(n, 0), 1};

    // [g,h] = g^-1 h^-1 g h
    auto comm = [&](const GElem& g, const GElem& h) {
        return mul(P, mul(P, mul(P, inverse(P, g), inverse(P, h)), g), h);
    };

    RelationReport report;
    auto idx = [](const char* sym, int i) {
        return std::string(sym) + std::to_string(i + 1);
    };
    auto record = [&report](std::string rel, bool pass) {
        report.checks.push_back({std::move(rel), pass});
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i < j) {
                record("[" + idx("a", i) + "," + idx("a", j) + "] = 1",
                       comm(gen_a(i), gen_a(j)) == id);
                record("[" + idx("b", i) + "," + idx("b", j) + "] = 1",
                       comm(gen_b(i), gen_b(j)) == id);
            }
            if (i != j)
                record("[" + idx("a", i) + "," + idx("b", j) + "] = 1",
                       comm(gen_a(i), gen_b(j)) == id);
        }
    for (int i = 0; i < n; ++i) {
        record("[" + idx("a", i) + ",c] = 1", comm(gen_a(i), c) == id);
        record("[" + idx("b", i) + ",c] = 1", comm(gen_b(i), c) == id);
        record("[" + idx("a", i) + "," + idx("b", i) + "] = c",
               comm(gen_a(i), gen_b(i)) == c);
        record(idx("a", i) + "^p = 1", gpow(P, gen_a(i), p) == id);
        if (P.family() == Family::M)
            record(idx("b", i) + "^p = c", gpow(P, gen_b(i), p) == c);
        else
            record(idx("b", i) + "^p = 1", gpow(P, gen_b(i), p) == id);
    }
    record("c^p = 1", gpow(P, c, p) == id);
    return report;
}

namespace {

// Enumerates QVec values over [0,q)^n in lexicographic order; returns false
// after the last one.
bool next_vec(QVec& v, int q) {
    for (size_t i = v.size(); i-- > 0;) {
        if (++v[i] < q) return true;
        v[i] = 0;
    }
    return false;
}

void check_f_identity(const GroupParams& P, AssocReport& r) {
    if (P.family() != Family::M) return;
    const int p = P.q();
    const int n = P.n();
    QVec u(n, 0);
    do {
        QVec v(n, 0);
        do {
            QVec w(n, 0);
            do {
                QVec uv(n);
                QVec vw(n);
                for (int i = 0; i < n; ++i) {
                    uv[i] = (u[i] + v[i]) % p;
                    vw[i] = (v[i] + w[i]) % p;
                }
                ++r.f_identity_checked;
                if (carry_f(p, uv, w) + carry_f(p, u, v) !=
                    carry_f(p, u, vw) + carry_f(p, v, w)) {
                    r.f_identity_ok = false;
                    r.f_identity_witness = {u, v, w};
                    return;
                }
            } while (next_vec(w, p));
        } while (next_vec(v, p));
    } while (next_vec(u, p));
}

}  // namespace

AssocReport check_associativity_exhaustive(const GroupParams& P) {
    const std::uint64_t N = P.order();
    if (N > 464)  // 464^3 < 10^8 < 465^3
        throw TooLarge("exhaustive associativity needs |G|^3 <= 10^8; |G| = " +
                       std::to_string(N));

    AssocReport r;
    std::vector<GElem> all(N);
    for (std::uint64_t i = 0; i < N; ++i) all[i] = g_decode(P, i);

    for (const GElem& g : all) {
        for (const GElem& h : all) {
            const GElem gh = mul(P, g, h);
            for (const GElem& k : all) {
                ++r.checked;
                if (mul(P, gh, k) != mul(P, g, mul(P, h, k))) {
                    r.ok = false;
                    r.witness = {g, h, k};
                    check_f_identity(P, r);
                    return r;
                }
            }
        }
    }
    check_f_identity(P, r);
    return r;
}

AssocReport check_associativity_sampled(const GroupParams& P, std::uint64_t k,
                                        std::uint64_t seed) {
    AssocReport r;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, P.order() - 1);

    for (std::uint64_t t = 0; t < k; ++t) {
        const GElem g = g_decode(P, pick(rng));
        const GElem h = g_decode(P, pick(rng));
        const GElem w = g_decode(P, pick(rng));
        ++r.checked;
        if (mul(P, mul(P, g, h), w) != mul(P, g, mul(P, h, w))) {
            r.ok = false;
            r.witness = {g, h, w};
            break;
        }
    }

    if (P.family() == Family::M) {
        const int p = P.q();
        std::uniform_int_distribution<int> coord(0, p - 1);
        auto rand_vec = [&] {
            QVec v(P.n());
            for (auto& e : v) e = coord(rng);
            return v;
        };
        for (std::uint64_t t = 0; t < k && r.f_identity_ok; ++t) {
            const QVec u = rand_vec(), v = rand_vec(), w = rand_vec();
            QVec uv(P.n()), vw(P.n());
            for (int i = 0; i < P.n(); ++i) {
                uv[i] = (u[i] + v[i]) % p;
                vw[i] = (v[i] + w[i]) % p;
            }
            ++r.f_identity_checked;
            if (carry_f(p, uv, w) + carry_f(p, u, v) !=
                carry_f(p, u, vw) + carry_f(p, v, w)) {
                r.f_identity_ok = false;
                r.f_identity_witness = {u, v, w};
            }
        }
    }
    return r;
}

bool matrix_check(const QTable& Q, int n, const GElem& g, const GElem& h) {
    if (!Q.is_prime_field())
        throw NotAField("the matrix representation needs associative *");
    if (static_cast<int>(g.x.size()) != n || static_cast<int>(h.x.size()) != n ||
        g.y.size() != g.x.size() || h.y.size() != h.x.size())
        throw DimensionMismatch("matrix_check: elements not of dimension n");

    const int d = n + 2;
    // Upper unitriangular embedding: row 0 is (1, x, z), rows 1..n are
    // (0, e_i, y_i), last row is (0, ..., 0, 1).
    auto embed = [&](const GElem& e) {
        std::vector<Elem> m(static_cast<size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i) m[static_cast<size_t>(i) * d + i] = Q.one();
        for (int i = 0; i < n; ++i) {
            m[static_cast<size_t>(0) * d + (i + 1)] = e.x[i];
            m[static_cast<size_t>(i + 1) * d + (d - 1)] = e.y[i];
        }
        m[static_cast<size_t>(0) * d + (d - 1)] = e.z;
        return m;
    };

    const auto A = embed(g), B = embed(h);
    std::vector<Elem> C(static_cast<size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Elem s = 0;
            for (int k = 0; k < d; ++k)
                s = Q.add(s, Q.mul(A[static_cast<size_t>(i) * d + k],
                                   B[static_cast<size_t>(k) * d + j]));
            C[static_cast<size_t>(i) * d + j] = s;
        }
    return C == embed(h_mul(Q, g, h));
}

std::uint64_t g_encode(const GroupParams& P, const GElem& g) {
    if (static_cast<int>(g.x.size()) != P.n() || g.y.size() != g.x.size())
        throw DimensionMismatch("g_encode: element not of dimension n");
    const auto q = static_cast<std::uint64_t>(P.q());
    auto digit = [q](Elem e) {
        if (e < 0 || static_cast<std::uint64_t>(e) >= q)
            throw IndexOutOfRange("g_encode: coordinate " + std::to_string(e) +
                                  " out of range");
        return static_cast<std::uint64_t>(e);
    };
    std::uint64_t rank = 0;
    for (Elem e : g.x) rank = rank * q + digit(e);
    for (Elem e : g.y) rank = rank * q + digit(e);
    rank = rank * q + digit(g.z);
    return rank;
}

GElem g_decode(const GroupParams& P, std::uint64_t rank) {
    if (rank >= P.order())
        throw IndexOutOfRange("rank " + std::to_string(rank) +
                              " out of range for group order " +
                              std::to_string(P.order()));
    const auto q = static_cast<std::uint64_t>(P.q());
    GElem g{QVec(P.n()), QVec(P.n()), 0};
    g.z = static_cast<Elem>(rank % q);
    rank /= q;
    for (int i = P.n(); i-- > 0;) {
        g.y[i] = static_cast<Elem>(rank % q);
        rank /= q;
    }
    for (int i = P.n(); i-- > 0;) {
        g.x[i] = static_cast<Elem>(rank % q);
        rank /= q;
    }
    return g;
}

}  // namespace esp
