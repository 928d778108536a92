#include "espgroups/brick.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

namespace esp {

namespace {

ElemSet normalized(ElemSet s, int q, const char* what) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty())
        throw Error(std::string(what) + " must be non-empty");
    if (s.front() < 0 || s.back() >= q)
        throw IndexOutOfRange(std::string(what) + " has an entry outside [0, q)");
    return s;
}

}  // namespace

Brick::Brick(GroupParams params, std::vector<ElemSet> X, std::vector<ElemSet> Y,
             ElemSet Z)
    : params_(std::move(params)), X_(std::move(X)), Y_(std::move(Y)),
      Z_(std::move(Z)) {
    const int n = params_.n();
    const int q = params_.q();
    if (static_cast<int>(X_.size()) != n || static_cast<int>(Y_.size()) != n)
        throw DimensionMismatch("brick needs exactly n X-factors and n Y-factors");
    for (int i = 0; i < n; ++i) {
        X_[i] = normalized(std::move(X_[i]), q, "X factor");
        Y_[i] = normalized(std::move(Y_[i]), q, "Y factor");
    }
    Z_ = normalized(std::move(Z_), q, "Z");
}

std::uint64_t Brick::size() const {
    std::uint64_t s = Z_.size();
    for (const auto& f : X_) s *= f.size();
    for (const auto& f : Y_) s *= f.size();
    return s;
}

void Brick::for_each(const std::function<void(const GElem&)>& fn) const {
    const int n = params_.n();
    GElem g{QVec(n), QVec(n), 0};
    // Odometer over factor positions, most significant first: x, then y, then z.
    std::vector<size_t> ix(n, 0), iy(n, 0);
    for (;;) {
        for (int i = 0; i < n; ++i) g.x[i] = X_[i][ix[i]];
        for (;;) {
            for (int i = 0; i < n; ++i) g.y[i] = Y_[i][iy[i]];
            for (Elem z : Z_) {
                g.z = z;
                fn(g);
            }
            int i = n - 1;
            while (i >= 0 && ++iy[i] == Y_[i].size()) iy[i--] = 0;
            if (i < 0) break;
        }
        int i = n - 1;
        while (i >= 0 && ++ix[i] == X_[i].size()) ix[i--] = 0;
        if (i < 0) break;
    }
}

std::vector<GElem> brick_elements(const Brick& B) {
    if (B.size() > 10'000'000)
        throw TooLarge("brick enumeration guard: |B| = " +
                       std::to_string(B.size()) + " > 10^7");
    std::vector<GElem> out;
    out.reserve(B.size());
    B.for_each([&out](const GElem& g) { out.push_back(g); });
    return out;
}

namespace {

bool next_line_tokens(std::istream& in, std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        tokens.assign(std::istream_iterator<std::string>(ls),
                      std::istream_iterator<std::string>());
        if (!tokens.empty()) return true;
    }
    return false;
}

ElemSet parse_set(const std::vector<std::string>& tokens) {
    ElemSet s;
    for (size_t i = 1; i < tokens.size(); ++i) {
        try {
            s.push_back(std::stoi(tokens[i]));
        } catch (const std::exception&) {
            throw ParseError("expected integer set entry, got '" + tokens[i] + "'");
        }
    }
    return s;
}

}  // namespace

Brick load_brick(const std::string& path, Family family) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open brick file: " + path);

    std::vector<std::string> tokens;
    if (!next_line_tokens(in, tokens) || tokens.size() != 2)
        throw ParseError("expected 'p <prime>' or 'qtable <path>' line");
    QTablePtr Q;
    if (tokens[0] == "p") {
        int p;
        try {
            p = std::stoi(tokens[1]);
        } catch (const std::exception&) {
            throw ParseError("bad prime '" + tokens[1] + "'");
        }
        Q = std::make_shared<QTable>(QTable::prime(p));
    } else if (tokens[0] == "qtable") {
        // Relative table paths resolve against the brick file's directory.
        std::filesystem::path t(tokens[1]);
        if (t.is_relative())
            t = std::filesystem::path(path).parent_path() / t;
        Q = std::make_shared<QTable>(QTable::load(t.string()));
    } else {
        throw ParseError("expected 'p' or 'qtable', got '" + tokens[0] + "'");
    }

    if (!next_line_tokens(in, tokens) || tokens.size() != 2 || tokens[0] != "n")
        throw ParseError("expected 'n <dimension>' line");
    int n;
    try {
        n = std::stoi(tokens[1]);
    } catch (const std::exception&) {
        throw ParseError("bad dimension '" + tokens[1] + "'");
    }

    std::vector<ElemSet> X(n), Y(n);
    ElemSet Z;
    std::vector<bool> seen_x(n, false), seen_y(n, false);
    bool seen_z = false;
    while (next_line_tokens(in, tokens)) {
        const std::string& head = tokens[0];
        if (head == "Z:") {
            if (seen_z) throw ParseError("duplicate Z line");
            Z = parse_set(tokens);
            seen_z = true;
            continue;
        }
        if (head.size() < 3 || (head[0] != 'X' && head[0] != 'Y') ||
            head.back() != ':')
            throw ParseError("expected 'X<i>:', 'Y<i>:' or 'Z:' line, got '" +
                             head + "'");
        int i;
        try {
            i = std::stoi(head.substr(1, head.size() - 2));
        } catch (const std::exception&) {
            throw ParseError("bad factor index in '" + head + "'");
        }
        if (i < 1 || i > n)
            throw ParseError("factor index out of range in '" + head + "'");
        auto& seen = head[0] == 'X' ? seen_x : seen_y;
        if (seen[i - 1]) throw ParseError("duplicate line '" + head + "'");
        seen[i - 1] = true;
        (head[0] == 'X' ? X : Y)[i - 1] = parse_set(tokens);
    }
    for (int i = 0; i < n; ++i)
        if (!seen_x[i] || !seen_y[i])
            throw ParseError("missing X or Y factor " + std::to_string(i + 1));
    if (!seen_z) throw ParseError("missing Z line");

    return Brick(GroupParams(family, Q, n), std::move(X), std::move(Y),
                 std::move(Z));
}

GroupSubset product_set(const Brick& A, const Brick& B) {
    if (!(A.params() == B.params()))
        throw DimensionMismatch("product_set: bricks over different groups");
    if (A.size() * B.size() > 100'000'000)
        throw TooLarge("product_set guard: |A|*|B| > 10^8");
    const GroupParams& P = A.params();
    if (P.order() > 100'000'000)
        throw TooLarge("product_set needs a dense mask over |G| <= 10^8");

    GroupSubset S{P, std::vector<std::uint8_t>(P.order(), 0), 0};
    const auto rhs = brick_elements(B);
    A.for_each([&](const GElem& g) {
        for (const GElem& h : rhs) {
            auto r = g_encode(P, mul(P, g, h));
            if (!S.mask[r]) {
                S.mask[r] = 1;
                ++S.count;
            }
        }
    });
    return S;
}

bool coset_contained(const GroupSubset& S, const QVec& a, const QVec& b) {
    GElem g{a, b, 0};
    for (Elem t = 0; t < S.params.q(); ++t) {
        g.z = t;
        if (!S.contains(g)) return false;
    }
    return true;
}

ElemSet shifted_intersection(const QTable& Q, const ElemSet& X, Elem a) {
    std::vector<bool> in_x(Q.order(), false);
    for (Elem x : X) in_x[x] = true;
    ElemSet out;
    for (Elem x : X) {
        const Elem s = Q.add(a, Q.neg(x));  // a - x
        if (in_x[s]) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// 2 q^(n+2) never overflows under the verification guards, but products of
// factor sizes are accumulated in 128 bits anyway.
using Wide = unsigned __int128;

Wide pow_wide(Wide base, int e) {
    Wide r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Lexicographic successor over [0,q)^n; false once v wraps back to all zeros.
bool next_vec(QVec& v, int q) {
    for (size_t i = v.size(); i-- > 0;) {
        if (++v[i] < q) return true;
        v[i] = 0;
    }
    return false;
}

}  // namespace

bool certificate(const Brick& B, const QVec& a, const QVec& b) {
    const GroupParams& P = B.params();
    const int n = P.n();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw DimensionMismatch("certificate: a and b must have length n");
    const QTable& Q = P.table();

    Wide lhs = static_cast<Wide>(B.Z().size()) * B.Z().size();
    for (int i = 0; i < n && lhs != 0; ++i) {
        lhs *= shifted_intersection(Q, B.X()[i], a[i]).size();
        lhs *= shifted_intersection(Q, B.Y()[i], b[i]).size();
    }
    return lhs > 2 * pow_wide(P.q(), n + 2);
}

double CoverageReport::lower_bound() const {
    return static_cast<double>(lb_num) / static_cast<double>(lb_den);
}

bool CoverageReport::sound() const {
    if (certified > N) return false;
    for (const auto& pr : pairs)
        if (pr.certified && !pr.contained) return false;
    return true;
}

CoverageReport coverage(const Brick& B) {
    const GroupParams& P = B.params();
    const int n = P.n();
    const int q = P.q();

    std::uint64_t grid = 1;
    for (int i = 0; i < 2 * n; ++i) {
        grid *= static_cast<std::uint64_t>(q);
        if (grid > 1'000'000)
            throw TooLarge("coverage guard: q^(2n) > 10^6");
    }

    const GroupSubset S = product_set(B, B);

    CoverageReport rep;
    rep.pairs.reserve(grid);
    QVec a(n, 0);
    do {
        QVec b(n, 0);
        do {
            PairResult pr{a, b, coset_contained(S, a, b), certificate(B, a, b)};
            if (pr.contained) ++rep.N;
            if (pr.certified) ++rep.certified;
            rep.pairs.push_back(std::move(pr));
        } while (next_vec(b, q));
    } while (next_vec(a, q));

    // N > (prod |X_i|^2|Y_i|^2 - 2q^(3n+2)) / (prod |X_i||Y_i| - 2q^(n+2)),
    // reported only when the denominator is positive.
    Wide prod = 1;
    for (int i = 0; i < n; ++i)
        prod *= static_cast<Wide>(B.X()[i].size()) * B.Y()[i].size();
    const Wide den_pos = 2 * pow_wide(q, n + 2);
    if (prod > den_pos) {
        rep.has_lower_bound = true;
        rep.lb_den = static_cast<std::int64_t>(prod - den_pos);
        const Wide num_pos = 2 * pow_wide(q, 3 * n + 2);
        rep.lb_num = prod * prod >= num_pos
                         ? static_cast<std::int64_t>(prod * prod - num_pos)
                         : -static_cast<std::int64_t>(num_pos - prod * prod);
    }
    return rep;
}

ElemSet sumset(const QTable& Q, const ElemSet& S, const ElemSet& T) {
    std::vector<bool> hit(Q.order(), false);
    for (Elem s : S)
        for (Elem t : T) hit[Q.add(s, t)] = true;
    ElemSet out;
    for (Elem v = 0; v < Q.order(); ++v)
        if (hit[v]) out.push_back(v);
    return out;
}

bool eq1_check(const QTable& Q, const ElemSet& X) {
    std::uint64_t total = 0;
    for (Elem a = 0; a < Q.order(); ++a)
        total += shifted_intersection(Q, X, a).size();
    return total == static_cast<std::uint64_t>(X.size()) * X.size();
}

bool large_z_branch(const Brick& B) {
    const GroupParams& P = B.params();
    const int q = P.q();
    if (2 * static_cast<int>(B.Z().size()) <= q)
        throw PreconditionFailed("large-Z branch needs |Z| > q/2");

    const QTable& Q = P.table();
    std::vector<ElemSet> X2, Y2;
    for (const auto& f : B.X()) X2.push_back(sumset(Q, f, f));
    for (const auto& f : B.Y()) Y2.push_back(sumset(Q, f, f));
    ElemSet all(q);
    for (Elem v = 0; v < q; ++v) all[v] = v;
    const Brick expected(P, std::move(X2), std::move(Y2), std::move(all));

    const GroupSubset S = product_set(B, B);
    if (S.count != expected.size()) return false;
    bool ok = true;
    expected.for_each([&](const GElem& g) { ok = ok && S.contains(g); });
    return ok;
}

}  // namespace esp
