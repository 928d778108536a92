#include "espgroups/qtable.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

namespace esp {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

QTable::QTable(int q, std::vector<Elem> add, std::vector<Elem> mul, Elem one,
               std::string name)
    : q_(q), add_(std::move(add)), mul_(std::move(mul)), one_(one),
      name_(std::move(name)) {
    if (q_ < 1) throw ParseError("table order must be positive");
    const size_t cells = static_cast<size_t>(q_) * q_;
    if (add_.size() != cells || mul_.size() != cells)
        throw ParseError("table must have q*q add and mul entries");
    for (Elem v : add_)
        if (v < 0 || v >= q_)
            throw IndexOutOfRange("add entry " + std::to_string(v) +
                                  " out of range for order " + std::to_string(q_));
    for (Elem v : mul_)
        if (v < 0 || v >= q_)
            throw IndexOutOfRange("mul entry " + std::to_string(v) +
                                  " out of range for order " + std::to_string(q_));
    if (one_ < 0 || one_ >= q_)
        throw IndexOutOfRange("one index out of range");

    neg_.assign(q_, -1);
    for (Elem a = 0; a < q_; ++a)
        for (Elem b = 0; b < q_; ++b)
            if (add_[static_cast<size_t>(a) * q_ + b] == 0 &&
                add_[static_cast<size_t>(b) * q_ + a] == 0) {
                neg_[a] = b;
                break;
            }

    prime_field_ = is_prime(q_) && one_ == (q_ > 1 ? 1 : 0);
    if (prime_field_) {
        for (Elem a = 0; a < q_ && prime_field_; ++a)
            for (Elem b = 0; b < q_; ++b) {
                const size_t i = static_cast<size_t>(a) * q_ + b;
                if (add_[i] != (a + b) % q_ || mul_[i] != (a * b) % q_) {
                    prime_field_ = false;
                    break;
                }
            }
    }
}

Elem QTable::neg(Elem a) const {
    check_index(a);
    if (neg_[a] < 0)
        throw Error("element " + std::to_string(a) +
                    " has no additive inverse in table " + name_);
    return neg_[a];
}

QTable QTable::prime(int p) {
    if (!is_prime(p))
        throw NotPrime(std::to_string(p) + " is not prime");
    std::vector<Elem> add(static_cast<size_t>(p) * p), mul(add.size());
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            add[static_cast<size_t>(a) * p + b] = (a + b) % p;
            mul[static_cast<size_t>(a) * p + b] = (a * b) % p;
        }
    return QTable(p, std::move(add), std::move(mul), 1, "f" + std::to_string(p));
}

namespace {

// Strips comments and returns the next non-blank line's tokens.
bool next_tokens(std::istream& in, std::vector<std::string>& tokens) {
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

int parse_int(const std::string& tok, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected integer for ") + what +
                         ", got '" + tok + "'");
    }
}

}  // namespace

QTable QTable::parse(std::istream& in, std::string name) {
    std::vector<std::string> tokens;

    if (!next_tokens(in, tokens) || tokens.size() != 2 || tokens[0] != "q")
        throw ParseError("expected 'q <order>' line");
    const int q = parse_int(tokens[1], "order");
    if (q < 1) throw ParseError("order must be positive");

    if (!next_tokens(in, tokens) || tokens.size() != 2 || tokens[0] != "one")
        throw ParseError("expected 'one <index>' line");
    const int one = parse_int(tokens[1], "one");

    const size_t cells = static_cast<size_t>(q) * q;
    std::vector<Elem> add(cells, -1), mul(cells, -1);
    std::vector<bool> seen_add(q, false), seen_mul(q, false);

    for (int row = 0; row < 2 * q; ++row) {
        if (!next_tokens(in, tokens))
            throw ParseError("unexpected end of file: missing table rows");
        if (tokens.size() != static_cast<size_t>(q) + 2)
            throw ParseError("table row must have q entries");
        const bool is_add = tokens[0] == "add:";
        if (!is_add && tokens[0] != "mul:")
            throw ParseError("expected 'add:' or 'mul:' row, got '" + tokens[0] + "'");
        const int i = parse_int(tokens[1], "row index");
        if (i < 0 || i >= q) throw ParseError("row index out of range");
        auto& seen = is_add ? seen_add : seen_mul;
        if (seen[i]) throw ParseError("duplicate row " + std::to_string(i));
        seen[i] = true;
        auto& table = is_add ? add : mul;
        for (int j = 0; j < q; ++j) {
            const int v = parse_int(tokens[static_cast<size_t>(j) + 2], "entry");
            if (v < 0 || v >= q)
                throw IndexOutOfRange("entry " + std::to_string(v) +
                                      " out of range for order " + std::to_string(q));
            table[static_cast<size_t>(i) * q + j] = v;
        }
    }
    if (next_tokens(in, tokens))
        throw ParseError("trailing content after table rows");

    return QTable(q, std::move(add), std::move(mul), one, std::move(name));
}

QTable QTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table file: " + path);
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos)
        name.erase(0, slash + 1);
    if (auto dot = name.rfind(".qtable"); dot != std::string::npos)
        name.erase(dot);
    return parse(in, std::move(name));
}

void QTable::save(std::ostream& out) const {
    out << "# quasifield table: " << name_ << "\n";
    out << "q " << q_ << "\n";
    out << "one " << one_ << "\n";
    for (int i = 0; i < q_; ++i) {
        out << "add: " << i;
        for (int j = 0; j < q_; ++j)
            out << ' ' << add_[static_cast<size_t>(i) * q_ + j];
        out << "\n";
    }
    for (int i = 0; i < q_; ++i) {
        out << "mul: " << i;
        for (int j = 0; j < q_; ++j)
            out << ' ' << mul_[static_cast<size_t>(i) * q_ + j];
        out << "\n";
    }
}

bool AxiomReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) {
        return c.informational || c.pass;
    });
}

const AxiomCheck* AxiomReport::find(const std::string& axiom) const {
    for (const auto& c : checks)
        if (c.axiom == axiom) return &c;
    return nullptr;
}

namespace {

std::string triple(Elem a, Elem b, Elem c) {
    return "(a,b,c)=(" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + ")";
}

std::string pair_witness(Elem a, Elem b) {
    return "(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

AxiomReport qf_verify(const QTable& Q) {
    const int q = Q.order();
    if (q > 512)
        throw TooLarge("axiom verification is O(q^3); refusing q = " +
                       std::to_string(q) + " > 512");

    AxiomReport report;
    auto push = [&report](std::string axiom, bool pass, std::string witness,
                          bool info = false) {
        report.checks.push_back(
            {std::move(axiom), pass, info, pass ? "" : std::move(witness)});
    };

    // (Q, +) group axioms, abelian required (subtraction a - X must be
    // unambiguous downstream).
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q && pass; ++a)
            for (Elem b = 0; b < q && pass; ++b)
                for (Elem c = 0; c < q; ++c)
                    if (Q.add(Q.add(a, b), c) != Q.add(a, Q.add(b, c))) {
                        pass = false;
                        w = triple(a, b, c);
                        break;
                    }
        push("add-associativity", pass, w);
    }
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q; ++a)
            if (Q.add(0, a) != a || Q.add(a, 0) != a) {
                pass = false;
                w = "a=" + std::to_string(a);
                break;
            }
        push("add-identity", pass, w);
    }
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q; ++a) {
            bool found = false;
            for (Elem b = 0; b < q; ++b)
                if (Q.add(a, b) == 0 && Q.add(b, a) == 0) {
                    found = true;
                    break;
                }
            if (!found) {
                pass = false;
                w = "a=" + std::to_string(a);
                break;
            }
        }
        push("add-inverses", pass, w);
    }
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q && pass; ++a)
            for (Elem b = a + 1; b < q; ++b)
                if (Q.add(a, b) != Q.add(b, a)) {
                    pass = false;
                    w = pair_witness(a, b);
                    break;
                }
        push("add-commutativity", pass, w);
    }

    // (Q*, *) loop: rows and columns restricted to nonzero indices are
    // permutations of the nonzero indices, and `one` is a two-sided identity.
    {
        bool pass = true;
        std::string w;
        for (Elem a = 1; a < q && pass; ++a) {
            std::vector<bool> row(q, false), col(q, false);
            for (Elem b = 1; b < q; ++b) {
                const Elem r = Q.mul(a, b);
                const Elem c = Q.mul(b, a);
                if (r == 0 || row[r]) {
                    pass = false;
                    w = "row a=" + std::to_string(a) + " value " + std::to_string(r);
                    break;
                }
                if (c == 0 || col[c]) {
                    pass = false;
                    w = "column a=" + std::to_string(a) + " value " + std::to_string(c);
                    break;
                }
                row[r] = col[c] = true;
            }
        }
        push("mul-latin-square", pass, w);
    }
    {
        bool pass = Q.one() != 0 && q >= 2;
        std::string w = "one=0";
        for (Elem a = 1; a < q && pass; ++a)
            if (Q.mul(Q.one(), a) != a || Q.mul(a, Q.one()) != a) {
                pass = false;
                w = "a=" + std::to_string(a);
            }
        push("mul-identity", pass, w);
    }

    // a * (b + c) = a * b + a * c
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q && pass; ++a)
            for (Elem b = 0; b < q && pass; ++b)
                for (Elem c = 0; c < q; ++c)
                    if (Q.mul(a, Q.add(b, c)) != Q.add(Q.mul(a, b), Q.mul(a, c))) {
                        pass = false;
                        w = triple(a, b, c);
                        break;
                    }
        push("left-distributivity", pass, w);
    }

    // 0 * x = 0 and x * 0 = 0
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q; ++a)
            if (Q.mul(0, a) != 0 || Q.mul(a, 0) != 0) {
                pass = false;
                w = "x=" + std::to_string(a);
                break;
            }
        push("zero-annihilation", pass, w);
    }

    // a*x = b*x + c has exactly one solution x for every a != b, c.
    // solve[s*q + v] lists every c with s + c == v (singletons when + is a
    // group), keeping the whole sweep O(q^3).
    {
        std::vector<std::vector<Elem>> solve(static_cast<size_t>(q) * q);
        for (Elem s = 0; s < q; ++s)
            for (Elem c = 0; c < q; ++c)
                solve[static_cast<size_t>(s) * q + Q.add(s, c)].push_back(c);

        bool pass = true;
        std::string w;
        std::vector<int> hits(q);
        for (Elem a = 0; a < q && pass; ++a)
            for (Elem b = 0; b < q && pass; ++b) {
                if (a == b) continue;
                std::fill(hits.begin(), hits.end(), 0);
                for (Elem x = 0; x < q; ++x) {
                    const Elem lhs = Q.mul(a, x);
                    const Elem bx = Q.mul(b, x);
                    for (Elem c : solve[static_cast<size_t>(bx) * q + lhs])
                        ++hits[c];
                }
                for (Elem c = 0; c < q; ++c)
                    if (hits[c] != 1) {
                        pass = false;
                        w = triple(a, b, c) + " has " + std::to_string(hits[c]) +
                            " solutions";
                        break;
                    }
            }
        push("unique-slope-solvability", pass, w);
    }

    // Informational only: whether * happens to be associative / commutative
    // (both fail for genuine non-field quasifields).
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q && pass; ++a)
            for (Elem b = 0; b < q && pass; ++b)
                for (Elem c = 0; c < q; ++c)
                    if (Q.mul(Q.mul(a, b), c) != Q.mul(a, Q.mul(b, c))) {
                        pass = false;
                        w = triple(a, b, c);
                        break;
                    }
        push("mul-associativity", pass, w, /*info=*/true);
    }
    {
        bool pass = true;
        std::string w;
        for (Elem a = 0; a < q && pass; ++a)
            for (Elem b = a + 1; b < q; ++b)
                if (Q.mul(a, b) != Q.mul(b, a)) {
                    pass = false;
                    w = pair_witness(a, b);
                    break;
                }
        push("mul-commutativity", pass, w, /*info=*/true);
    }

    return report;
}

Elem dot(const QTable& Q, const QVec& x, const QVec& y) {
    if (x.size() != y.size())
        throw DimensionMismatch("dot: vectors of length " +
                                std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
    if (x.empty()) return 0;
    Elem acc = Q.mul(x[0], y[0]);
    for (size_t i = 1; i < x.size(); ++i)
        acc = Q.add(acc, Q.mul(x[i], y[i]));
    return acc;
}

}  // namespace esp
