#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "espgroups/qtable.hpp"

using namespace esp;

namespace {

std::string data_path(const std::string& file) {
    return std::string(ESP_DATA_DIR) + "/" + file;
}

bool informational_pass(const AxiomReport& rep, const std::string& axiom) {
    const AxiomCheck* c = rep.find(axiom);
    REQUIRE(c != nullptr);
    REQUIRE(c->informational);
    return c->pass;
}

}  // namespace

TEST_CASE("prime field tables satisfy every axiom") {
    for (int p : {2, 3, 5, 7, 11}) {
        const QTable Q = QTable::prime(p);
        CHECK(Q.order() == p);
        CHECK(Q.one() == 1 % p);
        const AxiomReport rep = qf_verify(Q);
        CHECK(rep.all_pass());
        CHECK(informational_pass(rep, "mul-associativity"));
        CHECK(informational_pass(rep, "mul-commutativity"));
    }
    CHECK_THROWS_AS(QTable::prime(6), NotPrime);
    CHECK_THROWS_AS(QTable::prime(1), NotPrime);
}

TEST_CASE("is_prime matches trial division") {
    auto slow = [](int n) {
        if (n < 2) return false;
        for (int d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (int n = -3; n <= 600; ++n) CHECK(is_prime(n) == slow(n));
}

TEST_CASE("bundled f3 table equals qf_prime(3)") {
    const QTable F = QTable::prime(3);
    const QTable L = QTable::load(data_path("f3.qtable"));
    REQUIRE(L.order() == 3);
    CHECK(L.one() == F.one());
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            CHECK(L.add(a, b) == F.add(a, b));
            CHECK(L.mul(a, b) == F.mul(a, b));
        }
    CHECK(L.is_prime_field());
    CHECK(L.name() == "f3");
}

TEST_CASE("bundled hall9 is a non-field left quasifield") {
    const QTable Q = QTable::load(data_path("hall9.qtable"));
    REQUIRE(Q.order() == 9);
    CHECK_FALSE(Q.is_prime_field());
    const AxiomReport rep = qf_verify(Q);
    CHECK(rep.all_pass());
    // Non-field: both informational checks fail, each with a witness.
    CHECK_FALSE(informational_pass(rep, "mul-associativity"));
    CHECK_FALSE(informational_pass(rep, "mul-commutativity"));
    CHECK_FALSE(rep.find("mul-associativity")->witness.empty());

    // Left distributivity holds but right distributivity must not (else the
    // table would be a semifield, hence associative at order 9).
    bool right_distributive = true;
    for (int a = 0; a < 9 && right_distributive; ++a)
        for (int b = 0; b < 9 && right_distributive; ++b)
            for (int c = 0; c < 9; ++c)
                if (Q.mul(Q.add(a, b), c) != Q.add(Q.mul(a, c), Q.mul(b, c))) {
                    right_distributive = false;
                    break;
                }
    CHECK_FALSE(right_distributive);
}

TEST_CASE("every single-entry mutation of F_3's mul table breaks an axiom") {
    const QTable F = QTable::prime(3);
    int mutants = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int wrong = 0; wrong < 3; ++wrong) {
                if (wrong == F.mul(a, b)) continue;
                std::vector<Elem> add(9), mul(9);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        add[i * 3 + j] = F.add(i, j);
                        mul[i * 3 + j] = F.mul(i, j);
                    }
                mul[a * 3 + b] = wrong;
                const QTable M(3, std::move(add), std::move(mul), 1, "mutant");
                const AxiomReport rep = qf_verify(M);
                CHECK_FALSE(rep.all_pass());
                // The report carries a witness for some required axiom.
                bool witnessed = false;
                for (const auto& c : rep.checks)
                    if (!c.informational && !c.pass && !c.witness.empty())
                        witnessed = true;
                CHECK(witnessed);
                ++mutants;
            }
    CHECK(mutants == 18);
}

TEST_CASE("table file parsing round-trips and rejects malformed input") {
    const QTable Q = QTable::load(data_path("hall9.qtable"));
    std::ostringstream out;
    Q.save(out);
    std::istringstream in(out.str());
    const QTable R = QTable::parse(in, "roundtrip");
    REQUIRE(R.order() == Q.order());
    CHECK(R.one() == Q.one());
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) {
            CHECK(R.add(a, b) == Q.add(a, b));
            CHECK(R.mul(a, b) == Q.mul(a, b));
        }

    auto reject = [](const std::string& text) {
        std::istringstream s(text);
        CHECK_THROWS_AS(QTable::parse(s, "bad"), Error);
    };
    reject("");
    reject("q x\none 1\n");
    reject("q 2\none 5\nadd: 0 0 1\nadd: 1 1 0\nmul: 0 0 0\nmul: 1 0 1\n");
    reject("q 2\none 1\nadd: 0 0 1\nadd: 0 1 0\nmul: 0 0 0\nmul: 1 0 1\n");
    reject("q 2\none 1\nadd: 0 0 1\nmul: 0 0 0\nmul: 1 0 1\n");
    reject("q 2\none 1\nadd: 0 0 7\nadd: 1 1 0\nmul: 0 0 0\nmul: 1 0 1\n");
    reject("q 2\none 1\nadd: 0 0 1\nadd: 1 1 0\nmul: 0 0 0\nmul: 1 0 1\njunk\n");
    CHECK_THROWS_AS(QTable::load("/nonexistent/x.qtable"), Error);
}

TEST_CASE("comments and the missing-inverse sentinel") {
    std::istringstream s(
        "# comment\nq 2\none 1 # trailing comment\n"
        "add: 0 0 1\nadd: 1 1 0\nmul: 0 0 0\nmul: 1 0 1\n");
    const QTable Q = QTable::parse(s, "f2");
    CHECK(Q.order() == 2);
    CHECK(Q.neg(1) == 1);
    CHECK(Q.sub(0, 1) == 1);

    // Row 1 of add never reaches 0: neg must throw, and qf_verify must flag
    // add-inverses instead of crashing.
    std::vector<Elem> add = {0, 1, 1, 1}, mul = {0, 0, 0, 1};
    const QTable B(2, std::move(add), std::move(mul), 1, "broken");
    CHECK_THROWS_AS(B.neg(1), Error);
    CHECK_FALSE(qf_verify(B).all_pass());
}

TEST_CASE("qf_verify guard refuses q > 512") {
    const int q = 513;
    std::vector<Elem> add(static_cast<size_t>(q) * q, 0), mul = add;
    const QTable Q(q, std::move(add), std::move(mul), 0, "huge");
    CHECK_THROWS_AS(qf_verify(Q), TooLarge);
}

TEST_CASE("dot is the left-to-right sum of products") {
    const QTable Q = QTable::load(data_path("hall9.qtable"));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        QVec x(n), y(n);
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<Elem>(rng() % 9);
            y[i] = static_cast<Elem>(rng() % 9);
        }
        Elem expect = 0;
        for (int i = 0; i < n; ++i) expect = Q.add(expect, Q.mul(x[i], y[i]));
        CHECK(dot(Q, x, y) == expect);
    }
    CHECK(dot(Q, {}, {}) == 0);
    CHECK_THROWS_AS(dot(Q, QVec{1}, QVec{1, 2}), DimensionMismatch);
}

TEST_CASE("element index range checks") {
    const QTable Q = QTable::prime(5);
    CHECK_THROWS_AS(Q.add(0, 5), IndexOutOfRange);
    CHECK_THROWS_AS(Q.mul(-1, 0), IndexOutOfRange);
    CHECK_THROWS_AS(QTable(2, {0, 1, 1, 0}, {0, 0, 0, 2}, 1, "bad"),
                    IndexOutOfRange);
    CHECK_THROWS_AS(QTable(2, {0, 1, 1}, {0, 0, 0, 1}, 1, "bad"), Error);
}
