// Emits the bundled quasifield tables: f3.qtable (prime field) and
// hall9.qtable, an order-9 non-field left quasifield.
//
// hall9 is built from a spreadset: nine 2x2 matrices over F_3 containing 0
// and I whose pairwise differences are nonsingular. Labeling each matrix M
// by M*e for a fixed unit vector e and defining i * j = L_i(j) gives a left
// quasifield (left multiplications are additive, pairwise differences of
// distinct left multiplications are invertible, e is a two-sided identity).
// The classical Hall system over F_3 degenerates to the associative
// irregular nearfield, so the generator searches spreadsets in a fixed
// lexicographic order and takes the first whose multiplication is NOT
// associative. The construction is scaffolding: the emitted table is
// accepted only if qf_verify passes and * is genuinely non-associative.

#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include "espgroups/qtable.hpp"

namespace {

constexpr int kP = 3;
constexpr int kQ = kP * kP;

// Matrix [[m00, m01], [m10, m11]] encoded as m00 + 3 m01 + 9 m10 + 27 m11.
struct Mat {
    int m[2][2];
};

Mat decode_mat(int code) {
    Mat a{};
    a.m[0][0] = code % kP;
    a.m[0][1] = code / kP % kP;
    a.m[1][0] = code / (kP * kP) % kP;
    a.m[1][1] = code / (kP * kP * kP) % kP;
    return a;
}

int det_mod_p(const Mat& a) {
    return ((a.m[0][0] * a.m[1][1] - a.m[0][1] * a.m[1][0]) % kP + kP) % kP;
}

Mat sub_mat(const Mat& a, const Mat& b) {
    Mat d{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            d.m[i][j] = ((a.m[i][j] - b.m[i][j]) % kP + kP) % kP;
    return d;
}

// Vector (v0, v1) encoded as v0 + 3 v1; 0 is the zero vector.
std::array<int, 2> decode_vec(int code) { return {code % kP, code / kP}; }

int apply(const Mat& a, int vec_code) {
    const auto v = decode_vec(vec_code);
    const int w0 = (a.m[0][0] * v[0] + a.m[0][1] * v[1]) % kP;
    const int w1 = (a.m[1][0] * v[0] + a.m[1][1] * v[1]) % kP;
    return w0 + kP * w1;
}

bool is_associative(const std::vector<esp::Elem>& mul) {
    for (int a = 0; a < kQ; ++a)
        for (int b = 0; b < kQ; ++b)
            for (int c = 0; c < kQ; ++c)
                if (mul[mul[a * kQ + b] * kQ + c] != mul[a * kQ + mul[b * kQ + c]])
                    return false;
    return true;
}

// Multiplication table of the spreadset labeled by M -> M*e with e = (1,0),
// i.e. label index 1, matching `one = 1` in the emitted file.
std::vector<esp::Elem> spreadset_mul(const std::vector<int>& codes) {
    std::vector<int> by_label(kQ, -1);
    for (int code : codes) by_label[apply(decode_mat(code), 1)] = code;
    std::vector<esp::Elem> mul(kQ * kQ);
    for (int i = 0; i < kQ; ++i) {
        const Mat a = decode_mat(by_label[i]);
        for (int j = 0; j < kQ; ++j) mul[i * kQ + j] = apply(a, j);
    }
    return mul;
}

constexpr int kIdCode = 1 + kP * kP * kP;  // I = [[1,0],[0,1]]

// Depth-first search in ascending code order; the first completed spreadset
// with a non-associative multiplication wins, so the output is reproducible.
// Chosen codes are strictly increasing, so a branch that has moved past
// kIdCode without taking it can never contain the identity matrix.
std::optional<std::vector<esp::Elem>> search(std::vector<int>& chosen) {
    if (chosen.size() == kQ) {
        auto mul = spreadset_mul(chosen);
        if (is_associative(mul)) return std::nullopt;
        return mul;
    }
    const bool have_id =
        std::find(chosen.begin(), chosen.end(), kIdCode) != chosen.end();
    for (int code = chosen.back() + 1; code < kP * kP * kP * kP; ++code) {
        if (code > kIdCode && !have_id) break;
        const Mat cand = decode_mat(code);
        bool ok = true;
        for (int prev : chosen)
            if (det_mod_p(sub_mat(cand, decode_mat(prev))) == 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(code);
        if (auto found = search(chosen)) return found;
        chosen.pop_back();
    }
    return std::nullopt;
}

esp::QTable build_hall9() {
    std::vector<int> chosen{0};
    auto mul = search(chosen);
    if (!mul) throw esp::Error("no non-associative spreadset of order 9 found");

    std::vector<esp::Elem> add(kQ * kQ);
    for (int i = 0; i < kQ; ++i)
        for (int j = 0; j < kQ; ++j) {
            const auto u = decode_vec(i), v = decode_vec(j);
            add[i * kQ + j] = (u[0] + v[0]) % kP + kP * ((u[1] + v[1]) % kP);
        }
    return esp::QTable(kQ, std::move(add), std::move(*mul), 1, "hall9");
}

bool report_and_check(const esp::QTable& Q, bool expect_nonassociative) {
    const esp::AxiomReport rep = esp::qf_verify(Q);
    bool ok = rep.all_pass();
    for (const auto& c : rep.checks) {
        std::cout << "  " << c.axiom << ": " << (c.pass ? "pass" : "FAIL");
        if (c.informational) std::cout << " (informational)";
        if (!c.pass && !c.witness.empty()) std::cout << " [" << c.witness << "]";
        std::cout << "\n";
    }
    if (expect_nonassociative) {
        const auto* assoc = rep.find("mul-associativity");
        if (!assoc || assoc->pass) {
            std::cout << "  expected * to be non-associative\n";
            ok = false;
        }
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_tables <output-dir>\n";
        return 2;
    }
    const std::string dir = argv[1];

    const esp::QTable f3 = esp::QTable::prime(3);
    const esp::QTable hall9 = build_hall9();

    std::cout << "f3:\n";
    if (!report_and_check(f3, false)) return 1;
    std::cout << "hall9:\n";
    if (!report_and_check(hall9, true)) return 1;

    for (const auto* t : {&f3, &hall9}) {
        const std::string path = dir + "/" + t->name() + ".qtable";
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 2;
        }
        t->save(out);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}
