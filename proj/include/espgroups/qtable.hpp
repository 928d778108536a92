#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "espgroups/errors.hpp"

namespace esp {

// Index of an element in a quasifield table. 0 is always the additive
// identity of the table it refers to.
using Elem = int;

// A vector over a quasifield, stored as element indices.
using QVec = std::vector<Elem>;

// Cayley-table representation of a finite (left) quasifield (Q, +, *).
//
// The table is plain data: construction checks shape and index range only.
// Whether the axioms actually hold is decided by qf_verify(), which reports
// per-axiom results instead of throwing.
class QTable {
public:
    // Builds the table in place. Throws IndexOutOfRange if an entry or
    // `one` is outside [0, q).
    QTable(int q, std::vector<Elem> add, std::vector<Elem> mul, Elem one,
           std::string name);

    // The prime field F_p with the canonical encoding i+j mod p, i*j mod p.
    // Throws NotPrime unless p is a prime >= 2.
    static QTable prime(int p);

    // Reads a table file (see README for the format). No axiom validation.
    static QTable load(const std::string& path);
    static QTable parse(std::istream& in, std::string name);

    void save(std::ostream& out) const;

    int order() const { return q_; }
    Elem one() const { return one_; }
    const std::string& name() const { return name_; }

    Elem add(Elem a, Elem b) const {
        check_index(a);
        check_index(b);
        return add_[static_cast<size_t>(a) * q_ + b];
    }
    Elem mul(Elem a, Elem b) const {
        check_index(a);
        check_index(b);
        return mul_[static_cast<size_t>(a) * q_ + b];
    }
    // Additive inverse. Throws Error if the add table has no inverse for a.
    Elem neg(Elem a) const;
    // a + (-b).
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    // True iff this is exactly QTable::prime(q): q prime, canonical layout.
    bool is_prime_field() const { return prime_field_; }

private:
    void check_index(Elem a) const {
        if (a < 0 || a >= q_)
            throw IndexOutOfRange("element index " + std::to_string(a) +
                                  " out of range for order " + std::to_string(q_));
    }

    int q_;
    std::vector<Elem> add_;  // row-major q*q
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;  // -1 where no additive inverse exists
    Elem one_;
    std::string name_;
    bool prime_field_;
};

using QTablePtr = std::shared_ptr<const QTable>;

struct AxiomCheck {
    std::string axiom;
    bool pass = false;
    bool informational = false;  // reported but not required (e.g. mul associativity)
    std::string witness;         // minimal counterexample, empty on pass
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    // True iff every non-informational axiom passed.
    bool all_pass() const;
    const AxiomCheck* find(const std::string& axiom) const;
};

// Exhaustive left-quasifield axiom check: additive abelian group, loop on Q*,
// left distributivity, zero annihilation, unique solvability of a*x = b*x + c.
// Associativity and commutativity of * are reported as informational entries.
// O(q^3); throws TooLarge for q > 512.
AxiomReport qf_verify(const QTable& Q);

bool is_prime(int p);

// <x,y> = x_1*y_1 + ... + x_n*y_n, summed left to right.
Elem dot(const QTable& Q, const QVec& x, const QVec& y);

}  // namespace esp
