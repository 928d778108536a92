#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "espgroups/qtable.hpp"

namespace esp {

// Element [x | y | z] of H_n(Q) or M_n: x, y in Q^n, z in Q.
struct GElem {
    QVec x;
    QVec y;
    Elem z = 0;

    friend bool operator==(const GElem& a, const GElem& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const GElem& a, const GElem& b) { return !(a == b); }
};

// "[x1,...,xn | y1,...,yn | z]"
std::string to_string(const GElem& g);

enum class Family {
    Heisenberg,  // H_n(Q): z'' = z + z' + <x, y'>
    M,           // M_n:    z'' = z + z' + <x, y'> + f(y, y'), prime fields only
};

// Which group/loop we work in: the family, the coefficient table Q, and the
// dimension n. Immutable; safe to share across threads.
class GroupParams {
public:
    // Throws NotMFamily if family == M and Q is not a canonical prime field;
    // TooLarge if q^(2n+1) does not fit in 62 bits.
    GroupParams(Family family, QTablePtr Q, int n);

    Family family() const { return family_; }
    const QTable& table() const { return *Q_; }
    const QTablePtr& table_ptr() const { return Q_; }
    int n() const { return n_; }
    int q() const { return Q_->order(); }
    // |G| = q^(2n+1)
    std::uint64_t order() const { return order_; }

    friend bool operator==(const GroupParams& a, const GroupParams& b) {
        return a.family_ == b.family_ && a.Q_ == b.Q_ && a.n_ == b.n_;
    }

private:
    Family family_;
    QTablePtr Q_;
    int n_;
    std::uint64_t order_;
};

// Number of coordinates where the representatives in {0,...,p-1} sum to >= p.
// Entries must lie in [0, p).
int carry_f(int p, const QVec& y, const QVec& yprime);

// [x+x', y+y', z+z'+<x,y'>] over Q.
GElem h_mul(const QTable& Q, const GElem& g, const GElem& h);

// [x+x', y+y', z+z'+<x,y'>+f(y,y')] over F_p. Q must be a canonical prime
// field (throws NotMFamily otherwise).
GElem m_mul(const QTable& Q, const GElem& g, const GElem& h);

// Multiplication in the family P names.
GElem mul(const GroupParams& P, const GElem& g, const GElem& h);

GElem identity(const GroupParams& P);

// Left-associated power: gpow(g, 3) = (g*g)*g; gpow(g, 0) = identity.
GElem gpow(const GroupParams& P, const GElem& g, std::uint64_t k);

// Right inverse solved coordinatewise (x' = -x, y' = -y, then the unique z').
// In the associative families this is the two-sided inverse.
GElem inverse(const GroupParams& P, const GElem& g);

struct RelationCheck {
    std::string relation;
    bool pass = false;
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const;
};

// Checks every defining relation of the presentation of H_n resp. M_n on the
// concrete generators a_i = [e_i,0,0], b_i = [0,e_i,0], c = [0,0,1], with
// commutators [g,h] = g^-1 h^-1 g h. Requires a canonical prime field table
// (throws NotAField) and n <= 64.
RelationReport check_relations(const GroupParams& P);

struct AssocReport {
    bool ok = true;
    std::uint64_t checked = 0;
    std::optional<std::array<GElem, 3>> witness;
    // The carry-function identity f(y+y',y'') + f(y,y') = f(y,y'+y'') + f(y',y'')
    // (M family only; trivially true for Heisenberg).
    bool f_identity_ok = true;
    std::uint64_t f_identity_checked = 0;
    std::optional<std::array<QVec, 3>> f_identity_witness;

    bool all_ok() const { return ok && f_identity_ok; }
};

// (g g') g'' == g (g' g'') over all |G|^3 triples. Throws TooLarge when
// |G|^3 > 10^8. Also checks the carry identity on all y-triples.
AssocReport check_associativity_exhaustive(const GroupParams& P);

// Same checks on k uniformly sampled triples (deterministic in seed).
AssocReport check_associativity_sampled(const GroupParams& P, std::uint64_t k,
                                        std::uint64_t seed);

// Multiplies the (n+2)x(n+2) upper-triangular matrices of g and h over Q and
// compares with h_mul(g, h). Requires * to be commutative and associative
// (throws NotAField).
bool matrix_check(const QTable& Q, int n, const GElem& g, const GElem& h);

// Rank of g in [0, q^(2n+1)), lexicographic by (x, y, z), x_1 most significant.
std::uint64_t g_encode(const GroupParams& P, const GElem& g);
GElem g_decode(const GroupParams& P, std::uint64_t rank);

}  // namespace esp
