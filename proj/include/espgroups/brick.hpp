#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "espgroups/group.hpp"

namespace esp {

using ElemSet = std::vector<Elem>;  // sorted, duplicate-free

// Product-structured subset (X_1 x ... x X_n, Y_1 x ... x Y_n, Z) of the
// group/loop described by params. Factor sets are non-empty by construction.
class Brick {
public:
    // Throws DimensionMismatch if X or Y does not have n factors,
    // IndexOutOfRange for entries >= q, Error for an empty factor set.
    Brick(GroupParams params, std::vector<ElemSet> X, std::vector<ElemSet> Y,
          ElemSet Z);

    const GroupParams& params() const { return params_; }
    const std::vector<ElemSet>& X() const { return X_; }
    const std::vector<ElemSet>& Y() const { return Y_; }
    const ElemSet& Z() const { return Z_; }

    // |B| = |Z| * prod |X_i||Y_i|
    std::uint64_t size() const;

    // Calls fn for each element exactly once, lexicographically by (x, y, z).
    void for_each(const std::function<void(const GElem&)>& fn) const;

private:
    GroupParams params_;
    std::vector<ElemSet> X_, Y_;
    ElemSet Z_;
};

// Materialized element list. Throws TooLarge when |B| > 10^7.
std::vector<GElem> brick_elements(const Brick& B);

// Parses a brick specification file (see README). The quasifield source and
// dimension come from the file; the family is chosen by the caller.
Brick load_brick(const std::string& path, Family family);

// Subset of a group, stored as a dense indicator over element ranks.
struct GroupSubset {
    GroupParams params;
    std::vector<std::uint8_t> mask;  // one flag per rank
    std::uint64_t count = 0;

    bool contains(const GElem& g) const {
        return mask[g_encode(params, g)] != 0;
    }
};

// The exact set {g h : g in A, h in B}. Requires identical params on both
// bricks; throws TooLarge when |A|*|B| > 10^8.
GroupSubset product_set(const Brick& A, const Brick& B);

// True iff [a, b, t] lies in S for every t in Q.
bool coset_contained(const GroupSubset& S, const QVec& a, const QVec& b);

// X ∩ (a - X), where a - X = {a + (-x) : x in X}.
ElemSet shifted_intersection(const QTable& Q, const ElemSet& X, Elem a);

// The sufficient condition for full-coset containment:
//   |Z|^2 prod |X_i ∩ (a_i - X_i)| |Y_i ∩ (b_i - Y_i)| > 2 q^(n+2),
// evaluated in exact integer arithmetic.
bool certificate(const Brick& B, const QVec& a, const QVec& b);

struct PairResult {
    QVec a, b;
    bool contained = false;
    bool certified = false;
};

struct CoverageReport {
    // Pairs whose full center coset lies in B*B, and pairs passing the
    // certificate. certified <= N always (certificate soundness).
    std::uint64_t N = 0;
    std::uint64_t certified = 0;
    std::vector<PairResult> pairs;  // lexicographic in (a, b)

    // (prod |X_i|^2|Y_i|^2 - 2 q^(3n+2)) / (prod |X_i||Y_i| - 2 q^(n+2)),
    // present only when the denominator is positive.
    bool has_lower_bound = false;
    std::int64_t lb_num = 0;
    std::int64_t lb_den = 0;
    double lower_bound() const;

    // Soundness: certified <= N and every certified pair is contained.
    bool sound() const;
};

// Iterates all (a, b) in Q^n x Q^n. Throws TooLarge when q^(2n) > 10^6 (or
// via the product_set guard).
CoverageReport coverage(const Brick& B);

// Exact {s + t : s in S, t in T}.
ElemSet sumset(const QTable& Q, const ElemSet& S, const ElemSet& T);

// sum_{a in Q} |X ∩ (a - X)| == |X|^2.
bool eq1_check(const QTable& Q, const ElemSet& X);

// For |Z| > q/2: B*B equals the brick [X_i+X_i, Y_i+Y_i, Q].
// Throws PreconditionFailed when |Z| <= q/2.
bool large_z_branch(const Brick& B);

}  // namespace esp
