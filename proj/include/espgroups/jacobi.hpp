#pragma once

#include <vector>

namespace esp {

struct JacobiResult {
    std::vector<double> eigenvalues;  // sorted descending
    int sweeps = 0;
    double residual = 0.0;  // off-diagonal Frobenius norm at exit
};

// Cyclic Jacobi rotations on a dense symmetric matrix (row-major dim x dim).
// Stops when the off-diagonal Frobenius norm drops below tol; throws
// NoConvergence after max_sweeps full sweeps.
JacobiResult jacobi_eigenvalues(std::vector<double> a, int dim,
                                double tol = 1e-9, int max_sweeps = 100);

}  // namespace esp
