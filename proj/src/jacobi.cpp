#include "espgroups/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "espgroups/errors.hpp"

namespace esp {

namespace {

double off_diagonal_norm(const std::vector<double>& a, int dim) {
    double s = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const double v = a[static_cast<size_t>(i) * dim + j];
            s += 2 * v * v;
        }
    return std::sqrt(s);
}

}  // namespace

JacobiResult jacobi_eigenvalues(std::vector<double> a, int dim, double tol,
                                int max_sweeps) {
    if (dim < 0 || a.size() != static_cast<size_t>(dim) * dim)
        throw DimensionMismatch("jacobi: matrix is not dim x dim");

    auto at = [&a, dim](int i, int j) -> double& {
        return a[static_cast<size_t>(i) * dim + j];
    };

    JacobiResult result;
    result.residual = off_diagonal_norm(a, dim);

    while (result.residual >= tol) {
        if (result.sweeps == max_sweeps)
            throw NoConvergence("jacobi: residual " +
                                std::to_string(result.residual) + " after " +
                                std::to_string(max_sweeps) + " sweeps");
        for (int p = 0; p < dim - 1; ++p)
            for (int q = p + 1; q < dim; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                // Rotation angle chosen to zero out a[p][q]; the smaller root
                // of t^2 + 2t*theta - 1 keeps |t| <= 1 for stability.
                const double theta = (at(q, q) - at(p, p)) / (2 * apq);
                const double t =
                    (theta >= 0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                const double tau = s / (1 + c);

                const double app = at(p, p), aqq = at(q, q);
                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0;
                at(q, p) = 0;
                for (int r = 0; r < dim; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p), arq = at(r, q);
                    at(r, p) = arp - s * (arq + tau * arp);
                    at(p, r) = at(r, p);
                    at(r, q) = arq + s * (arp - tau * arq);
                    at(q, r) = at(r, q);
                }
            }
        ++result.sweeps;
        result.residual = off_diagonal_norm(a, dim);
    }

    result.eigenvalues.resize(dim);
    for (int i = 0; i < dim; ++i) result.eigenvalues[i] = at(i, i);
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
              std::greater<>());
    return result;
}

}  // namespace esp
