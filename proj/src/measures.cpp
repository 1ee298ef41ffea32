#include "cohmax/measures.hpp"

#include <algorithm>
#include <cmath>

#include "cohmax/errors.hpp"

namespace cohmax {

namespace {

constexpr double kRelativeEntropyFloor = 1e-10;

double floor_at_zero(double x, double tol) { return (x < 0.0 && x > -tol) ? 0.0 : x; }

}  // namespace

double relative_entropy_coherence(const ComplexMatrix& representation, double state_entropy,
                                  LogBase base) {
    const auto diag = real_diagonal(representation);
    return floor_at_zero(shannon_entropy(diag, base) - state_entropy, kRelativeEntropyFloor);
}

double relative_entropy_coherence(const DensityMatrix& rho, LogBase base) {
    return relative_entropy_coherence(rho.matrix(), von_neumann_entropy(rho, base), base);
}

double l1_coherence(const ComplexMatrix& m) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j) s += std::abs(m(i, j));
        }
    }
    return s;
}

double l1_coherence(const DensityMatrix& rho) { return l1_coherence(rho.matrix()); }

double l2_coherence(const ComplexMatrix& m) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j) s += std::norm(m(i, j));
        }
    }
    return s;
}

double l2_coherence(const DensityMatrix& rho) { return l2_coherence(rho.matrix()); }

CoherenceReport coherence_report(const DensityMatrix& rho, LogBase base) {
    CoherenceReport r;
    r.c_r = relative_entropy_coherence(rho, base);
    r.c_l1 = l1_coherence(rho.matrix());
    r.c_l2 = l2_coherence(rho.matrix());
    r.diagonal = real_diagonal(rho.matrix());
    return r;
}

CoherenceReport coherence_in_basis(const DensityMatrix& rho, const UnitaryMatrix& u, LogBase base) {
    if (u.dim() != rho.dim()) {
        throw ShapeError("coherence_in_basis: basis is " + std::to_string(u.dim()) +
                         "-dimensional, state is " + std::to_string(rho.dim()) + "-dimensional");
    }
    const DensityMatrix transformed = conjugate_transform(u, rho);
    CoherenceReport r;
    // Entropy of the untransformed state: spectrum is basis independent.
    r.c_r = relative_entropy_coherence(transformed.matrix(), von_neumann_entropy(rho, base), base);
    r.c_l1 = l1_coherence(transformed.matrix());
    r.c_l2 = l2_coherence(transformed.matrix());
    r.diagonal = real_diagonal(transformed.matrix());
    return r;
}

}  // namespace cohmax
