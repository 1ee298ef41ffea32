#include "cohmax/hadamard.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cohmax/errors.hpp"

namespace cohmax {

namespace {

Complex root_of_unity(std::size_t d, std::size_t power) {
    // Reduce the exponent first so large μν products keep full accuracy.
    const auto k = power % d;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d);
    return {std::cos(angle), std::sin(angle)};
}

void require_positive(std::size_t d, const char* what) {
    if (d == 0) throw DomainError(std::string(what) + ": dimension must be positive");
}

}  // namespace

HadamardCheck is_hadamard(const ComplexMatrix& m, double tol) {
    const auto unit = is_unitary(m, tol);
    if (!std::isfinite(unit.residual)) return {false, unit.residual};
    const double target = 1.0 / std::sqrt(static_cast<double>(m.rows()));
    double dev = unit.residual;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            dev = std::max(dev, std::abs(std::abs(m(i, j)) - target));
        }
    }
    return {dev <= tol, dev};
}

HadamardMatrix HadamardMatrix::from_matrix(ComplexMatrix m, double tol) {
    const auto check = is_hadamard(m, tol);
    if (!check.hadamard) {
        throw InvalidStateError("hadamard: deviation " + std::to_string(check.max_deviation) +
                                " from unitary with entries of modulus 1/sqrt(d)");
    }
    return HadamardMatrix(UnitaryMatrix::assume_valid(std::move(m)));
}

MonomialMatrix::MonomialMatrix(std::vector<std::size_t> permutation, std::vector<Complex> phases)
    : permutation_(std::move(permutation)), phases_(std::move(phases)) {
    if (permutation_.empty()) throw DomainError("monomial: dimension must be positive");
    if (permutation_.size() != phases_.size()) throw ShapeError("monomial: permutation/phase length mismatch");
    std::vector<bool> seen(permutation_.size(), false);
    for (auto p : permutation_) {
        if (p >= permutation_.size() || seen[p]) throw DomainError("monomial: not a permutation");
        seen[p] = true;
    }
    for (const auto& z : phases_) {
        if (std::abs(std::abs(z) - 1.0) > 1e-12) throw DomainError("monomial: phase is not unimodular");
    }
}

MonomialMatrix MonomialMatrix::identity(std::size_t d) {
    require_positive(d, "monomial");
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    return MonomialMatrix(std::move(perm), std::vector<Complex>(d, Complex(1.0, 0.0)));
}

UnitaryMatrix MonomialMatrix::to_unitary() const {
    const auto d = static_cast<Eigen::Index>(dim());
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j < dim(); ++j) {
        const auto row = permutation_[j];
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = phases_[row];
    }
    return UnitaryMatrix::assume_valid(std::move(m));
}

HadamardMatrix fourier_matrix(std::size_t d) {
    require_positive(d, "fourier_matrix");
    const auto n = static_cast<Eigen::Index>(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    ComplexMatrix f(n, n);
    for (std::size_t mu = 0; mu < d; ++mu) {
        for (std::size_t nu = 0; nu < d; ++nu) {
            f(static_cast<Eigen::Index>(mu), static_cast<Eigen::Index>(nu)) = scale * root_of_unity(d, mu * nu);
        }
    }
    return HadamardMatrix(UnitaryMatrix::assume_valid(std::move(f)));
}

std::vector<ComplexVector> dual_basis(std::size_t d) {
    const auto f = fourier_matrix(d);
    std::vector<ComplexVector> basis;
    basis.reserve(d);
    for (std::size_t k = 0; k < d; ++k) basis.emplace_back(f.matrix().col(static_cast<Eigen::Index>(k)));
    return basis;
}

GeneralizedPauli generalized_pauli(std::size_t d) {
    require_positive(d, "generalized_pauli");
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix z = ComplexMatrix::Zero(n, n);
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < d; ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        z(i, i) = root_of_unity(d, j);
        x(static_cast<Eigen::Index>((j + 1) % d), i) = 1.0;
    }
    return {UnitaryMatrix::assume_valid(std::move(z)), UnitaryMatrix::assume_valid(std::move(x))};
}

HadamardMatrix equivalence_transform(const HadamardMatrix& h, const MonomialMatrix& m1,
                                     const MonomialMatrix& m2) {
    if (m1.dim() != h.dim() || m2.dim() != h.dim()) {
        throw ShapeError("equivalence_transform: monomial and Hadamard dimensions differ");
    }
    return HadamardMatrix(m1.to_unitary() * h.unitary() * m2.to_unitary());
}

UnitaryMatrix optimal_basis(const DensityMatrix& rho, const HadamardMatrix& h) {
    if (rho.dim() != h.dim()) throw ShapeError("optimal_basis: state and Hadamard dimensions differ");
    const auto eig = hermitian_eig(rho);
    return eig.vectors * h.unitary().adjoint();
}

}  // namespace cohmax
