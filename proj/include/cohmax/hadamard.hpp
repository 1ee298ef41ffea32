#pragma once

#include <cstddef>
#include <vector>

#include "cohmax/linalg.hpp"

namespace cohmax {

inline constexpr double kHadamardTol = 1e-10;

class MonomialMatrix;

// Unitary with every entry of modulus 1/sqrt(d) (rescaled convention).
class HadamardMatrix {
public:
    // Throws InvalidStateError naming the worst deviation.
    static HadamardMatrix from_matrix(ComplexMatrix m, double tol = kHadamardTol);

    const UnitaryMatrix& unitary() const noexcept { return u_; }
    const ComplexMatrix& matrix() const noexcept { return u_.matrix(); }
    std::size_t dim() const noexcept { return u_.dim(); }

private:
    explicit HadamardMatrix(UnitaryMatrix u) : u_(std::move(u)) {}
    friend HadamardMatrix fourier_matrix(std::size_t d);
    friend HadamardMatrix equivalence_transform(const HadamardMatrix&, const MonomialMatrix&,
                                                const MonomialMatrix&);

    UnitaryMatrix u_;
};

// D P with D diagonal unitary and P a permutation: column j of the matrix
// is phases[permutation[j]] e_{permutation[j]}.
class MonomialMatrix {
public:
    MonomialMatrix(std::vector<std::size_t> permutation, std::vector<Complex> phases);
    static MonomialMatrix identity(std::size_t d);

    std::size_t dim() const noexcept { return permutation_.size(); }
    const std::vector<std::size_t>& permutation() const noexcept { return permutation_; }
    const std::vector<Complex>& phases() const noexcept { return phases_; }
    UnitaryMatrix to_unitary() const;

private:
    std::vector<std::size_t> permutation_;
    std::vector<Complex> phases_;
};

// [F_d]_{μν} = ω^{μν} / sqrt(d), ω = exp(+2πi/d). Throws DomainError for d = 0.
HadamardMatrix fourier_matrix(std::size_t d);

// |φ_k> = F_d |k>, k = 0..d-1
std::vector<ComplexVector> dual_basis(std::size_t d);

struct GeneralizedPauli {
    UnitaryMatrix z;  // Z|j> = ω^j |j>
    UnitaryMatrix x;  // X|j> = |j+1 mod d>
};

GeneralizedPauli generalized_pauli(std::size_t d);

// M1 H M2
HadamardMatrix equivalence_transform(const HadamardMatrix& h, const MonomialMatrix& m1,
                                     const MonomialMatrix& m2);

struct HadamardCheck {
    bool hadamard = false;
    // max of the unitarity residual and max_ij ||M_ij| - 1/sqrt(d)|
    double max_deviation = 0.0;
};

HadamardCheck is_hadamard(const ComplexMatrix& m, double tol = kHadamardTol);

// W = V H^†, V the eigenvector matrix of rho. W^† rho W = H Λ H^† has a
// uniform diagonal.
UnitaryMatrix optimal_basis(const DensityMatrix& rho, const HadamardMatrix& h);

}  // namespace cohmax
