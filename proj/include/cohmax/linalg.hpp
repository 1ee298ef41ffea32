#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cohmax {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenClampTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

enum class LogBase { two, e };

// Parses "2" or "e".
LogBase parse_log_base(std::string_view text);
std::string_view to_string(LogBase base);
double log_of(double x, LogBase base);

// Probability vector. Values are kept in the order they were given to the
// factory; descending() sorts first.
class Spectrum {
public:
    // Sorts into descending order.
    static Spectrum descending(std::vector<double> values);
    // Keeps the caller's order (used when exploring permutations).
    static Spectrum in_order(std::vector<double> values);
    static Spectrum uniform(std::size_t dim);
    // (1, 0, ..., 0)
    static Spectrum pure(std::size_t dim);

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    double purity() const noexcept;
    bool is_descending() const noexcept;

    // result[i] = (*this)[perm[i]]
    Spectrum permuted(std::span<const std::size_t> perm) const;
    Spectrum sorted_descending() const;

private:
    explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {}

    std::vector<double> values_;
};

// Hermitian, positive semidefinite, unit trace.
class DensityMatrix {
public:
    // Validates every invariant; throws ShapeError / InvalidStateError.
    static DensityMatrix from_matrix(ComplexMatrix m);
    static DensityMatrix diagonal(const Spectrum& spectrum);
    // |psi><psi| for a normalised copy of psi.
    static DensityMatrix from_pure(const ComplexVector& psi);
    // For matrices that are density matrices by construction (e.g. U^† rho U).
    // Only the Hermitian part is kept; no spectrum check is run.
    static DensityMatrix assume_valid(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    double purity() const;

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

struct UnitarityCheck {
    bool unitary = false;
    // max |(M M^†)_ij - δ_ij|
    double residual = 0.0;
};

UnitarityCheck is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);

class UnitaryMatrix {
public:
    static UnitaryMatrix from_matrix(ComplexMatrix m, double tol = kUnitaryTol);
    static UnitaryMatrix identity(std::size_t dim);
    static UnitaryMatrix assume_valid(ComplexMatrix m) { return UnitaryMatrix(std::move(m)); }

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

    friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

private:
    explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    ComplexMatrix m_;
};

struct JacobiOptions {
    double off_norm_tol = 1e-12;
    int max_sweeps = 100;
};

// Raw output of the cyclic Jacobi solver: eigenvalues descending (stable
// order for ties), eigenvectors in matching columns.
struct HermitianEigenpairs {
    RealVector values;
    ComplexMatrix vectors;
    int sweeps = 0;
    double off_norm = 0.0;
};

// Cyclic Jacobi rotations for a complex Hermitian matrix.
// Throws InvalidStateError if `a` is not Hermitian within kHermitianTol and
// NumericalError if the off-diagonal norm does not drop below tolerance.
HermitianEigenpairs jacobi_eigensolve(const ComplexMatrix& a, const JacobiOptions& options = {});

struct EigenDecomposition {
    Spectrum spectrum;
    UnitaryMatrix vectors;
};

// rho = V Λ V^† with Λ descending. Negative eigenvalues within
// kEigenClampTol are set to zero and the spectrum renormalised.
EigenDecomposition hermitian_eig(const DensityMatrix& rho);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);

// U^† rho U: the representation of rho in the basis formed by U's columns.
DensityMatrix conjugate_transform(const UnitaryMatrix& u, const DensityMatrix& rho);

// U diag(λ) U^†
ComplexMatrix spectral_matrix(const ComplexMatrix& u, std::span<const double> lambda);

// -Σ p_i log p_i with 0 log 0 = 0.
double shannon_entropy(std::span<const double> p, LogBase base = LogBase::two);
double shannon_entropy(const Spectrum& p, LogBase base = LogBase::two);
double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::two);

double max_abs(const ComplexMatrix& m);
std::vector<double> real_diagonal(const ComplexMatrix& m);

}  // namespace cohmax
