#include "cohmax/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "cohmax/errors.hpp"

namespace cohmax {

namespace {

constexpr double kSpectrumSumTol = 1e-10;

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(6);
    os << std::scientific << x;
    return os.str();
}

void check_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ShapeError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

bool all_finite(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
        }
    }
    return true;
}

double hermitian_deviation(const ComplexMatrix& m) {
    double dev = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return dev;
}

std::vector<double> validated_probabilities(std::vector<double> values) {
    if (values.empty()) throw ShapeError("spectrum: empty");
    for (auto& v : values) {
        if (!std::isfinite(v)) throw InvalidStateError("spectrum: non-finite entry");
        if (v < -kEigenClampTol) {
            throw InvalidStateError("spectrum: negative entry " + fmt_double(v));
        }
        if (v > 1.0 + kSpectrumSumTol) {
            throw InvalidStateError("spectrum: entry exceeds 1: " + fmt_double(v));
        }
        if (v < 0.0) v = 0.0;
    }
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) > kSpectrumSumTol) {
        throw InvalidStateError("spectrum: entries sum to " + fmt_double(sum) + ", expected 1");
    }
    return values;
}

}  // namespace

LogBase parse_log_base(std::string_view text) {
    if (text == "2") return LogBase::two;
    if (text == "e") return LogBase::e;
    throw ParseError("log base must be '2' or 'e', got '" + std::string(text) + "'");
}

std::string_view to_string(LogBase base) { return base == LogBase::two ? "2" : "e"; }

double log_of(double x, LogBase base) { return base == LogBase::two ? std::log2(x) : std::log(x); }

// ---------------------------------------------------------------------------
// Spectrum

Spectrum Spectrum::descending(std::vector<double> values) {
    auto v = validated_probabilities(std::move(values));
    std::stable_sort(v.begin(), v.end(), std::greater<>());
    return Spectrum(std::move(v));
}

Spectrum Spectrum::in_order(std::vector<double> values) {
    return Spectrum(validated_probabilities(std::move(values)));
}

Spectrum Spectrum::uniform(std::size_t dim) {
    if (dim == 0) throw DomainError("spectrum: dimension must be positive");
    return Spectrum(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

Spectrum Spectrum::pure(std::size_t dim) {
    if (dim == 0) throw DomainError("spectrum: dimension must be positive");
    std::vector<double> v(dim, 0.0);
    v[0] = 1.0;
    return Spectrum(std::move(v));
}

double Spectrum::purity() const noexcept {
    double s = 0.0;
    for (double x : values_) s += x * x;
    return s;
}

bool Spectrum::is_descending() const noexcept {
    return std::is_sorted(values_.begin(), values_.end(), std::greater<>());
}

Spectrum Spectrum::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != values_.size()) throw ShapeError("spectrum: permutation length mismatch");
    std::vector<bool> seen(perm.size(), false);
    std::vector<double> out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] >= perm.size() || seen[perm[i]]) {
            throw DomainError("spectrum: not a permutation");
        }
        seen[perm[i]] = true;
        out[i] = values_[perm[i]];
    }
    return Spectrum(std::move(out));
}

Spectrum Spectrum::sorted_descending() const {
    auto v = values_;
    std::stable_sort(v.begin(), v.end(), std::greater<>());
    return Spectrum(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
    check_square(m, "density matrix");
    if (!all_finite(m)) throw InvalidStateError("density matrix: non-finite entry");
    const double herm = hermitian_deviation(m);
    if (herm > kHermitianTol) {
        throw InvalidStateError("density matrix: not Hermitian (max |A_ij - conj(A_ji)| = " +
                                fmt_double(herm) + ")");
    }
    const Complex tr = m.trace();
    if (std::abs(tr.real() - 1.0) > kTraceTol || std::abs(tr.imag()) > kTraceTol) {
        throw InvalidStateError("density matrix: trace is " + fmt_double(tr.real()) +
                                ", expected 1");
    }
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    const auto eig = jacobi_eigensolve(h);
    const double min_eig = eig.values.minCoeff();
    if (min_eig < -kEigenClampTol) {
        throw InvalidStateError("density matrix: not positive semidefinite (min eigenvalue " +
                                fmt_double(min_eig) + ")");
    }
    return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::diagonal(const Spectrum& spectrum) {
    const auto d = static_cast<Eigen::Index>(spectrum.dim());
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = spectrum[static_cast<std::size_t>(i)];
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
    if (psi.size() == 0) throw ShapeError("pure state: empty vector");
    const double n = psi.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidStateError("pure state: zero or non-finite norm");
    const ComplexVector v = psi / n;
    return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::assume_valid(ComplexMatrix m) {
    check_square(m, "density matrix");
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    return DensityMatrix(std::move(h));
}

double DensityMatrix::purity() const {
    // tr(rho^2) = Σ |rho_ij|^2 for Hermitian rho
    return m_.squaredNorm();
}

// ---------------------------------------------------------------------------
// Unitary

UnitarityCheck is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return {false, std::numeric_limits<double>::infinity()};
    }
    if (!all_finite(m)) return {false, std::numeric_limits<double>::infinity()};
    const ComplexMatrix g = m * m.adjoint();
    double residual = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            const Complex target = (i == j) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
            residual = std::max(residual, std::abs(g(i, j) - target));
        }
    }
    return {residual <= tol, residual};
}

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix m, double tol) {
    check_square(m, "unitary");
    const auto check = is_unitary(m, tol);
    if (!check.unitary) {
        throw InvalidStateError("unitary: ||U U^dagger - I||_max = " + fmt_double(check.residual) +
                                " exceeds " + fmt_double(tol));
    }
    return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
    if (dim == 0) throw DomainError("unitary: dimension must be positive");
    const auto d = static_cast<Eigen::Index>(dim);
    return UnitaryMatrix(ComplexMatrix::Identity(d, d));
}

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim()) throw ShapeError("unitary product: dimension mismatch");
    return UnitaryMatrix(a.m_ * b.m_);
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

HermitianEigenpairs jacobi_eigensolve(const ComplexMatrix& input, const JacobiOptions& options) {
    check_square(input, "hermitian eigensolver");
    if (!all_finite(input)) throw InvalidStateError("hermitian eigensolver: non-finite entry");
    const double herm = hermitian_deviation(input);
    if (herm > kHermitianTol) {
        throw InvalidStateError("hermitian eigensolver: input not Hermitian (deviation " +
                                fmt_double(herm) + ")");
    }

    const Eigen::Index n = input.rows();
    ComplexMatrix a = 0.5 * (input + input.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);
    const double tol = options.off_norm_tol * std::max(1.0, a.norm());

    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i != j) s += std::norm(a(i, j));
            }
        }
        return std::sqrt(s);
    };

    int sweep = 0;
    double off = off_norm();
    while (off >= tol && sweep < options.max_sweeps) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = apq / mag;

                // Real rotation on the phase-rotated 2x2 block.
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = diag(.., 1, .., conj(phase), ..) * R
                const Complex g_pp = c;
                const Complex g_pq = s;
                const Complex g_qp = -s * std::conj(phase);
                const Complex g_qq = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * g_pp + akq * g_qp;
                    a(k, q) = akp * g_pq + akq * g_qq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * g_pp + vkq * g_qp;
                    v(k, q) = vkp * g_pq + vkq * g_qq;
                }
            }
        }
        ++sweep;
        off = off_norm();
    }
    if (off >= tol) {
        throw NumericalError("hermitian eigensolver: no convergence after " + std::to_string(sweep) +
                             " sweeps, off-diagonal residual " + fmt_double(off));
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() > a(y, y).real(); });

    HermitianEigenpairs out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        out.values(k) = a(src, src).real();
        out.vectors.col(k) = v.col(src);
    }
    out.sweeps = sweep;
    out.off_norm = off;
    return out;
}

EigenDecomposition hermitian_eig(const DensityMatrix& rho) {
    auto eig = jacobi_eigensolve(rho.matrix());
    std::vector<double> values(static_cast<std::size_t>(eig.values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        double x = eig.values(static_cast<Eigen::Index>(i));
        if (x < -kEigenClampTol) {
            throw InvalidStateError("hermitian_eig: eigenvalue " + fmt_double(x) +
                                    " below clamping tolerance");
        }
        values[i] = std::max(x, 0.0);
    }
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) <= kSpectrumSumTol && sum > 0.0) {
        for (auto& x : values) x /= sum;
    }
    return {Spectrum::in_order(std::move(values)), UnitaryMatrix::assume_valid(std::move(eig.vectors))};
}

// ---------------------------------------------------------------------------

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    return a * b;
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

DensityMatrix conjugate_transform(const UnitaryMatrix& u, const DensityMatrix& rho) {
    if (u.dim() != rho.dim()) {
        throw ShapeError("conjugate_transform: unitary is " + std::to_string(u.dim()) +
                         "-dimensional, state is " + std::to_string(rho.dim()) + "-dimensional");
    }
    return DensityMatrix::assume_valid(u.matrix().adjoint() * rho.matrix() * u.matrix());
}

ComplexMatrix spectral_matrix(const ComplexMatrix& u, std::span<const double> lambda) {
    const Eigen::Index d = u.rows();
    if (u.cols() != d || static_cast<std::size_t>(d) != lambda.size()) {
        throw ShapeError("spectral_matrix: dimension mismatch");
    }
    ComplexMatrix theta(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = i; j < d; ++j) {
            Complex s = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                s += lambda[static_cast<std::size_t>(k)] * u(i, k) * std::conj(u(j, k));
            }
            theta(i, j) = s;
            theta(j, i) = std::conj(s);
        }
        theta(i, i) = theta(i, i).real();
    }
    return theta;
}

double shannon_entropy(std::span<const double> p, LogBase base) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) h -= x * log_of(x, base);
    }
    return std::max(h, 0.0);
}

double shannon_entropy(const Spectrum& p, LogBase base) { return shannon_entropy(p.values(), base); }

double von_neumann_entropy(const DensityMatrix& rho, LogBase base) {
    return shannon_entropy(hermitian_eig(rho).spectrum, base);
}

double max_abs(const ComplexMatrix& m) {
    double r = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
    }
    return r;
}

std::vector<double> real_diagonal(const ComplexMatrix& m) {
    std::vector<double> out(static_cast<std::size_t>(std::min(m.rows(), m.cols())));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return out;
}

}  // namespace cohmax
