#include <doctest.h>

#include <cmath>

#include "cohmax/errors.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/measures.hpp"
#include "cohmax/search.hpp"
#include "oracles.hpp"

using namespace cohmax;

TEST_CASE("fourier_matrix entries") {
    const auto f2 = fourier_matrix(2).matrix();
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(f2(0, 0) - Complex(s, 0)) < 1e-15);
    CHECK(std::abs(f2(1, 1) - Complex(-s, 0)) < 1e-15);
    const auto f4 = fourier_matrix(4).matrix();
    CHECK(std::abs(f4(1, 1) - Complex(0, 0.5)) < 1e-15);
    CHECK(std::abs(f4(3, 3) - Complex(0, 0.5)) < 1e-15);
    CHECK(std::abs(f4(1, 3) - Complex(0, -0.5)) < 1e-15);
    CHECK(fourier_matrix(1).matrix()(0, 0) == Complex(1.0, 0.0));
    CHECK_THROWS_AS(fourier_matrix(0), DomainError);
    for (std::size_t d = 1; d <= 12; ++d) {
        CHECK(oracle::max_entry_diff(fourier_matrix(d).matrix(), oracle::fourier(d)) < 1e-14);
        CHECK(is_hadamard(fourier_matrix(d).matrix()).hadamard);
    }
}

TEST_CASE("dual basis is orthonormal and unbiased to the computational basis") {
    for (std::size_t d = 2; d <= 7; ++d) {
        const auto phi = dual_basis(d);
        REQUIRE(phi.size() == d);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                const Complex ip = phi[a].dot(phi[b]);
                CHECK(std::abs(ip - Complex(a == b ? 1.0 : 0.0, 0.0)) < 1e-14);
            }
            for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d); ++k)
                CHECK(std::abs(std::abs(phi[a](k)) - 1.0 / std::sqrt(static_cast<double>(d))) < 1e-14);
        }
    }
}

TEST_CASE("generalized Pauli operators act as shifts on the dual basis") {
    for (std::size_t d = 2; d <= 7; ++d) {
        const auto [z, x] = generalized_pauli(d);
        const auto phi = dual_basis(d);
        const double tau = 2.0 * 3.14159265358979323846 / static_cast<double>(d);
        for (std::size_t j = 0; j < d; ++j) {
            CHECK((z.matrix() * phi[j] - phi[(j + 1) % d]).cwiseAbs().maxCoeff() < 1e-13);
            const Complex w = std::polar(1.0, -tau * static_cast<double>(j));
            CHECK((x.matrix() * phi[j] - w * phi[j]).cwiseAbs().maxCoeff() < 1e-13);
        }
        ComplexMatrix xd = ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        ComplexMatrix zd = xd;
        for (std::size_t i = 0; i < d; ++i) {
            xd = xd * x.matrix();
            zd = zd * z.matrix();
        }
        CHECK(oracle::max_entry_diff(xd, ComplexMatrix::Identity(xd.rows(), xd.cols())) < 1e-12);
        CHECK(oracle::max_entry_diff(zd, ComplexMatrix::Identity(zd.rows(), zd.cols())) < 1e-12);
        // ZX = ω XZ
        const Complex omega = std::polar(1.0, tau);
        CHECK(oracle::max_entry_diff(z.matrix() * x.matrix(), omega * x.matrix() * z.matrix()) < 1e-13);
    }
}

TEST_CASE("equivalence transforms keep the Hadamard property") {
    RngStream rng(41, 0);
    for (std::size_t d = 2; d <= 6; ++d) {
        for (int t = 0; t < 10; ++t) {
            auto random_monomial = [&]() {
                std::vector<std::size_t> perm(d);
                for (std::size_t i = 0; i < d; ++i) perm[i] = i;
                for (std::size_t i = d; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_u64() % i]);
                std::vector<Complex> phases(d);
                for (auto& p : phases) p = std::polar(1.0, 6.283185307179586 * rng.uniform());
                return MonomialMatrix(perm, phases);
            };
            const auto h = equivalence_transform(fourier_matrix(d), random_monomial(), random_monomial());
            CHECK(is_hadamard(h.matrix()).hadamard);
            CHECK(is_hadamard(h.matrix()).max_deviation < 1e-13);
        }
    }
}

TEST_CASE("is_hadamard rejects non-Hadamard unitaries") {
    const auto id = is_hadamard(ComplexMatrix::Identity(3, 3));
    CHECK_FALSE(id.hadamard);
    CHECK(id.max_deviation == doctest::Approx(1.0 / std::sqrt(3.0)));

    // moduli of a d = 4 search optimum that is far from Hadamard
    ComplexMatrix u(4, 4);
    u << 0.374814, 0.722579, 0.0537192, 0.578367, 0.588384, 0.047510, 0.690752, 0.417623, 0.400215, 0.667041,
        0.190933, 0.598689, 0.594261, 0.175156, 0.695357, 0.364216;
    const auto r = is_hadamard(u, 1e-10);
    CHECK_FALSE(r.hadamard);
    CHECK(r.max_deviation >= 0.722579 - 0.5 - 1e-12);

    RngStream rng(42, 0);
    CHECK_FALSE(is_hadamard(sample_cue(4, rng).matrix()).hadamard);
    CHECK_THROWS_AS(HadamardMatrix::from_matrix(ComplexMatrix::Identity(2, 2)), InvalidStateError);
    CHECK_NOTHROW(HadamardMatrix::from_matrix(oracle::fourier(5)));
}

TEST_CASE("monomial matrices") {
    const MonomialMatrix m({1, 2, 0}, {Complex(1, 0), Complex(0, 1), Complex(-1, 0)});
    const auto u = m.to_unitary().matrix();
    CHECK(u(1, 0) == Complex(0, 1));
    CHECK(u(2, 1) == Complex(-1, 0));
    CHECK(u(0, 2) == Complex(1, 0));
    CHECK(is_unitary(u).unitary);
    CHECK_THROWS_AS(MonomialMatrix({0, 0}, {Complex(1, 0), Complex(1, 0)}), DomainError);
    CHECK_THROWS_AS(MonomialMatrix({0, 1}, {Complex(1, 0), Complex(2, 0)}), DomainError);
    CHECK_THROWS_AS(MonomialMatrix({0, 1}, {Complex(1, 0)}), ShapeError);
}

TEST_CASE("optimal_basis makes the diagonal uniform and reaches the basis maxima") {
    SUBCASE("diagonal state, W = F3^dagger") {
        const auto rho = DensityMatrix::diagonal(Spectrum::in_order({0.5, 0.3, 0.2}));
        const auto w = optimal_basis(rho, fourier_matrix(3));
        CHECK(oracle::max_entry_diff(w.matrix(), oracle::fourier(3).adjoint()) < 1e-12);
        for (double x : coherence_in_basis(rho, w).diagonal) CHECK(std::abs(x - 1.0 / 3.0) < 1e-12);
    }
    SUBCASE("pure state in d = 4 reaches l1 = 3") {
        ComplexVector psi(4);
        psi << Complex(0.6, 0.1), Complex(0.2, -0.3), Complex(0.1, 0.5), Complex(-0.4, 0.2);
        const auto rho = DensityMatrix::from_pure(psi);
        const auto r = coherence_in_basis(rho, optimal_basis(rho, fourier_matrix(4)));
        CHECK(std::abs(r.c_l1 - 3.0) < 1e-9);
        CHECK(std::abs(r.c_r - 2.0) < 1e-9);
    }
    SUBCASE("random states across dimensions") {
        RngStream rng(43, 0);
        for (std::size_t d = 2; d <= 6; ++d) {
            for (int t = 0; t < 20; ++t) {
                const auto rho = random_density_matrix(d, rng);
                const auto r = coherence_in_basis(rho, optimal_basis(rho, fourier_matrix(d)));
                for (double x : r.diagonal) CHECK(std::abs(x - 1.0 / static_cast<double>(d)) < 1e-9);
            }
        }
    }
}
