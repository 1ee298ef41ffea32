#include <doctest.h>

#include <cmath>

#include "cohmax/analytic.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/measures.hpp"
#include "cohmax/search.hpp"
#include "oracles.hpp"

using namespace cohmax;

TEST_CASE("incoherent states have zero coherence") {
    for (std::size_t d = 1; d <= 6; ++d) {
        const auto rho = DensityMatrix::diagonal(Spectrum::pure(d));
        const auto r = coherence_report(rho);
        CHECK(r.c_r == 0.0);
        CHECK(r.c_l1 == 0.0);
        CHECK(r.c_l2 == 0.0);
    }
    const auto r = coherence_report(DensityMatrix::diagonal(Spectrum::in_order({0.5, 0.3, 0.2})));
    CHECK(r.c_r == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.c_l1 == 0.0);
}

TEST_CASE("|+> has one bit of coherence") {
    ComplexVector plus(2);
    plus << 1.0, 1.0;
    const auto r = coherence_report(DensityMatrix::from_pure(plus));
    CHECK(std::abs(r.c_r - 1.0) < 1e-12);
    CHECK(std::abs(r.c_l1 - 1.0) < 1e-12);
    CHECK(std::abs(r.c_l2 - 0.5) < 1e-12);
    CHECK(std::abs(coherence_report(DensityMatrix::from_pure(plus), LogBase::e).c_r - std::log(2.0)) < 1e-12);
}

TEST_CASE("maximally coherent pure states reach log d and d - 1") {
    for (std::size_t d = 2; d <= 8; ++d) {
        const ComplexVector psi = ComplexVector::Ones(static_cast<Eigen::Index>(d));
        const auto r = coherence_report(DensityMatrix::from_pure(psi));
        CHECK(std::abs(r.c_r - std::log2(static_cast<double>(d))) < 1e-10);
        CHECK(std::abs(r.c_l1 - static_cast<double>(d - 1)) < 1e-10);
        CHECK(std::abs(r.c_l2 - (1.0 - 1.0 / static_cast<double>(d))) < 1e-12);
    }
}

TEST_CASE("diagonal(0.4,0.3,0.2,0.1) seen in the F4 basis") {
    const auto rho = DensityMatrix::diagonal(Spectrum::in_order({0.4, 0.3, 0.2, 0.1}));
    const auto r = coherence_in_basis(rho, fourier_matrix(4).unitary());
    CHECK(std::abs(r.c_l1 - 0.765685) < 1e-6);
    for (double x : r.diagonal) CHECK(std::abs(x - 0.25) < 1e-12);
    CHECK(std::abs(r.c_r - (2.0 - shannon_entropy(Spectrum::in_order({0.4, 0.3, 0.2, 0.1})))) < 1e-12);
}

TEST_CASE("the maximally mixed state is incoherent in every basis") {
    RngStream rng(31, 0);
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto rho = DensityMatrix::diagonal(Spectrum::uniform(d));
        for (int t = 0; t < 10; ++t) {
            const auto r = coherence_in_basis(rho, sample_cue(d, rng));
            CHECK(std::abs(r.c_r) < 1e-12);
            CHECK(r.c_l1 < 1e-12);
            CHECK(r.c_l2 < 1e-24);
        }
    }
}

TEST_CASE("measures are invariant under monomial basis changes") {
    RngStream rng(32, 0);
    for (std::size_t d = 2; d <= 6; ++d) {
        for (int t = 0; t < 20; ++t) {
            const auto rho = random_density_matrix(d, rng);
            std::vector<std::size_t> perm(d);
            for (std::size_t i = 0; i < d; ++i) perm[i] = (i + static_cast<std::size_t>(t)) % d;
            std::vector<Complex> phases(d);
            for (auto& p : phases) p = std::polar(1.0, 2.0 * 3.141592653589793 * rng.uniform());
            const auto m = MonomialMatrix(perm, phases).to_unitary();
            const auto a = coherence_report(rho);
            const auto b = coherence_in_basis(rho, m);
            CHECK(std::abs(a.c_r - b.c_r) < 1e-10);
            CHECK(std::abs(a.c_l1 - b.c_l1) < 1e-12);
            CHECK(std::abs(a.c_l2 - b.c_l2) < 1e-12);
        }
    }
}

TEST_CASE("basis-dependent measures stay within their basis-maximum bounds") {
    RngStream rng(33, 0);
    for (std::size_t d = 2; d <= 6; ++d) {
        for (int t = 0; t < 20; ++t) {
            const auto rho = random_density_matrix(d, rng);
            const auto lambda = hermitian_eig(rho).spectrum;
            const auto r = coherence_in_basis(rho, sample_cue(d, rng));
            CHECK(r.c_r >= -1e-10);
            CHECK(r.c_r <= cr_max(lambda) + 1e-10);
            CHECK(r.c_l2 <= cl2_max(lambda) + 1e-12);
            CHECK(r.c_l1 <= static_cast<double>(d - 1) + 1e-12);
        }
    }
}

TEST_CASE("l1 and l2 agree with direct off-diagonal sums") {
    RngStream rng(34, 0);
    const auto rho = random_density_matrix(5, rng);
    double l2 = 0.0;
    for (Eigen::Index i = 0; i < 5; ++i)
        for (Eigen::Index j = 0; j < 5; ++j)
            if (i != j) l2 += std::norm(rho.matrix()(i, j));
    CHECK(std::abs(l1_coherence(rho) - oracle::l1_offdiag(rho.matrix())) < 1e-14);
    CHECK(std::abs(l2_coherence(rho) - l2) < 1e-15);
    // C_R = S(diag) - S(rho) with eigenvalues from an independent solver
    std::vector<double> diag(5);
    for (Eigen::Index i = 0; i < 5; ++i) diag[static_cast<std::size_t>(i)] = rho.matrix()(i, i).real();
    const double ref = static_cast<double>(oracle::entropy_bits(diag) - oracle::entropy_bits(oracle::eigenvalues(rho.matrix())));
    CHECK(std::abs(relative_entropy_coherence(rho) - ref) < 1e-10);
}
