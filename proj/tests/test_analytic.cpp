#include <doctest.h>

#include <cmath>

#include "cohmax/analytic.hpp"
#include "cohmax/errors.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/measures.hpp"
#include "cohmax/search.hpp"
#include "oracles.hpp"

using namespace cohmax;

namespace {

std::vector<double> values(const Spectrum& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST_CASE("reference O_3, O_4 and O_5 values") {
    const std::vector<double> l3{0.5, 0.3, 0.2};
    const std::vector<double> l4{0.4, 0.3, 0.2, 0.1};
    CHECK(std::abs(o_d(l3) - 0.529150) < 1e-6);
    CHECK(std::abs(o_d(l4) - 0.765685) < 1e-6);
    // 30-digit references: sqrt(0.28), 2 sqrt(0.02) + 0.2 + ... evaluated externally
    CHECK(std::abs(o_d(l3) - 0.52915026221291811810) < 1e-15);
    CHECK(std::abs(o_d(l4) - 0.76568542494923801952) < 1e-15);
    CHECK(std::abs(o_d(std::vector<double>{0.30, 0.25, 0.20, 0.15, 0.10}) - 0.68819096023558676910) < 1e-14);
}

TEST_CASE("o_d equals the l1 coherence of F Λ F^dagger") {
    RngStream rng(51, 0);
    for (std::size_t d = 2; d <= 8; ++d) {
        const auto f = oracle::fourier(d);
        for (int t = 0; t < 500; ++t) {
            const auto lambda = values(random_spectrum(d, rng));
            const ComplexMatrix theta = f * oracle::diag(lambda) * f.adjoint();
            REQUIRE(std::abs(o_d(lambda) - oracle::l1_offdiag(theta)) <= 1e-9);
            REQUIRE(std::abs(o_d(lambda) - oracle::fourier_l1_by_dft(lambda)) <= 1e-12);
        }
    }
}

TEST_CASE("closed forms for d = 3 and 4") {
    RngStream rng(52, 0);
    for (int t = 0; t < 200; ++t) {
        const auto l3 = values(random_spectrum(3, rng));
        const auto l4 = values(random_spectrum(4, rng));
        CHECK(std::abs(o3_closed(l3) - o_d(l3)) < 1e-12);
        CHECK(std::abs(o4_closed(l4) - o_d(l4)) < 1e-12);
    }
    CHECK_THROWS_AS(o3_closed(std::vector<double>{0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(o4_closed(std::vector<double>{0.5, 0.3, 0.2}), DomainError);
}

TEST_CASE("O_3 is symmetric under every ordering") {
    RngStream rng(53, 0);
    for (int t = 0; t < 50; ++t) {
        const auto lambda = random_spectrum(3, rng);
        for (const auto& p : oracle::all_permutations(3))
            CHECK(std::abs(o_d(lambda.permuted(p)) - o_d(lambda)) < 1e-14);
    }
}

TEST_CASE("o_d_tilde for (0.4,0.3,0.2,0.1) keeps the descending order") {
    const auto lambda = Spectrum::in_order({0.4, 0.3, 0.2, 0.1});
    const auto r = o_d_tilde(lambda);
    CHECK(r.evaluated == 24);
    CHECK(r.permutation == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(std::abs(r.value - 0.765685) < 1e-6);
    double best = 0.0;
    for (const auto& p : oracle::all_permutations(4)) best = std::max(best, o_d(lambda.permuted(p)));
    CHECK(r.value == doctest::Approx(best).epsilon(1e-15));
}

TEST_CASE("o_d_tilde matches brute force and bounds o_d") {
    RngStream rng(54, 0);
    for (std::size_t d = 2; d <= 6; ++d) {
        for (int t = 0; t < 20; ++t) {
            const auto lambda = random_spectrum(d, rng);
            double best = 0.0;
            for (const auto& p : oracle::all_permutations(d)) best = std::max(best, o_d(lambda.permuted(p)));
            const auto r = o_d_tilde(lambda);
            CHECK(std::abs(r.value - best) < 1e-14);
            CHECK(r.value >= o_d(lambda) - 1e-15);
            CHECK(std::abs(o_d(lambda.permuted(r.permutation)) - r.value) < 1e-14);
            CHECK(r.value <= static_cast<double>(d - 1) + 1e-12);
        }
    }
}

TEST_CASE("o_d_tilde refuses to enumerate above the cap") {
    CHECK_THROWS_AS(o_d_tilde(Spectrum::uniform(9)), CapabilityError);
    CHECK_THROWS_AS(o_d_tilde(Spectrum::uniform(5), 4), CapabilityError);
    RngStream rng(55, 0);
    const auto lambda = random_spectrum(9, rng);
    RngStream a(1, 2), b(1, 2);
    const auto r1 = o_d_tilde_sampled(lambda, 500, a);
    const auto r2 = o_d_tilde_sampled(lambda, 500, b);
    CHECK(r1.value == r2.value);
    CHECK(r1.permutation == r2.permutation);
    CHECK(r1.value >= o_d(lambda));
    CHECK(r1.value <= 8.0);
    AnalyticOptions opts;
    opts.permutation_samples = 100;
    CHECK_FALSE(analytic_report(lambda, opts).o_d_tilde_exhaustive);
}

TEST_CASE("C_P and C_F identities") {
    RngStream rng(56, 0);
    for (std::size_t d = 2; d <= 8; ++d) {
        for (int t = 0; t < 100; ++t) {
            const auto lambda = random_spectrum(d, rng);
            const double dd = static_cast<double>(d);
            CHECK(std::abs(c_p(lambda) - (dd - 1.0) * c_f(lambda)) < 1e-10);
            double purity = 0.0;
            for (double x : lambda.values()) purity += x * x;
            CHECK(std::abs(c_p(lambda) - std::sqrt((dd - 1.0) * (dd * purity - 1.0))) < 1e-12);
            const auto rho = random_density_matrix(d, rng);
            CHECK(std::abs(c_f(rho) - c_f(hermitian_eig(rho).spectrum)) < 1e-10);
        }
    }
    for (int t = 0; t < 100; ++t) {
        const auto l2 = random_spectrum(2, rng);
        const auto l3 = random_spectrum(3, rng);
        CHECK(std::abs(o_d(l2) - c_p(l2)) < 1e-9);
        CHECK(std::abs(o_d(l3) - c_p(l3)) < 1e-9);
    }
}

TEST_CASE("pure and maximally mixed extremes") {
    for (std::size_t d = 2; d <= 8; ++d) {
        const double dd = static_cast<double>(d);
        const auto pure = analytic_report(Spectrum::pure(d));
        CHECK(std::abs(pure.o_d - (dd - 1.0)) < 1e-12);
        CHECK(std::abs(pure.c_p - (dd - 1.0)) < 1e-12);
        CHECK(std::abs(pure.c_f - 1.0) < 1e-12);
        CHECK(std::abs(pure.c_r_max - std::log2(dd)) < 1e-12);
        CHECK(std::abs(pure.c_l2_max - (1.0 - 1.0 / dd)) < 1e-12);
        const auto mixed = analytic_report(Spectrum::uniform(d));
        CHECK(mixed.o_d < 1e-12);
        CHECK(mixed.c_p < 1e-6);
        CHECK(std::abs(mixed.c_r_max) < 1e-12);
    }
}

TEST_CASE("cr_max for (0.5,0.3,0.2)") {
    // log2 3 - H(0.5,0.3,0.2) = 0.09948720349382186195...
    CHECK(std::abs(cr_max(Spectrum::in_order({0.5, 0.3, 0.2})) - 0.09948720349382186) < 1e-14);
    CHECK(std::abs(cl2_max(Spectrum::in_order({0.5, 0.3, 0.2})) - 0.04666666666666667) < 1e-15);
}

TEST_CASE("analytic_report sorts before evaluating") {
    const auto a = analytic_report(Spectrum::in_order({0.1, 0.4, 0.2, 0.3}));
    CHECK(std::abs(a.o_d - 0.765685) < 1e-6);
}
