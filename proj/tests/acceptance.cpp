// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Every stochastic criterion runs at seed 0, stream chosen per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cohmax/analytic.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/measures.hpp"
#include "cohmax/search.hpp"

using namespace cohmax;

namespace {

constexpr std::uint64_t kSeed = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome analytic_values() {
    const double o3 = o_d(std::vector<double>{0.5, 0.3, 0.2});
    const double o4 = o_d(std::vector<double>{0.4, 0.3, 0.2, 0.1});
    const double e3 = std::abs(o3 - 0.529150);
    const double e4 = std::abs(o4 - 0.765685);
    return {e3 <= 1e-6 && e4 <= 1e-6, fmt("O3=%.9f (|err| %.1e)  O4=%.9f (|err| %.1e)  tol 1e-6", o3, e3, o4, e4)};
}

Outcome oracle_identity() {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
        RngStream rng(kSeed, 100 + d);
        const auto f = fourier_matrix(d).matrix();
        for (int t = 0; t < 500; ++t) {
            const auto lambda = random_spectrum(d, rng);
            const double l1 = l1_coherence(spectral_matrix(f, lambda.values()));
            worst = std::max(worst, std::abs(l1 - o_d(lambda)));
        }
    }
    return {worst <= 1e-9, fmt("500 spectra x d=2..8  max|l1(F L F+) - o_d| = %.2e  tol 1e-9", worst)};
}

Outcome relative_entropy_attainment() {
    double attain = 0.0, diag = 0.0, excess = -1.0;
    std::uint64_t exceed = 0;
    for (std::size_t d = 2; d <= 6; ++d) {
        RngStream rng(kSeed, 200 + d);
        const double dd = static_cast<double>(d);
        const auto f = fourier_matrix(d);
        for (int t = 0; t < 100; ++t) {
            const auto rho = random_density_matrix(d, rng);
            const double bound = std::log2(dd) - von_neumann_entropy(rho);
            const auto best = coherence_in_basis(rho, optimal_basis(rho, f));
            attain = std::max(attain, std::abs(best.c_r - bound));
            for (double x : best.diagonal) diag = std::max(diag, std::abs(x - 1.0 / dd));
            for (int s = 0; s < 1000; ++s) {
                const double c = coherence_in_basis(rho, sample_cue(d, rng)).c_r;
                excess = std::max(excess, c - bound);
                if (c > bound + 1e-9) ++exceed;
            }
        }
    }
    return {attain <= 1e-9 && diag <= 1e-9 && exceed == 0,
            fmt("100 states x d=2..6  |C_R(V F+) - bound| %.2e  diag dev %.2e  CUE exceedances %llu/500000 "
                "(max C_R - bound %.3e)  tol 1e-9",
                attain, diag, static_cast<unsigned long long>(exceed), excess)};
}

Outcome l2_attainment() {
    double attain = 0.0, excess = -1.0;
    std::uint64_t exceed = 0;
    for (std::size_t d = 2; d <= 6; ++d) {
        RngStream rng(kSeed, 300 + d);
        const auto f = fourier_matrix(d).matrix();
        for (int t = 0; t < 100; ++t) {
            const auto lambda = random_spectrum(d, rng);
            double bound = -1.0 / static_cast<double>(d);
            for (double x : lambda.values()) bound += x * x;
            attain = std::max(attain, std::abs(l2_coherence(spectral_matrix(f, lambda.values())) - bound));
            const MeasureEvaluator eval(lambda, Measure::l2);
            for (int s = 0; s < 1000; ++s) {
                const double c = eval(sample_cue(d, rng).matrix());
                excess = std::max(excess, c - bound);
                if (c > bound + 1e-10) ++exceed;
            }
        }
    }
    return {attain <= 1e-10 && exceed == 0,
            fmt("100 spectra x d=2..6  |C_l2(F) - (sum l^2 - 1/d)| %.2e  CUE exceedances %llu/500000 "
                "(max C_l2 - bound %.3e)  tol 1e-10",
                attain, static_cast<unsigned long long>(exceed), excess)};
}

Outcome stationarity() {
    double worst = 0.0, circ = 0.0;
    bool all_circulant = true;
    for (std::size_t d = 2; d <= 6; ++d) {
        RngStream rng(kSeed, 400 + d);
        const auto f = fourier_matrix(d).unitary();
        for (int t = 0; t < 100; ++t) {
            const auto lambda = random_spectrum(d, rng);
            worst = std::max(worst, stationarity_residual(lambda, f));
            const auto c = circulant_check(ThetaMatrix::from_basis(lambda, f));
            all_circulant = all_circulant && c.circulant;
            circ = std::max(circ, c.max_deviation);
        }
    }
    return {worst <= 1e-9 && all_circulant,
            fmt("100 spectra x d=2..6  max residual at F_d %.2e (tol 1e-9)  circulant %s (max dev %.2e, tol 1e-10)",
                worst, all_circulant ? "all" : "NOT all", circ)};
}

Outcome d3_trend() {
    const auto lambda = Spectrum::in_order({0.5, 0.3, 0.2});
    const double o3 = o_d(lambda);
    std::vector<double> best;
    std::string detail;
    for (std::uint64_t n : {1000ULL, 10000ULL, 100000ULL}) {
        SearchOptions o;
        o.samples = n;
        o.reference = o3;
        const auto r = random_search(lambda, o, RngStream(kSeed, 0));
        best.push_back(r.best_value);
        detail += fmt("N=%llu best %.8f  ", static_cast<unsigned long long>(n), r.best_value);
    }
    const bool monotone = best[0] <= best[1] && best[1] <= best[2];
    const bool capped = best[0] <= 0.529151 && best[1] <= 0.529151 && best[2] <= 0.529151;
    const bool reached = best[2] >= 0.5285;
    detail += fmt("| nondecreasing %s, all <= 0.529151 %s, N=1e5 best >= 0.5285 %s", monotone ? "yes" : "NO",
                  capped ? "yes" : "NO", reached ? "yes" : "NO");
    return {monotone && capped && reached, detail};
}

Outcome d4_violations() {
    const auto lambda = Spectrum::in_order({0.4, 0.3, 0.2, 0.1});
    SearchOptions o;
    o.samples = 1000000;
    o.reference = o_d(lambda);
    const auto r = random_search(lambda, o, RngStream(kSeed, 0));
    return {r.violation_count >= 1 && r.best_value >= 0.768,
            fmt("1e6 samples  violations of O4=%.6f: %llu  max found %.6f (need >= 1 and >= 0.768)", o.reference,
                static_cast<unsigned long long>(r.violation_count), r.best_value)};
}

Outcome d5_violation() {
    const auto lambda = Spectrum::in_order({0.30, 0.25, 0.20, 0.15, 0.10});
    SearchOptions o;
    o.samples = 100000;
    o.reference = o_d(lambda);
    const auto r = random_search(lambda, o, RngStream(kSeed, 0));
    return {r.violation_count >= 1, fmt("1e5 samples  violations of O5=%.6f: %llu  max found %.6f", o.reference,
                                        static_cast<unsigned long long>(r.violation_count), r.best_value)};
}

Outcome qubit_optimality() {
    bool ok = true;
    std::string detail = "1e5 samples each: ";
    for (const auto& l : {std::vector<double>{0.7, 0.3}, std::vector<double>{0.9, 0.1}, std::vector<double>{1.0, 0.0}}) {
        const auto lambda = Spectrum::in_order(l);
        const double gap = std::abs(l[0] - l[1]);
        SearchOptions o;
        o.samples = 100000;
        o.reference = gap;
        const auto r = random_search(lambda, o, RngStream(kSeed, 0));
        const bool pass = r.best_value <= gap + 1e-9 && r.best_value >= gap - 1e-3;
        ok = ok && pass;
        detail += fmt("|dl|=%.1f best %.7f %s  ", gap, r.best_value, pass ? "ok" : "OUT");
    }
    return {ok, detail + "(window [|dl|-1e-3, |dl|+1e-9])"};
}

Outcome identities() {
    double cpf = 0.0, o3 = 0.0, o2 = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
        RngStream rng(kSeed, 500 + d);
        for (int t = 0; t < 500; ++t) {
            const auto lambda = random_spectrum(d, rng);
            cpf = std::max(cpf, std::abs(c_p(lambda) - static_cast<double>(d - 1) * c_f(lambda)));
            if (d == 2) o2 = std::max(o2, std::abs(o_d(lambda) - c_p(lambda)));
            if (d == 3) o3 = std::max(o3, std::abs(o_d(lambda) - c_p(lambda)));
        }
    }
    return {cpf <= 1e-10 && o3 <= 1e-9 && o2 <= 1e-9,
            fmt("500 spectra x d=2..8  |C_P-(d-1)C_F| %.2e (tol 1e-10)  |O3-C_P| %.2e  |O2-C_P| %.2e (tol 1e-9)", cpf,
                o3, o2)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"analytic-O3-O4", analytic_values},
        {"oracle-identity", oracle_identity},
        {"relative-entropy-attainment", relative_entropy_attainment},
        {"l2-attainment", l2_attainment},
        {"fourier-stationarity-circulant", stationarity},
        {"d3-search-trend", d3_trend},
        {"d4-violations", d4_violations},
        {"d5-violation", d5_violation},
        {"qubit-optimality", qubit_optimality},
        {"cp-cf-identities", identities},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  %-32s %s  [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
