#include <algorithm>
#include <cmath>

#include "cohmax/analytic.hpp"
#include "cohmax/commands.hpp"
#include "cohmax/errors.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/measures.hpp"
#include "cohmax/search.hpp"

namespace cohmax::cli {

namespace {

// Tracks the worst residual of one named check in one dimension.
class Check {
public:
    Check(std::string name, std::size_t dim, double tol) : name_(std::move(name)), dim_(dim), tol_(tol) {}

    void observe(double residual) {
        if (std::isnan(residual)) nan_ = true;
        worst_ = std::max(worst_, residual);
    }

    CheckResult result() const { return {name_, dim_, worst_, tol_, !nan_ && worst_ <= tol_}; }

private:
    std::string name_;
    std::size_t dim_;
    double tol_;
    double worst_ = 0.0;
    bool nan_ = false;
};

void theorem1(const VerifyArgs& a, std::size_t d, RngStream& rng, std::vector<CheckResult>& out) {
    Check uniform("uniform-diagonal", d, 1e-9);
    Check attains("c_r-attains-bound", d, 1e-9);
    Check l2("c_l2-attains-bound", d, 1e-10);
    const auto f = fourier_matrix(d);
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const DensityMatrix rho = random_density_matrix(d, rng);
        const Spectrum lambda = hermitian_eig(rho).spectrum;
        const UnitaryMatrix w = optimal_basis(rho, f);
        const auto report = coherence_in_basis(rho, w);
        for (double x : report.diagonal) uniform.observe(std::abs(x - inv_d));
        attains.observe(std::abs(report.c_r - cr_max(lambda)));
        l2.observe(std::abs(report.c_l2 - cl2_max(lambda)));
    }
    out.push_back(uniform.result());
    out.push_back(attains.result());
    out.push_back(l2.result());
}

void stationarity(const VerifyArgs& a, std::size_t d, RngStream& rng, std::vector<CheckResult>& out) {
    Check check("fourier-stationary", d, 1e-9);
    const auto f = fourier_matrix(d);
    for (std::size_t t = 0; t < a.trials; ++t) check.observe(stationarity_residual(random_spectrum(d, rng), f.unitary()));
    out.push_back(check.result());
}

void circulant(const VerifyArgs& a, std::size_t d, RngStream& rng, std::vector<CheckResult>& out) {
    Check check("fourier-circulant", d, kCirculantTol);
    const auto f = fourier_matrix(d);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const auto theta = ThetaMatrix::from_basis(random_spectrum(d, rng), f.unitary());
        check.observe(circulant_check(theta).max_deviation);
    }
    out.push_back(check.result());
}

void bounds(const VerifyArgs& a, std::size_t d, RngStream& rng, std::vector<CheckResult>& out) {
    Check cr("c_r-never-exceeds-bound", d, 1e-9);
    Check l2("c_l2-never-exceeds-bound", d, 1e-9);
    Check l1("c_l1-at-most-d-1", d, 1e-9);
    Check oracle("o_d-equals-fourier-l1", d, 1e-9);
    const auto f = fourier_matrix(d);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const Spectrum lambda = random_spectrum(d, rng);
        const MeasureEvaluator eval_r(lambda, Measure::r);
        const double bound_r = cr_max(lambda);
        const double bound_l2 = cl2_max(lambda);
        for (std::uint64_t s = 0; s < a.cue_samples; ++s) {
            const UnitaryMatrix u = sample_cue(d, rng);
            const ComplexMatrix theta = spectral_matrix(u.matrix(), lambda.values());
            cr.observe(eval_r(u.matrix()) - bound_r);
            l2.observe(l2_coherence(theta) - bound_l2);
            l1.observe(l1_coherence(theta) - static_cast<double>(d - 1));
        }
        const ComplexMatrix fourier_theta = spectral_matrix(f.matrix(), lambda.values());
        oracle.observe(std::abs(l1_coherence(fourier_theta) - o_d(lambda)));
    }
    out.push_back(cr.result());
    out.push_back(l2.result());
    out.push_back(l1.result());
    out.push_back(oracle.result());
}

void identities(const VerifyArgs& a, std::size_t d, RngStream& rng, std::vector<CheckResult>& out) {
    Check ratio("c_p-equals-(d-1)c_f", d, 1e-10);
    Check routes("c_f-spectral-equals-matrix", d, 1e-10);
    std::optional<Check> coincide;
    std::optional<Check> closed;
    if (d == 2 || d == 3) coincide.emplace("o_d-equals-c_p", d, 1e-9);
    if (d == 3) closed.emplace("o3-closed-form", d, 1e-9);
    if (d == 4) closed.emplace("o4-closed-form", d, 1e-9);
    for (std::size_t t = 0; t < a.trials; ++t) {
        const DensityMatrix rho = random_density_matrix(d, rng);
        const Spectrum lambda = hermitian_eig(rho).spectrum;
        ratio.observe(std::abs(c_p(lambda) - static_cast<double>(d - 1) * c_f(lambda)));
        routes.observe(std::abs(c_f(lambda) - c_f(rho)));
        if (coincide) coincide->observe(std::abs(o_d(lambda) - c_p(lambda)));
        if (d == 3) closed->observe(std::abs(o3_closed(lambda.values()) - o_d(lambda)));
        if (d == 4) closed->observe(std::abs(o4_closed(lambda.values()) - o_d(lambda)));
    }
    out.push_back(ratio.result());
    out.push_back(routes.result());
    if (coincide) out.push_back(coincide->result());
    if (closed) out.push_back(closed->result());
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

SuiteReport run_suite(const VerifyArgs& args) {
    using Runner = void (*)(const VerifyArgs&, std::size_t, RngStream&, std::vector<CheckResult>&);
    Runner runner = nullptr;
    if (args.suite == "theorem1") runner = theorem1;
    if (args.suite == "stationarity") runner = stationarity;
    if (args.suite == "circulant") runner = circulant;
    if (args.suite == "bounds") runner = bounds;
    if (args.suite == "identities") runner = identities;
    if (runner == nullptr) {
        throw ParseError("unknown verify suite '" + args.suite +
                         "'; expected theorem1, stationarity, circulant, bounds or identities");
    }
    if (args.dim_lo < 1 || args.dim_hi < args.dim_lo) throw ParseError("verify: invalid dimension range");

    SuiteReport report{args.suite, {}};
    for (std::size_t d = args.dim_lo; d <= args.dim_hi; ++d) {
        RngStream rng(args.seed, d);
        runner(args, d, rng, report.checks);
    }
    return report;
}

}  // namespace cohmax::cli
