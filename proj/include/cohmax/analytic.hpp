#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cohmax/linalg.hpp"
#include "cohmax/rng.hpp"

namespace cohmax {

// Largest d for which o_d_tilde enumerates all d! orderings.
inline constexpr std::size_t kExhaustivePermutationCap = 8;

// log d - S(λ): the relative-entropy coherence reachable by the best basis.
double cr_max(const Spectrum& lambda, LogBase base = LogBase::two);

// Σ λ_i^2 - 1/d
double cl2_max(const Spectrum& lambda);

// l1 coherence of F_d diag(λ) F_d^† for λ in the given order:
//   Σ_{n=1}^{d-1} sqrt( Σ_i λ_i^2 + Σ_{k≠l} λ_k λ_l cos(2πn(k-l)/d) )
// evaluated as Σ_n |Σ_k (λ_k - 1/d) ω^{nk}|, which is exact near the uniform
// spectrum where the cosine form loses digits to cancellation.
double o_d(std::span<const double> lambda);
inline double o_d(const Spectrum& lambda) { return o_d(lambda.values()); }

// Closed forms for d = 3 and d = 4; DomainError on any other length.
double o3_closed(std::span<const double> lambda);
double o4_closed(std::span<const double> lambda);

struct PermutationMax {
    double value = 0.0;
    // Ordering that attains `value`: λ'_i = λ[permutation[i]].
    std::vector<std::size_t> permutation;
    // Number of orderings evaluated.
    std::size_t evaluated = 0;
};

// max over all orderings of o_d. Ties (within 1e-12) resolve to the
// lexicographically smallest permutation. CapabilityError above `cap`.
PermutationMax o_d_tilde(const Spectrum& lambda, std::size_t cap = kExhaustivePermutationCap);

// Lower estimate of o_d_tilde from the given order plus `samples` random
// shuffles.
PermutationMax o_d_tilde_sampled(const Spectrum& lambda, std::size_t samples, RngStream& rng);

// sqrt((d-1)(d tr ρ^2 - 1))
double c_p(const Spectrum& lambda);
// sqrt( Σ_{j,k} (λ_j - λ_k)^2 / (2(d-1)) )
double c_f(const Spectrum& lambda);
// sqrt(d/(d-1)) ||ρ - 1/d||_2, from the matrix itself.
double c_f(const DensityMatrix& rho);

struct AnalyticReport {
    double c_r_max = 0.0;
    double c_l2_max = 0.0;
    double o_d = 0.0;
    double o_d_tilde = 0.0;
    std::vector<std::size_t> o_d_tilde_permutation;
    bool o_d_tilde_exhaustive = true;
    double c_p = 0.0;
    double c_f = 0.0;
};

struct AnalyticOptions {
    LogBase base = LogBase::two;
    std::size_t permutation_cap = kExhaustivePermutationCap;
    // Used only above the cap.
    std::size_t permutation_samples = 10000;
    std::uint64_t permutation_seed = 0;
};

// o_d is evaluated on the descending ordering of `lambda`.
AnalyticReport analytic_report(const Spectrum& lambda, const AnalyticOptions& options = {});

}  // namespace cohmax
