#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cohmax/linalg.hpp"
#include "cohmax/rng.hpp"

namespace cohmax {

enum class Measure { l1, r, l2 };

Measure parse_measure(std::string_view text);
std::string_view to_string(Measure m);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
// of diag(R) moved into Q.
UnitaryMatrix sample_cue(std::size_t d, RngStream& rng);

// Flat-Dirichlet random probability vector, sorted descending.
Spectrum random_spectrum(std::size_t d, RngStream& rng);
// U diag(λ) U^† with U Haar and λ from random_spectrum.
DensityMatrix random_density_matrix(std::size_t d, RngStream& rng);

// Evaluates a coherence measure on U Λ U^† for a fixed spectrum.
class MeasureEvaluator {
public:
    MeasureEvaluator(Spectrum lambda, Measure measure, LogBase base = LogBase::two);

    double operator()(const ComplexMatrix& u) const;
    const Spectrum& spectrum() const noexcept { return lambda_; }
    Measure measure() const noexcept { return measure_; }

private:
    Spectrum lambda_;
    Measure measure_;
    LogBase base_;
    double state_entropy_;
};

// Analytic value reached by the Fourier basis for the given measure:
// O_d (descending order) for l1, log d - S for r, Σλ^2 - 1/d for l2.
double fourier_reference(Measure measure, const Spectrum& lambda, LogBase base = LogBase::two);

struct ScoredSample {
    double value = 0.0;
    std::uint64_t index = 0;
};

struct Checkpoint {
    std::uint64_t samples = 0;
    double best_value = 0.0;
};

// Samples are drawn in fixed blocks; block b uses rng.child(b). Results are
// therefore identical for any worker count, and a run of N samples is a
// prefix of every longer run with the same key.
inline constexpr std::uint64_t kSearchBlockSize = 4096;

struct SearchOptions {
    Measure measure = Measure::l1;
    std::uint64_t samples = 1;
    // Violations are samples with value strictly above this.
    double reference = 0.0;
    std::size_t top_k = 10;
    unsigned workers = 1;
    LogBase base = LogBase::two;
    // Sample counts at which the running best is recorded.
    std::vector<std::uint64_t> checkpoints;
};

struct SearchResult {
    Measure measure = Measure::l1;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t samples = 0;
    double best_value = 0.0;
    std::uint64_t best_index = 0;
    UnitaryMatrix best_unitary = UnitaryMatrix::identity(1);
    double reference = 0.0;
    std::uint64_t violation_count = 0;
    // best_value - reference
    double margin = 0.0;
    // Descending by value, ties by sample index.
    std::vector<ScoredSample> top;
    std::vector<Checkpoint> checkpoints;
};

SearchResult random_search(const Spectrum& lambda, const SearchOptions& options, const RngStream& rng);

// Θ_ij = Σ_k λ_k U_ik U*_jk together with its inputs.
class ThetaMatrix {
public:
    static ThetaMatrix from_basis(const Spectrum& lambda, const UnitaryMatrix& u);
    // Validates Hermitian symmetry within 1e-12.
    static ThetaMatrix from_entries(ComplexMatrix entries, const Spectrum& lambda);

    const ComplexMatrix& entries() const noexcept { return entries_; }
    const Spectrum& spectrum() const noexcept { return lambda_; }
    std::size_t dim() const noexcept { return lambda_.dim(); }

private:
    ThetaMatrix(ComplexMatrix entries, Spectrum lambda) : entries_(std::move(entries)), lambda_(std::move(lambda)) {}

    ComplexMatrix entries_;
    Spectrum lambda_;
};

// Terms whose denominator |Θ| falls below this are dropped from the
// stationarity sums.
inline constexpr double kThetaZeroTol = 1e-12;

// max_{m,k} | Σ_j Θ_jm Θ_kj / |Θ_jm|  -  Σ_j Θ_kj Θ_jm / |Θ_kj| |
// Zero for bases that satisfy the first-order conditions of l1 maximisation.
// Vacuous (0) for the maximally mixed state, where every off-diagonal is 0.
double stationarity_residual(const Spectrum& lambda, const UnitaryMatrix& u);

inline constexpr double kCirculantTol = 1e-10;

struct CirculantCheck {
    bool circulant = false;
    // max of the three deviations below
    double max_deviation = 0.0;
    // max_ij |Θ_ij - Θ_{(i-j) mod d, 0}|
    double structure_deviation = 0.0;
    // max_n |Θ_n0 - (1/d) Σ_k λ_k ω^{nk}|
    double fourier_deviation = 0.0;
    // max_i |Θ_ii - 1/d|
    double diagonal_deviation = 0.0;
};

CirculantCheck circulant_check(const ThetaMatrix& theta, double tol = kCirculantTol);

struct RefineOptions {
    Measure measure = Measure::l1;
    std::uint64_t steps = 1000;
    double step_size = 0.05;
    // Consecutive rejections before the step is halved.
    std::uint64_t patience = 100;
    LogBase base = LogBase::two;
};

struct RefineResult {
    UnitaryMatrix unitary = UnitaryMatrix::identity(1);
    double initial_value = 0.0;
    double value = 0.0;
    std::uint64_t accepted = 0;
    double final_step_size = 0.0;
};

// Hill climbing: U <- exp(iεH) U for random Hermitian H (unit Frobenius
// norm), keeping only strict improvements of the measure of U Λ U^†.
RefineResult local_refine(const Spectrum& lambda, const UnitaryMatrix& start, const RefineOptions& options,
                          RngStream& rng);

// Gram-Schmidt (two passes) on the columns.
ComplexMatrix orthonormalize(const ComplexMatrix& m);

}  // namespace cohmax
