#include "cohmax/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include <Eigen/QR>

#include "cohmax/analytic.hpp"
#include "cohmax/errors.hpp"
#include "cohmax/measures.hpp"

namespace cohmax {

Measure parse_measure(std::string_view text) {
    if (text == "l1") return Measure::l1;
    if (text == "r") return Measure::r;
    if (text == "l2") return Measure::l2;
    throw ParseError("measure must be one of l1, r, l2; got '" + std::string(text) + "'");
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::l1: return "l1";
        case Measure::r: return "r";
        case Measure::l2: return "l2";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// CUE sampling

namespace {

ComplexMatrix ginibre(std::size_t d, RngStream& rng) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix z(n, n);
    const double scale = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(i, j) = Complex(re * scale, im * scale);
        }
    }
    return z;
}

class CueSampler {
public:
    explicit CueSampler(std::size_t d) : d_(d), qr_(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) {}

    ComplexMatrix operator()(RngStream& rng) {
        qr_.compute(ginibre(d_, rng));
        ComplexMatrix q = qr_.householderQ();
        const auto& r = qr_.matrixQR();
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            const Complex rjj = r(j, j);
            const double mag = std::abs(rjj);
            if (mag > 0.0) q.col(j) *= rjj / mag;
        }
        return q;
    }

private:
    std::size_t d_;
    Eigen::HouseholderQR<ComplexMatrix> qr_;
};

}  // namespace

UnitaryMatrix sample_cue(std::size_t d, RngStream& rng) {
    if (d == 0) throw DomainError("sample_cue: dimension must be positive");
    CueSampler sampler(d);
    return UnitaryMatrix::assume_valid(sampler(rng));
}

Spectrum random_spectrum(std::size_t d, RngStream& rng) {
    if (d == 0) throw DomainError("random_spectrum: dimension must be positive");
    std::vector<double> w(d);
    double sum = 0.0;
    for (auto& x : w) {
        x = -std::log(rng.uniform_open_low());
        sum += x;
    }
    for (auto& x : w) x /= sum;
    return Spectrum::descending(std::move(w));
}

DensityMatrix random_density_matrix(std::size_t d, RngStream& rng) {
    const Spectrum lambda = random_spectrum(d, rng);
    const UnitaryMatrix u = sample_cue(d, rng);
    return DensityMatrix::assume_valid(spectral_matrix(u.matrix(), lambda.values()));
}

// ---------------------------------------------------------------------------
// Measures on U Λ U^†

MeasureEvaluator::MeasureEvaluator(Spectrum lambda, Measure measure, LogBase base)
    : lambda_(std::move(lambda)), measure_(measure), base_(base), state_entropy_(shannon_entropy(lambda_, base)) {}

double MeasureEvaluator::operator()(const ComplexMatrix& u) const {
    const ComplexMatrix theta = spectral_matrix(u, lambda_.values());
    switch (measure_) {
        case Measure::l1: return l1_coherence(theta);
        case Measure::l2: return l2_coherence(theta);
        case Measure::r: return relative_entropy_coherence(theta, state_entropy_, base_);
    }
    return 0.0;
}

double fourier_reference(Measure measure, const Spectrum& lambda, LogBase base) {
    switch (measure) {
        case Measure::l1: return o_d(lambda.sorted_descending());
        case Measure::r: return cr_max(lambda, base);
        case Measure::l2: return cl2_max(lambda);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Random search

namespace {

bool ranks_before(const ScoredSample& a, const ScoredSample& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.index < b.index;
}

struct BlockResult {
    double best_value = -std::numeric_limits<double>::infinity();
    std::uint64_t best_index = 0;
    ComplexMatrix best_u;
    std::uint64_t violations = 0;
    std::vector<ScoredSample> top;
    // (checkpoint slot, running best within this block up to that sample)
    std::vector<std::pair<std::size_t, double>> partial;
};

BlockResult run_block(std::uint64_t block, std::uint64_t total, const MeasureEvaluator& eval,
                      const SearchOptions& options, const std::vector<std::uint64_t>& checkpoints,
                      const RngStream& base_rng) {
    BlockResult out;
    RngStream rng = base_rng.child(block);
    CueSampler sampler(eval.spectrum().dim());
    const std::uint64_t begin = block * kSearchBlockSize;
    const std::uint64_t end = std::min(total, begin + kSearchBlockSize);
    auto cp = std::lower_bound(checkpoints.begin(), checkpoints.end(), begin + 1);

    for (std::uint64_t idx = begin; idx < end; ++idx) {
        ComplexMatrix u = sampler(rng);
        const double v = eval(u);
        if (v > options.reference) ++out.violations;
        if (v > out.best_value) {
            out.best_value = v;
            out.best_index = idx;
            out.best_u = std::move(u);
        }
        if (options.top_k > 0) {
            const ScoredSample s{v, idx};
            if (out.top.size() < options.top_k) {
                out.top.push_back(s);
                std::push_heap(out.top.begin(), out.top.end(), ranks_before);
            } else if (ranks_before(s, out.top.front())) {
                std::pop_heap(out.top.begin(), out.top.end(), ranks_before);
                out.top.back() = s;
                std::push_heap(out.top.begin(), out.top.end(), ranks_before);
            }
        }
        while (cp != checkpoints.end() && *cp == idx + 1) {
            out.partial.emplace_back(static_cast<std::size_t>(cp - checkpoints.begin()), out.best_value);
            ++cp;
        }
    }
    return out;
}

}  // namespace

SearchResult random_search(const Spectrum& lambda, const SearchOptions& options, const RngStream& rng) {
    if (options.samples == 0) throw DomainError("random_search: samples must be at least 1");
    const MeasureEvaluator eval(lambda, options.measure, options.base);

    std::vector<std::uint64_t> checkpoints;
    for (auto c : options.checkpoints) {
        if (c >= 1 && c <= options.samples) checkpoints.push_back(c);
    }
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

    const std::uint64_t n_blocks = (options.samples + kSearchBlockSize - 1) / kSearchBlockSize;
    std::vector<BlockResult> blocks(static_cast<std::size_t>(n_blocks));
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t b = next++; b < n_blocks; b = next++) {
            blocks[static_cast<std::size_t>(b)] = run_block(b, options.samples, eval, options, checkpoints, rng);
        }
    };
    const unsigned n_workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(options.workers == 0 ? 1 : options.workers, 1, n_blocks));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    }

    SearchResult result;
    result.measure = options.measure;
    result.seed = rng.seed();
    result.stream = rng.stream_id();
    result.samples = options.samples;
    result.reference = options.reference;
    result.best_value = -std::numeric_limits<double>::infinity();
    result.checkpoints.resize(checkpoints.size());
    for (std::size_t i = 0; i < checkpoints.size(); ++i) result.checkpoints[i].samples = checkpoints[i];

    const ComplexMatrix* best_u = nullptr;
    for (auto& blk : blocks) {
        for (const auto& [slot, partial_best] : blk.partial) {
            result.checkpoints[slot].best_value = std::max(result.best_value, partial_best);
        }
        if (blk.best_value > result.best_value) {
            result.best_value = blk.best_value;
            result.best_index = blk.best_index;
            best_u = &blk.best_u;
        }
        result.violation_count += blk.violations;
        result.top.insert(result.top.end(), blk.top.begin(), blk.top.end());
    }
    std::sort(result.top.begin(), result.top.end(), ranks_before);
    if (result.top.size() > options.top_k) result.top.resize(options.top_k);
    result.best_unitary = UnitaryMatrix::assume_valid(*best_u);
    result.margin = result.best_value - result.reference;
    return result;
}

// ---------------------------------------------------------------------------
// Θ, stationarity, circulant structure

ThetaMatrix ThetaMatrix::from_basis(const Spectrum& lambda, const UnitaryMatrix& u) {
    if (u.dim() != lambda.dim()) throw ShapeError("theta: spectrum and basis dimensions differ");
    return ThetaMatrix(spectral_matrix(u.matrix(), lambda.values()), lambda);
}

ThetaMatrix ThetaMatrix::from_entries(ComplexMatrix entries, const Spectrum& lambda) {
    const auto d = static_cast<Eigen::Index>(lambda.dim());
    if (entries.rows() != d || entries.cols() != d) throw ShapeError("theta: entries do not match spectrum length");
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (std::abs(entries(i, j) - std::conj(entries(j, i))) > 1e-12) {
                throw InvalidStateError("theta: entries are not Hermitian-symmetric");
            }
        }
    }
    return ThetaMatrix(std::move(entries), lambda);
}

double stationarity_residual(const Spectrum& lambda, const UnitaryMatrix& u) {
    const auto theta = ThetaMatrix::from_basis(lambda, u);
    const ComplexMatrix& t = theta.entries();
    const Eigen::Index d = t.rows();
    double residual = 0.0;
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index k = 0; k < d; ++k) {
            Complex lhs = 0.0;
            Complex rhs = 0.0;
            for (Eigen::Index j = 0; j < d; ++j) {
                const double a_jm = std::abs(t(j, m));
                const double a_kj = std::abs(t(k, j));
                if (a_jm >= kThetaZeroTol) lhs += t(j, m) * t(k, j) / a_jm;
                if (a_kj >= kThetaZeroTol) rhs += t(k, j) * t(j, m) / a_kj;
            }
            residual = std::max(residual, std::abs(lhs - rhs));
        }
    }
    return residual;
}

CirculantCheck circulant_check(const ThetaMatrix& theta, double tol) {
    const ComplexMatrix& t = theta.entries();
    const auto d = static_cast<Eigen::Index>(theta.dim());
    const double inv_d = 1.0 / static_cast<double>(d);
    CirculantCheck c;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const Eigen::Index n = ((i - j) % d + d) % d;
            c.structure_deviation = std::max(c.structure_deviation, std::abs(t(i, j) - t(n, 0)));
        }
        c.diagonal_deviation = std::max(c.diagonal_deviation, std::abs(t(i, i) - inv_d));
    }
    for (Eigen::Index n = 0; n < d; ++n) {
        Complex expected = 0.0;
        for (Eigen::Index k = 0; k < d; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((n * k) % d) * inv_d;
            expected += theta.spectrum()[static_cast<std::size_t>(k)] * Complex(std::cos(angle), std::sin(angle));
        }
        c.fourier_deviation = std::max(c.fourier_deviation, std::abs(t(n, 0) - expected * inv_d));
    }
    c.max_deviation = std::max({c.structure_deviation, c.fourier_deviation, c.diagonal_deviation});
    c.circulant = c.max_deviation <= tol;
    return c;
}

// ---------------------------------------------------------------------------
// Local refinement

ComplexMatrix orthonormalize(const ComplexMatrix& m) {
    ComplexMatrix q = m;
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            for (Eigen::Index i = 0; i < j; ++i) {
                const Complex proj = q.col(i).dot(q.col(j));
                q.col(j) -= proj * q.col(i);
            }
            const double n = q.col(j).norm();
            if (!(n > 0.0)) throw NumericalError("orthonormalize: linearly dependent columns");
            q.col(j) /= n;
        }
    }
    return q;
}

namespace {

ComplexMatrix random_rotation(std::size_t d, double step, RngStream& rng) {
    const ComplexMatrix g = ginibre(d, rng);
    ComplexMatrix h = 0.5 * (g + g.adjoint());
    const double norm = h.norm();
    if (norm > 0.0) h /= norm;
    const auto eig = jacobi_eigensolve(h);
    const auto n = static_cast<Eigen::Index>(d);
    ComplexVector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double angle = step * eig.values(i);
        phases(i) = Complex(std::cos(angle), std::sin(angle));
    }
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

RefineResult local_refine(const Spectrum& lambda, const UnitaryMatrix& start, const RefineOptions& options,
                          RngStream& rng) {
    if (start.dim() != lambda.dim()) throw ShapeError("local_refine: spectrum and basis dimensions differ");
    const MeasureEvaluator eval(lambda, options.measure, options.base);

    RefineResult out;
    ComplexMatrix current = start.matrix();
    double value = eval(current);
    out.initial_value = value;
    double step = options.step_size;
    std::uint64_t rejections = 0;

    for (std::uint64_t s = 0; s < options.steps; ++s) {
        ComplexMatrix candidate = orthonormalize(random_rotation(lambda.dim(), step, rng) * current);
        const double v = eval(candidate);
        if (v > value) {
            value = v;
            current = std::move(candidate);
            ++out.accepted;
            rejections = 0;
        } else if (++rejections >= options.patience) {
            step *= 0.5;
            rejections = 0;
        }
    }
    out.unitary = UnitaryMatrix::assume_valid(std::move(current));
    out.value = value;
    out.final_step_size = step;
    return out;
}

}  // namespace cohmax
