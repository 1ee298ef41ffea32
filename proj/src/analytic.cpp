#include "cohmax/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "cohmax/errors.hpp"

namespace cohmax {

namespace {

constexpr double kTieTol = 1e-12;

double sqrt_clamped(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

void require_dim(std::span<const double> lambda, std::size_t d, const char* what) {
    if (lambda.size() != d) {
        throw DomainError(std::string(what) + ": needs exactly " + std::to_string(d) +
                          " eigenvalues, got " + std::to_string(lambda.size()));
    }
}

std::vector<double> reorder(std::span<const double> lambda, const std::vector<std::size_t>& perm) {
    std::vector<double> out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = lambda[perm[i]];
    return out;
}

}  // namespace

double cr_max(const Spectrum& lambda, LogBase base) {
    const double v = log_of(static_cast<double>(lambda.dim()), base) - shannon_entropy(lambda, base);
    return std::max(v, 0.0);
}

double cl2_max(const Spectrum& lambda) {
    return std::max(lambda.purity() - 1.0 / static_cast<double>(lambda.dim()), 0.0);
}

double o_d(std::span<const double> lambda) {
    const std::size_t d = lambda.size();
    if (d == 0) return 0.0;
    double mean = 0.0;
    for (double x : lambda) mean += x;
    mean /= static_cast<double>(d);
    double total = 0.0;
    for (std::size_t n = 1; n < d; ++n) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((n * k) % d) / static_cast<double>(d);
            s += (lambda[k] - mean) * Complex(std::cos(angle), std::sin(angle));
        }
        total += std::abs(s);
    }
    return total;
}

double o3_closed(std::span<const double> l) {
    require_dim(l, 3, "o3_closed");
    const double a = l[0] - l[1];
    const double b = l[0] - l[2];
    const double c = l[1] - l[2];
    return std::sqrt(2.0) * std::sqrt(a * a + b * b + c * c);
}

double o4_closed(std::span<const double> l) {
    require_dim(l, 4, "o4_closed");
    const double a = l[0] - l[2];
    const double b = l[1] - l[3];
    return 2.0 * std::sqrt(a * a + b * b) + std::abs(l[0] - l[1] + l[2] - l[3]);
}

PermutationMax o_d_tilde(const Spectrum& lambda, std::size_t cap) {
    const std::size_t d = lambda.dim();
    if (d > cap) {
        throw CapabilityError("o_d_tilde: exhaustive search is capped at d = " + std::to_string(cap) +
                              " (got d = " + std::to_string(d) + "); use the sampled-permutation mode");
    }
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    // Lexicographic enumeration; keep all values so ties resolve to the
    // first (smallest) permutation within tolerance of the maximum.
    std::vector<std::vector<std::size_t>> perms;
    std::vector<double> values;
    do {
        perms.push_back(perm);
        values.push_back(o_d(reorder(lambda.values(), perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));

    const double best = *std::max_element(values.begin(), values.end());
    std::size_t arg = 0;
    while (values[arg] < best - kTieTol) ++arg;
    return {best, perms[arg], values.size()};
}

PermutationMax o_d_tilde_sampled(const Spectrum& lambda, std::size_t samples, RngStream& rng) {
    const std::size_t d = lambda.dim();
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    PermutationMax best{o_d(lambda.values()), perm, 1};
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = d; i > 1; --i) {
            const auto j = static_cast<std::size_t>(rng.next_u64() % i);
            std::swap(perm[i - 1], perm[j]);
        }
        const double v = o_d(reorder(lambda.values(), perm));
        ++best.evaluated;
        const bool better = v > best.value + kTieTol;
        const bool tie = std::abs(v - best.value) <= kTieTol &&
                         std::lexicographical_compare(perm.begin(), perm.end(), best.permutation.begin(),
                                                      best.permutation.end());
        if (better) {
            best.value = v;
            best.permutation = perm;
        } else if (tie) {
            best.permutation = perm;
        }
    }
    return best;
}

double c_p(const Spectrum& lambda) {
    const double d = static_cast<double>(lambda.dim());
    return sqrt_clamped((d - 1.0) * (d * lambda.purity() - 1.0));
}

double c_f(const Spectrum& lambda) {
    const std::size_t d = lambda.dim();
    if (d < 2) return 0.0;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            const double diff = lambda[j] - lambda[k];
            s += diff * diff;
        }
    }
    return sqrt_clamped(s / (2.0 * static_cast<double>(d - 1)));
}

double c_f(const DensityMatrix& rho) {
    const auto d = static_cast<Eigen::Index>(rho.dim());
    if (d < 2) return 0.0;
    const ComplexMatrix shifted = rho.matrix() - ComplexMatrix::Identity(d, d) / static_cast<double>(d);
    return std::sqrt(static_cast<double>(d) / static_cast<double>(d - 1)) * shifted.norm();
}

AnalyticReport analytic_report(const Spectrum& lambda, const AnalyticOptions& options) {
    const Spectrum desc = lambda.sorted_descending();
    AnalyticReport r;
    r.c_r_max = cr_max(desc, options.base);
    r.c_l2_max = cl2_max(desc);
    r.o_d = o_d(desc);
    if (desc.dim() <= options.permutation_cap) {
        auto t = o_d_tilde(desc, options.permutation_cap);
        r.o_d_tilde = t.value;
        r.o_d_tilde_permutation = std::move(t.permutation);
        r.o_d_tilde_exhaustive = true;
    } else {
        RngStream rng(options.permutation_seed, 0);
        auto t = o_d_tilde_sampled(desc, options.permutation_samples, rng);
        r.o_d_tilde = t.value;
        r.o_d_tilde_permutation = std::move(t.permutation);
        r.o_d_tilde_exhaustive = false;
    }
    r.c_p = c_p(desc);
    r.c_f = c_f(desc);
    return r;
}

}  // namespace cohmax
