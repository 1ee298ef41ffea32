#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cohmax/io.hpp"

namespace cohmax::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailure = 1,
    kVerificationFailure = 2,
    kIoFailure = 3,
};

struct StateArgs {
    std::optional<std::vector<double>> spectrum;
    std::optional<std::string> state_path;
};

io::StateInput resolve_state(const StateArgs& args);

// identity: computational basis; fourier: columns of F_d; eigen: eigenbasis
// of the state; optimal: V H^† (H = F_d unless a Hadamard file is given);
// file: unitary read from --basis-file.
enum class BasisChoice { identity, fourier, eigen, optimal, file };

BasisChoice parse_basis(std::string_view text);

struct CoherenceArgs {
    StateArgs state;
    BasisChoice basis = BasisChoice::identity;
    std::optional<std::string> basis_file;
    std::optional<std::string> hadamard_file;
    LogBase base = LogBase::two;
    std::string out_dir;
};

struct AnalyticArgs {
    StateArgs state;
    LogBase base = LogBase::two;
    std::string out_dir;
    std::size_t permutation_samples = 10000;
    std::uint64_t seed = 0;
};

struct VerifyArgs {
    std::string suite;
    std::size_t trials = 100;
    std::size_t dim_lo = 2;
    std::size_t dim_hi = 6;
    std::uint64_t seed = 0;
    // CUE samples per state for the bounds suite.
    std::uint64_t cue_samples = 1000;
};

struct ReproduceArgs {
    std::string preset;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_dir;
};

struct CheckResult {
    std::string name;
    std::size_t dim = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass() const;
};

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = {"theorem1", "stationarity", "circulant", "bounds", "identities"};
    return names;
}

// Throws ParseError for an unknown suite name.
SuiteReport run_suite(const VerifyArgs& args);

// Builds the record for a search (no files written).
io::ResultRecord run_search(const io::ExperimentConfig& config);

int cmd_coherence(const CoherenceArgs& args, std::ostream& out);
int cmd_analytic(const AnalyticArgs& args, std::ostream& out);
int cmd_search(const io::ExperimentConfig& config, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);
int cmd_reproduce(const ReproduceArgs& args, std::ostream& out);

// Maps library exceptions to exit codes; the message goes to `err`.
int run_guarded(const std::function<int()>& fn, std::ostream& err);

}  // namespace cohmax::cli
