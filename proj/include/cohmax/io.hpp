#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cohmax/analytic.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/linalg.hpp"
#include "cohmax/search.hpp"

namespace cohmax::io {

using json = nlohmann::json;

// A state is given either by its spectrum (diagonal state) or by a full matrix.
using StateInput = std::variant<Spectrum, DensityMatrix>;

DensityMatrix to_density_matrix(const StateInput& state);
// Descending eigenvalues of the state.
Spectrum spectrum_of(const StateInput& state);

// "0.5,0.3,0.2" -> {0.5, 0.3, 0.2}
std::vector<double> parse_number_list(std::string_view text);
// "2..6" or "4" -> {lo, hi}
std::pair<std::size_t, std::size_t> parse_dim_range(std::string_view text);

// Complex entries are two-element arrays [re, im], rows are arrays of entries.
json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const json& j, std::string_view field);

// {"spectrum": [...]} or {"matrix": [[[re, im], ...], ...]}; exactly one.
StateInput state_from_json(const json& j);
json state_to_json(const StateInput& state);

// Parses a file, reporting syntax errors with line and column.
json read_json_file(const std::filesystem::path& path);
StateInput load_state_file(const std::filesystem::path& path);

// {"unitary": [[[re, im], ...]], "seed": n, "stream": n}
json unitary_to_json(const UnitaryMatrix& u, std::optional<std::uint64_t> seed = std::nullopt,
                     std::optional<std::uint64_t> stream = std::nullopt);
UnitaryMatrix unitary_from_json(const json& j);
UnitaryMatrix load_unitary_file(const std::filesystem::path& path);
// Accepts "unitary" or "matrix" as the key; validated with is_hadamard.
HadamardMatrix load_hadamard_file(const std::filesystem::path& path);

// 17 significant digits, '.' separator, locale independent.
std::string format_double(double x);

// rank,value,violation
std::string top_values_csv(const SearchResult& result);
// samples,best_value,reference,gap
std::string checkpoints_csv(const SearchResult& result);
// Static scatter of ranked values with a dashed reference line.
std::string scatter_svg(const SearchResult& result, std::string_view title);

// Creates parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);
std::filesystem::path ensure_directory(const std::filesystem::path& dir);

// $COHMAX_OUT_DIR, falling back to ./cohmax-out
std::filesystem::path default_out_dir();

struct ExperimentConfig {
    std::optional<std::vector<double>> spectrum;
    std::optional<std::string> state_path;
    Measure measure = Measure::l1;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    unsigned workers = 1;
    std::string out_dir;
    LogBase base = LogBase::two;
    std::size_t top_k = 10;
    bool svg = false;
    // Defaults to the Fourier-basis value of the measure.
    std::optional<double> reference;
    std::vector<std::uint64_t> checkpoints;

    // Throws ParseError naming the violated constraint.
    void validate() const;
};

json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j);

json analytic_to_json(const AnalyticReport& r);
json search_to_json(const SearchResult& r);

struct ResultRecord {
    ExperimentConfig config;
    std::vector<double> spectrum;  // descending, as searched
    AnalyticReport analytic;
    SearchResult search;
    std::string timestamp;
    std::string version;
};

json record_to_json(const ResultRecord& r);
// Re-parses and revalidates: analytic fields must match a fresh
// computation within 1e-12, the best unitary must be unitary, and the
// search summary must be internally consistent. Throws ParseError.
ResultRecord record_from_json(const json& j);

std::string utc_timestamp();
std::string_view version();

}  // namespace cohmax::io
