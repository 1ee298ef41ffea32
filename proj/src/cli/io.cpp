#include "cohmax/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cohmax/errors.hpp"

#ifndef COHMAX_VERSION
#define COHMAX_VERSION "0.0.0"
#endif

namespace cohmax::io {

namespace {

constexpr double kRecordTol = 1e-12;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError(std::string(what) + ": empty number");
    // strtod is locale dependent only for the decimal point; the "C" locale
    // is the default for command-line programs.
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(v)) {
        throw ParseError(std::string(what) + ": not a finite number: '" + t + "'");
    }
    return v;
}

std::size_t parse_size(std::string_view text, std::string_view what) {
    const std::string t = trim(text);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ParseError(std::string(what) + ": not a non-negative integer: '" + t + "'");
    }
    return v;
}

std::string fixed2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

template <typename T>
T get_field(const json& j, const char* key, std::string_view ctx) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string(ctx) + "." + key + ": " + e.what());
    }
}

void require_close(double stored, double fresh, const char* field) {
    if (!(std::abs(stored - fresh) <= kRecordTol)) {
        throw ParseError(std::string("record: ") + field + " = " + format_double(stored) +
                         " does not match recomputed " + format_double(fresh));
    }
}

}  // namespace

// ---------------------------------------------------------------------------

DensityMatrix to_density_matrix(const StateInput& state) {
    if (const auto* s = std::get_if<Spectrum>(&state)) return DensityMatrix::diagonal(*s);
    return std::get<DensityMatrix>(state);
}

Spectrum spectrum_of(const StateInput& state) {
    if (const auto* s = std::get_if<Spectrum>(&state)) return s->sorted_descending();
    return hermitian_eig(std::get<DensityMatrix>(state)).spectrum;
}

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_double(piece, "number list"));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::pair<std::size_t, std::size_t> parse_dim_range(std::string_view text) {
    const auto dots = text.find("..");
    std::size_t lo, hi;
    if (dots == std::string_view::npos) {
        lo = hi = parse_size(text, "dimension range");
    } else {
        lo = parse_size(text.substr(0, dots), "dimension range");
        hi = parse_size(text.substr(dots + 2), "dimension range");
    }
    if (lo < 1 || hi < lo) throw ParseError("dimension range: expected 1 <= lo <= hi, got '" + std::string(text) + "'");
    return {lo, hi};
}

json complex_matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix complex_matrix_from_json(const json& j, std::string_view field) {
    const std::string f(field);
    if (!j.is_array() || j.empty()) throw ParseError(f + ": expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        const std::string where = f + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError(where + ": expected a row of " + std::to_string(n) + " entries (matrix must be square)");
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto& z = row[static_cast<std::size_t>(k)];
            const std::string at = where + "[" + std::to_string(k) + "]";
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw ParseError(at + ": expected [re, im]");
            }
            m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return m;
}

StateInput state_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("state: expected a JSON object");
    const bool has_spectrum = j.contains("spectrum");
    const bool has_matrix = j.contains("matrix");
    if (has_spectrum == has_matrix) {
        throw ParseError("state: exactly one of \"spectrum\" or \"matrix\" must be present");
    }
    if (has_spectrum) {
        const auto& s = j["spectrum"];
        if (!s.is_array() || s.empty()) throw ParseError("state.spectrum: expected a non-empty array of numbers");
        std::vector<double> values;
        for (const auto& x : s) {
            if (!x.is_number()) throw ParseError("state.spectrum: expected numbers");
            values.push_back(x.get<double>());
        }
        return Spectrum::in_order(std::move(values));
    }
    return DensityMatrix::from_matrix(complex_matrix_from_json(j["matrix"], "state.matrix"));
}

json state_to_json(const StateInput& state) {
    if (const auto* s = std::get_if<Spectrum>(&state)) {
        return json{{"spectrum", std::vector<double>(s->values().begin(), s->values().end())}};
    }
    return json{{"matrix", complex_matrix_to_json(std::get<DensityMatrix>(state).matrix())}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": JSON syntax error: " + e.what());
    }
}

StateInput load_state_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        return state_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json unitary_to_json(const UnitaryMatrix& u, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> stream) {
    json j{{"unitary", complex_matrix_to_json(u.matrix())}};
    if (seed) j["seed"] = *seed;
    if (stream) j["stream"] = *stream;
    return j;
}

UnitaryMatrix unitary_from_json(const json& j) {
    if (!j.is_object() || !j.contains("unitary")) throw ParseError("unitary: expected an object with \"unitary\"");
    return UnitaryMatrix::from_matrix(complex_matrix_from_json(j["unitary"], "unitary"));
}

UnitaryMatrix load_unitary_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    try {
        return unitary_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

HadamardMatrix load_hadamard_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    const char* key = j.is_object() && j.contains("unitary") ? "unitary" : "matrix";
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(path.string() + ": expected an object with \"unitary\" or \"matrix\"");
    }
    return HadamardMatrix::from_matrix(complex_matrix_from_json(j[key], key));
}

// ---------------------------------------------------------------------------

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string top_values_csv(const SearchResult& result) {
    std::string out = "rank,value,violation\r\n";
    for (std::size_t i = 0; i < result.top.size(); ++i) {
        const auto& s = result.top[i];
        out += std::to_string(i + 1) + "," + format_double(s.value) + "," + (s.value > result.reference ? "1" : "0") +
               "\r\n";
    }
    return out;
}

std::string checkpoints_csv(const SearchResult& result) {
    std::string out = "samples,best_value,reference,gap\r\n";
    for (const auto& c : result.checkpoints) {
        out += std::to_string(c.samples) + "," + format_double(c.best_value) + "," + format_double(result.reference) +
               "," + format_double(result.reference - c.best_value) + "\r\n";
    }
    return out;
}

std::string scatter_svg(const SearchResult& result, std::string_view title) {
    constexpr double width = 640, height = 400, left = 80, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double lo = result.reference, hi = result.reference;
    for (const auto& s : result.top) {
        lo = std::min(lo, s.value);
        hi = std::max(hi, s.value);
    }
    const double pad = std::max((hi - lo) * 0.1, 1e-6);
    lo -= pad;
    hi += pad;
    const std::size_t n = std::max<std::size_t>(result.top.size(), 1);
    auto x_of = [&](std::size_t rank) {
        return left + plot_w * (n == 1 ? 0.5 : static_cast<double>(rank - 1) / static_cast<double>(n - 1));
    };
    auto y_of = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << fixed2(width / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"14\">"
       << title << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
       << top + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
       << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        char label[32];
        std::snprintf(label, sizeof label, "%.6f", v);
        os << "<text x=\"" << left - 6 << "\" y=\"" << fixed2(y_of(v) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << label << "</text>\n";
    }
    os << "<text x=\"" << fixed2(left + plot_w / 2) << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">rank</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << fixed2(y_of(result.reference)) << "\" x2=\"" << left + plot_w
       << "\" y2=\"" << fixed2(y_of(result.reference))
       << "\" stroke=\"red\" stroke-dasharray=\"6,4\" stroke-width=\"1.5\"/>\n";
    for (std::size_t i = 0; i < result.top.size(); ++i) {
        const auto& s = result.top[i];
        os << "<circle cx=\"" << fixed2(x_of(i + 1)) << "\" cy=\"" << fixed2(y_of(s.value)) << "\" r=\"4\" fill=\""
           << (s.value > result.reference ? "crimson" : "steelblue") << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) ensure_directory(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::filesystem::path ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));
    }
    return dir;
}

std::filesystem::path default_out_dir() {
    if (const char* env = std::getenv("COHMAX_OUT_DIR"); env != nullptr && *env != '\0') return env;
    return "cohmax-out";
}

// ---------------------------------------------------------------------------
// Experiment configuration

void ExperimentConfig::validate() const {
    if (spectrum.has_value() == state_path.has_value()) {
        throw ParseError("config: exactly one of a spectrum or a state file must be given");
    }
    if (samples < 1) throw ParseError("config: sample count must be at least 1");
    if (top_k < 1) throw ParseError("config: top-k must be at least 1");
    if (workers < 1) throw ParseError("config: worker count must be at least 1");
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    if (c.spectrum) {
        j["spectrum"] = *c.spectrum;
        j["dimension"] = c.spectrum->size();
    }
    if (c.state_path) j["state"] = *c.state_path;
    j["measure"] = std::string(to_string(c.measure));
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["stream"] = c.stream;
    j["workers"] = c.workers;
    j["out"] = c.out_dir;
    j["log_base"] = std::string(to_string(c.base));
    j["top_k"] = c.top_k;
    j["svg"] = c.svg;
    if (c.reference) j["reference"] = *c.reference;
    if (!c.checkpoints.empty()) j["checkpoints"] = c.checkpoints;
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    static const std::vector<std::string> known = {"spectrum", "dimension", "state",  "measure", "samples",
                                                   "seed",     "stream",    "workers", "out",    "log_base",
                                                   "top_k",    "svg",       "reference", "checkpoints"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ParseError("config: unknown field \"" + key + "\"");
        }
    }
    ExperimentConfig c;
    if (j.contains("spectrum")) c.spectrum = get_field<std::vector<double>>(j, "spectrum", "config");
    if (j.contains("state")) c.state_path = get_field<std::string>(j, "state", "config");
    if (j.contains("measure")) c.measure = parse_measure(get_field<std::string>(j, "measure", "config"));
    if (j.contains("samples")) c.samples = get_field<std::uint64_t>(j, "samples", "config");
    if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", "config");
    if (j.contains("stream")) c.stream = get_field<std::uint64_t>(j, "stream", "config");
    if (j.contains("workers")) c.workers = get_field<unsigned>(j, "workers", "config");
    if (j.contains("out")) c.out_dir = get_field<std::string>(j, "out", "config");
    if (j.contains("log_base")) c.base = parse_log_base(get_field<std::string>(j, "log_base", "config"));
    if (j.contains("top_k")) c.top_k = get_field<std::size_t>(j, "top_k", "config");
    if (j.contains("svg")) c.svg = get_field<bool>(j, "svg", "config");
    if (j.contains("reference")) c.reference = get_field<double>(j, "reference", "config");
    if (j.contains("checkpoints")) c.checkpoints = get_field<std::vector<std::uint64_t>>(j, "checkpoints", "config");
    if (j.contains("dimension") && c.spectrum &&
        get_field<std::size_t>(j, "dimension", "config") != c.spectrum->size()) {
        throw ParseError("config: dimension does not match spectrum length");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Result records

json analytic_to_json(const AnalyticReport& r) {
    return json{{"o_d", r.o_d},
                {"o_d_tilde", r.o_d_tilde},
                {"o_d_tilde_permutation", r.o_d_tilde_permutation},
                {"o_d_tilde_exhaustive", r.o_d_tilde_exhaustive},
                {"c_r_max", r.c_r_max},
                {"c_l2_max", r.c_l2_max},
                {"c_p", r.c_p},
                {"c_f", r.c_f}};
}

json search_to_json(const SearchResult& r) {
    json top = json::array();
    for (std::size_t i = 0; i < r.top.size(); ++i) {
        top.push_back({{"rank", i + 1}, {"value", r.top[i].value}, {"index", r.top[i].index}});
    }
    json cps = json::array();
    for (const auto& c : r.checkpoints) cps.push_back({{"samples", c.samples}, {"best_value", c.best_value}});
    return json{{"measure", std::string(to_string(r.measure))},
                {"seed", r.seed},
                {"stream", r.stream},
                {"samples", r.samples},
                {"best_value", r.best_value},
                {"best_index", r.best_index},
                {"reference", r.reference},
                {"margin", r.margin},
                {"violation_count", r.violation_count},
                {"top", std::move(top)},
                {"checkpoints", std::move(cps)},
                {"best_unitary", unitary_to_json(r.best_unitary, r.seed, r.stream)}};
}

json record_to_json(const ResultRecord& r) {
    return json{{"config", config_to_json(r.config)},
                {"spectrum", r.spectrum},
                {"analytic", analytic_to_json(r.analytic)},
                {"search", search_to_json(r.search)},
                {"metadata", {{"timestamp", r.timestamp}, {"version", r.version}}}};
}

ResultRecord record_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("record: expected a JSON object");
    for (const char* key : {"config", "spectrum", "analytic", "search", "metadata"}) {
        if (!j.contains(key)) throw ParseError(std::string("record: missing \"") + key + "\"");
    }
    ResultRecord r;
    r.config = config_from_json(j["config"]);
    r.spectrum = get_field<std::vector<double>>(j, "spectrum", "record");
    r.timestamp = get_field<std::string>(j["metadata"], "timestamp", "record.metadata");
    r.version = get_field<std::string>(j["metadata"], "version", "record.metadata");

    const Spectrum lambda = Spectrum::descending(r.spectrum);
    AnalyticOptions opts;
    opts.base = r.config.base;
    const AnalyticReport fresh = analytic_report(lambda, opts);
    const auto& a = j["analytic"];
    r.analytic.o_d = get_field<double>(a, "o_d", "record.analytic");
    r.analytic.o_d_tilde = get_field<double>(a, "o_d_tilde", "record.analytic");
    r.analytic.o_d_tilde_permutation =
        get_field<std::vector<std::size_t>>(a, "o_d_tilde_permutation", "record.analytic");
    r.analytic.o_d_tilde_exhaustive = get_field<bool>(a, "o_d_tilde_exhaustive", "record.analytic");
    r.analytic.c_r_max = get_field<double>(a, "c_r_max", "record.analytic");
    r.analytic.c_l2_max = get_field<double>(a, "c_l2_max", "record.analytic");
    r.analytic.c_p = get_field<double>(a, "c_p", "record.analytic");
    r.analytic.c_f = get_field<double>(a, "c_f", "record.analytic");
    require_close(r.analytic.o_d, fresh.o_d, "o_d");
    require_close(r.analytic.o_d_tilde, fresh.o_d_tilde, "o_d_tilde");
    require_close(r.analytic.c_r_max, fresh.c_r_max, "c_r_max");
    require_close(r.analytic.c_l2_max, fresh.c_l2_max, "c_l2_max");
    require_close(r.analytic.c_p, fresh.c_p, "c_p");
    require_close(r.analytic.c_f, fresh.c_f, "c_f");

    const auto& s = j["search"];
    auto& sr = r.search;
    sr.measure = parse_measure(get_field<std::string>(s, "measure", "record.search"));
    sr.seed = get_field<std::uint64_t>(s, "seed", "record.search");
    sr.stream = get_field<std::uint64_t>(s, "stream", "record.search");
    sr.samples = get_field<std::uint64_t>(s, "samples", "record.search");
    sr.best_value = get_field<double>(s, "best_value", "record.search");
    sr.best_index = get_field<std::uint64_t>(s, "best_index", "record.search");
    sr.reference = get_field<double>(s, "reference", "record.search");
    sr.margin = get_field<double>(s, "margin", "record.search");
    sr.violation_count = get_field<std::uint64_t>(s, "violation_count", "record.search");
    for (const auto& t : s.at("top")) {
        sr.top.push_back({get_field<double>(t, "value", "record.search.top"),
                          get_field<std::uint64_t>(t, "index", "record.search.top")});
    }
    for (const auto& c : s.at("checkpoints")) {
        sr.checkpoints.push_back({get_field<std::uint64_t>(c, "samples", "record.search.checkpoints"),
                                  get_field<double>(c, "best_value", "record.search.checkpoints")});
    }
    try {
        sr.best_unitary = unitary_from_json(s.at("best_unitary"));
    } catch (const InvalidStateError& e) {
        throw ParseError(std::string("record.search.best_unitary: ") + e.what());
    }

    if (sr.best_unitary.dim() != lambda.dim()) throw ParseError("record: best unitary dimension mismatch");
    if (!sr.top.empty() && sr.top.front().value != sr.best_value) {
        throw ParseError("record: best_value differs from the top-ranked value");
    }
    for (std::size_t i = 1; i < sr.top.size(); ++i) {
        if (sr.top[i].value > sr.top[i - 1].value) throw ParseError("record: top values not descending");
    }
    const auto above = static_cast<std::uint64_t>(std::count_if(
        sr.top.begin(), sr.top.end(), [&](const ScoredSample& x) { return x.value > sr.reference; }));
    if (above > sr.violation_count || (sr.violation_count < sr.top.size() && above != sr.violation_count)) {
        throw ParseError("record: violation_count inconsistent with top values");
    }
    require_close(sr.margin, sr.best_value - sr.reference, "search.margin");
    const MeasureEvaluator eval(lambda, sr.measure, r.config.base);
    require_close(sr.best_value, eval(sr.best_unitary.matrix()), "search.best_value");
    return r;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string_view version() { return COHMAX_VERSION; }

}  // namespace cohmax::io
