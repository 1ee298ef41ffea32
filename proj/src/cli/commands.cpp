#include "cohmax/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "cohmax/analytic.hpp"
#include "cohmax/errors.hpp"
#include "cohmax/hadamard.hpp"
#include "cohmax/measures.hpp"
#include "cohmax/search.hpp"

namespace cohmax::cli {

namespace {

std::filesystem::path out_dir_or_default(const std::string& dir) {
    return dir.empty() ? io::default_out_dir() : std::filesystem::path(dir);
}

std::string permutation_text(const std::vector<std::size_t>& perm) {
    std::string s = "(";
    for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i]);
    return s + ")";
}

std::string spectrum_text(std::span<const double> v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

void print_search_summary(const io::ResultRecord& rec, std::ostream& out) {
    const auto& s = rec.search;
    out << std::setprecision(9);
    out << "measure          " << to_string(s.measure) << "\n";
    out << "spectrum         " << spectrum_text(rec.spectrum) << "\n";
    out << "samples          " << s.samples << " (seed " << s.seed << ", stream " << s.stream << ")\n";
    out << "reference        " << s.reference << "\n";
    out << "best value       " << s.best_value << " (sample " << s.best_index << ")\n";
    out << "margin           " << s.margin << "\n";
    out << "violations       " << s.violation_count << "\n";
    out << "top values\n";
    for (std::size_t i = 0; i < s.top.size(); ++i) {
        out << "  " << std::setw(3) << i + 1 << "  " << s.top[i].value << (s.top[i].value > s.reference ? "  *" : "")
            << "\n";
    }
}

void write_search_outputs(const io::ResultRecord& rec, const std::filesystem::path& dir, bool svg,
                          std::string_view stem, std::ostream& out) {
    io::ensure_directory(dir);
    const auto json_path = dir / (std::string(stem) + ".json");
    const auto csv_path = dir / (std::string(stem) + "_top.csv");
    io::write_text_file(json_path, io::record_to_json(rec).dump(2) + "\n");
    io::write_text_file(csv_path, io::top_values_csv(rec.search));
    out << "wrote " << json_path.string() << "\n";
    out << "wrote " << csv_path.string() << "\n";
    if (svg) {
        const auto svg_path = dir / (std::string(stem) + ".svg");
        const std::string title = std::string("top ") + std::to_string(rec.search.top.size()) + " " +
                                  std::string(to_string(rec.search.measure)) + " values, " +
                                  std::to_string(rec.search.samples) + " samples";
        io::write_text_file(svg_path, io::scatter_svg(rec.search, title));
        out << "wrote " << svg_path.string() << "\n";
    }
}

}  // namespace

io::StateInput resolve_state(const StateArgs& args) {
    if (args.spectrum.has_value() == args.state_path.has_value()) {
        throw ParseError("exactly one of --spectrum or --state must be given");
    }
    if (args.spectrum) return Spectrum::in_order(*args.spectrum);
    return io::load_state_file(*args.state_path);
}

BasisChoice parse_basis(std::string_view text) {
    if (text == "identity") return BasisChoice::identity;
    if (text == "fourier") return BasisChoice::fourier;
    if (text == "eigen") return BasisChoice::eigen;
    if (text == "optimal") return BasisChoice::optimal;
    if (text == "file") return BasisChoice::file;
    throw ParseError("basis must be one of identity, fourier, eigen, optimal, file; got '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

int cmd_coherence(const CoherenceArgs& args, std::ostream& out) {
    const auto state = resolve_state(args.state);
    const DensityMatrix rho = io::to_density_matrix(state);
    const std::size_t d = rho.dim();

    UnitaryMatrix basis = UnitaryMatrix::identity(d);
    std::string basis_name;
    switch (args.basis) {
        case BasisChoice::identity:
            basis_name = "identity";
            break;
        case BasisChoice::fourier:
            basis = fourier_matrix(d).unitary();
            basis_name = "fourier";
            break;
        case BasisChoice::eigen:
            basis = hermitian_eig(rho).vectors;
            basis_name = "eigen";
            break;
        case BasisChoice::optimal: {
            const HadamardMatrix h =
                args.hadamard_file ? io::load_hadamard_file(*args.hadamard_file) : fourier_matrix(d);
            basis = optimal_basis(rho, h);
            basis_name = args.hadamard_file ? "optimal(" + *args.hadamard_file + ")" : "optimal(fourier)";
            break;
        }
        case BasisChoice::file:
            if (!args.basis_file) throw ParseError("--basis file requires --basis-file <path>");
            basis = io::load_unitary_file(*args.basis_file);
            basis_name = "file(" + *args.basis_file + ")";
            break;
    }
    const CoherenceReport report = coherence_in_basis(rho, basis, args.base);

    out << std::setprecision(9);
    out << "dimension  " << d << "\n";
    out << "basis      " << basis_name << "\n";
    out << "C_R        " << report.c_r << (args.base == LogBase::two ? " bits" : " nats") << "\n";
    out << "C_l1       " << report.c_l1 << "\n";
    out << "C_l2       " << report.c_l2 << "\n";
    out << "diagonal   " << spectrum_text(report.diagonal) << "\n";

    const io::json j{{"dimension", d},
                     {"basis", basis_name},
                     {"log_base", std::string(to_string(args.base))},
                     {"c_r", report.c_r},
                     {"c_l1", report.c_l1},
                     {"c_l2", report.c_l2},
                     {"diagonal", report.diagonal},
                     {"state", io::state_to_json(state)},
                     {"unitary", io::complex_matrix_to_json(basis.matrix())}};
    const auto path = out_dir_or_default(args.out_dir) / "coherence.json";
    io::write_text_file(path, j.dump(2) + "\n");
    out << "wrote " << path.string() << "\n";
    return kOk;
}

int cmd_analytic(const AnalyticArgs& args, std::ostream& out) {
    const auto state = resolve_state(args.state);
    const Spectrum lambda = io::spectrum_of(state);
    AnalyticOptions opts;
    opts.base = args.base;
    opts.permutation_samples = args.permutation_samples;
    opts.permutation_seed = args.seed;
    const AnalyticReport r = analytic_report(lambda, opts);
    const std::size_t d = lambda.dim();

    out << std::setprecision(9);
    out << "spectrum   " << spectrum_text(lambda.values()) << "\n";
    out << "O_" << d << "        " << r.o_d << "\n";
    out << "O~_" << d << "       " << r.o_d_tilde << "  permutation " << permutation_text(r.o_d_tilde_permutation)
        << (r.o_d_tilde_exhaustive ? "" : "  (sampled)") << "\n";
    out << "C_R^max    " << r.c_r_max << (args.base == LogBase::two ? " bits" : " nats") << "\n";
    out << "C_l2^max   " << r.c_l2_max << "\n";
    out << "C_P        " << r.c_p << "\n";
    out << "C_F        " << r.c_f << "\n";

    io::json j = io::analytic_to_json(r);
    j["dimension"] = d;
    j["spectrum"] = std::vector<double>(lambda.values().begin(), lambda.values().end());
    j["log_base"] = std::string(to_string(args.base));
    const auto path = out_dir_or_default(args.out_dir) / "analytic.json";
    io::write_text_file(path, j.dump(2) + "\n");
    out << "wrote " << path.string() << "\n";
    return kOk;
}

io::ResultRecord run_search(const io::ExperimentConfig& config) {
    config.validate();
    io::StateInput state = config.spectrum ? io::StateInput(Spectrum::in_order(*config.spectrum))
                                           : io::load_state_file(*config.state_path);
    const Spectrum lambda = io::spectrum_of(state);

    io::ResultRecord rec;
    rec.config = config;
    rec.spectrum.assign(lambda.values().begin(), lambda.values().end());
    AnalyticOptions aopts;
    aopts.base = config.base;
    rec.analytic = analytic_report(lambda, aopts);

    SearchOptions opts;
    opts.measure = config.measure;
    opts.samples = config.samples;
    opts.reference = config.reference.value_or(fourier_reference(config.measure, lambda, config.base));
    opts.top_k = config.top_k;
    opts.workers = config.workers;
    opts.base = config.base;
    opts.checkpoints = config.checkpoints;
    rec.search = random_search(lambda, opts, RngStream(config.seed, config.stream));
    rec.timestamp = io::utc_timestamp();
    rec.version = std::string(io::version());
    return rec;
}

int cmd_search(const io::ExperimentConfig& config, std::ostream& out) {
    const auto rec = run_search(config);
    print_search_summary(rec, out);
    write_search_outputs(rec, out_dir_or_default(config.out_dir), config.svg, "search", out);
    return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
    const SuiteReport report = run_suite(args);
    for (const auto& c : report.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << report.suite << " d=" << c.dim << " " << c.name
            << " max_residual=" << std::scientific << std::setprecision(3) << c.residual << " tol=" << c.tolerance
            << std::defaultfloat << "\n";
    }
    const bool ok = report.pass();
    out << report.suite << ": " << (ok ? "pass" : "FAIL") << " (" << report.checks.size() << " checks)\n";
    return ok ? kOk : kVerificationFailure;
}

int cmd_reproduce(const ReproduceArgs& args, std::ostream& out) {
    io::ExperimentConfig config;
    config.seed = args.seed;
    config.workers = args.workers;
    config.out_dir = args.out_dir;
    config.top_k = 10;
    config.svg = true;
    if (args.preset == "table1") {
        config.spectrum = std::vector<double>{0.5, 0.3, 0.2};
        config.samples = args.samples.value_or(1000000);
        for (std::uint64_t c = 100; c <= config.samples; c *= 10) config.checkpoints.push_back(c);
        if (config.checkpoints.empty() || config.checkpoints.back() != config.samples) {
            config.checkpoints.push_back(config.samples);
        }
    } else if (args.preset == "fig1") {
        config.spectrum = std::vector<double>{0.4, 0.3, 0.2, 0.1};
        config.samples = args.samples.value_or(100000);
    } else if (args.preset == "d5") {
        config.spectrum = std::vector<double>{0.30, 0.25, 0.20, 0.15, 0.10};
        config.samples = args.samples.value_or(100000);
    } else {
        throw ParseError("reproduce: preset must be one of table1, fig1, d5; got '" + args.preset + "'");
    }

    const auto rec = run_search(config);
    print_search_summary(rec, out);
    const auto dir = out_dir_or_default(config.out_dir);
    write_search_outputs(rec, dir, config.svg, args.preset, out);
    if (args.preset == "table1") {
        out << "\n  samples      best value      O_3 - best\n";
        for (const auto& c : rec.search.checkpoints) {
            out << "  " << std::setw(9) << c.samples << "   " << std::fixed << std::setprecision(6) << c.best_value
                << "   " << std::scientific << std::setprecision(3) << rec.search.reference - c.best_value
                << std::defaultfloat << "\n";
        }
        const auto path = dir / "table1.csv";
        io::write_text_file(path, io::checkpoints_csv(rec.search));
        out << "wrote " << path.string() << "\n";
    }
    return kOk;
}

int run_guarded(const std::function<int()>& fn, std::ostream& err) {
    try {
        return fn();
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const InvalidStateError& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidationFailure;
    }
}

}  // namespace cohmax::cli
