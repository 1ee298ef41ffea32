// Command-line front end: coherence, analytic, search, verify, reproduce.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cohmax/commands.hpp"
#include "cohmax/errors.hpp"
#include "cohmax/io.hpp"

using namespace cohmax;

namespace {

struct StateFlags {
    std::string spectrum;
    std::string state;

    void attach(CLI::App* cmd) {
        auto* s = cmd->add_option("--spectrum", spectrum, "Comma-separated eigenvalues, e.g. 0.5,0.3,0.2");
        auto* f = cmd->add_option("--state", state, "JSON state file ({\"spectrum\": ...} or {\"matrix\": ...})");
        s->excludes(f);
    }

    cli::StateArgs resolve() const {
        cli::StateArgs a;
        if (!spectrum.empty()) a.spectrum = io::parse_number_list(spectrum);
        if (!state.empty()) a.state_path = state;
        return a;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cohmax: maximal quantum coherence over reference bases"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(io::version()));

    std::string log_base = "2";
    std::string out_dir;

    // coherence
    auto* coherence = app.add_subcommand("coherence", "Coherence measures of a state in a chosen basis");
    StateFlags coherence_state;
    coherence_state.attach(coherence);
    std::string basis = "identity";
    std::string basis_file;
    std::string hadamard_file;
    coherence->add_option("--basis", basis, "identity | fourier | eigen | optimal | file")->capture_default_str();
    coherence->add_option("--basis-file", basis_file, "Unitary JSON file for --basis file");
    coherence->add_option("--hadamard", hadamard_file, "Hadamard JSON file used by --basis optimal");
    coherence->add_option("--log-base", log_base, "2 | e")->capture_default_str();
    coherence->add_option("--out", out_dir, "Output directory (default $COHMAX_OUT_DIR or ./cohmax-out)");

    // analytic
    auto* analytic = app.add_subcommand("analytic", "Closed-form maxima and the O_d family");
    StateFlags analytic_state;
    analytic_state.attach(analytic);
    std::size_t perm_samples = 10000;
    std::uint64_t analytic_seed = 0;
    analytic->add_option("--log-base", log_base, "2 | e")->capture_default_str();
    analytic->add_option("--out", out_dir, "Output directory");
    analytic->add_option("--samples", perm_samples, "Random orderings tried when d exceeds the exhaustive cap")
        ->capture_default_str();
    analytic->add_option("--seed", analytic_seed, "Seed for sampled orderings")->capture_default_str();

    // search
    auto* search = app.add_subcommand("search", "Haar-random basis search for the largest coherence");
    StateFlags search_state;
    search_state.attach(search);
    std::string config_path;
    std::string measure = "l1";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::size_t top_k = 10;
    bool svg = false;
    double reference = 0.0;
    search->add_option("--config", config_path, "JSON experiment config; explicit flags override it");
    search->add_option("--measure", measure, "l1 | r | l2")->capture_default_str();
    search->add_option("--samples", samples, "Number of Haar-random bases")->capture_default_str();
    search->add_option("--seed", seed, "RNG seed")->capture_default_str();
    search->add_option("--workers", workers, "Worker threads")->capture_default_str();
    search->add_option("--top-k", top_k, "Number of top values kept")->capture_default_str();
    search->add_option("--reference", reference, "Violation threshold (default: Fourier-basis value)");
    search->add_option("--log-base", log_base, "2 | e")->capture_default_str();
    search->add_option("--out", out_dir, "Output directory");
    search->add_flag("--svg", svg, "Also write an SVG scatter of the top values");

    // verify
    auto* verify = app.add_subcommand("verify", "Run an invariant suite");
    std::string suite;
    std::size_t trials = 100;
    std::string dims = "2..6";
    std::uint64_t verify_seed = 0;
    std::uint64_t cue_samples = 1000;
    verify->add_option("suite", suite, "theorem1 | stationarity | circulant | bounds | identities")->required();
    verify->add_option("--trials", trials, "Random states per dimension")->capture_default_str();
    verify->add_option("--dims", dims, "Dimension range lo..hi")->capture_default_str();
    verify->add_option("--seed", verify_seed, "RNG seed")->capture_default_str();
    verify->add_option("--samples", cue_samples, "Haar samples per state (bounds suite)")->capture_default_str();

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "Run a preset experiment: table1 | fig1 | d5");
    std::string preset;
    std::uint64_t preset_samples = 0;
    std::uint64_t preset_seed = 0;
    unsigned preset_workers = 1;
    reproduce->add_option("preset", preset, "table1 | fig1 | d5")->required();
    reproduce->add_option("--samples", preset_samples, "Override the preset sample count");
    reproduce->add_option("--seed", preset_seed, "RNG seed")->capture_default_str();
    reproduce->add_option("--workers", preset_workers, "Worker threads")->capture_default_str();
    reproduce->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kValidationFailure;
    }

    return cli::run_guarded(
        [&]() -> int {
            const LogBase base = parse_log_base(log_base);
            if (coherence->parsed()) {
                cli::CoherenceArgs a;
                a.state = coherence_state.resolve();
                a.basis = cli::parse_basis(basis);
                if (!basis_file.empty()) a.basis_file = basis_file;
                if (!hadamard_file.empty()) a.hadamard_file = hadamard_file;
                a.base = base;
                a.out_dir = out_dir;
                return cli::cmd_coherence(a, std::cout);
            }
            if (analytic->parsed()) {
                cli::AnalyticArgs a;
                a.state = analytic_state.resolve();
                a.base = base;
                a.out_dir = out_dir;
                a.permutation_samples = perm_samples;
                a.seed = analytic_seed;
                return cli::cmd_analytic(a, std::cout);
            }
            if (search->parsed()) {
                io::ExperimentConfig c;
                if (!config_path.empty()) c = io::config_from_json(io::read_json_file(config_path));
                const auto given = [&](const char* flag) { return search->count(flag) > 0; };
                const auto st = search_state.resolve();
                if (st.spectrum || st.state_path) {
                    c.spectrum = st.spectrum;
                    c.state_path = st.state_path;
                }
                if (given("--measure")) c.measure = parse_measure(measure);
                if (given("--samples")) c.samples = samples;
                if (given("--seed")) c.seed = seed;
                if (given("--workers")) c.workers = workers;
                if (given("--top-k")) c.top_k = top_k;
                if (given("--reference")) c.reference = reference;
                if (given("--log-base")) c.base = base;
                if (given("--out")) c.out_dir = out_dir;
                if (given("--svg")) c.svg = svg;
                return cli::cmd_search(c, std::cout);
            }
            if (verify->parsed()) {
                cli::VerifyArgs a;
                a.suite = suite;
                a.trials = trials;
                std::tie(a.dim_lo, a.dim_hi) = io::parse_dim_range(dims);
                a.seed = verify_seed;
                a.cue_samples = cue_samples;
                return cli::cmd_verify(a, std::cout);
            }
            cli::ReproduceArgs a;
            a.preset = preset;
            if (preset_samples > 0) a.samples = preset_samples;
            a.seed = preset_seed;
            a.workers = preset_workers;
            a.out_dir = out_dir;
            return cli::cmd_reproduce(a, std::cout);
        },
        std::cerr);
}
