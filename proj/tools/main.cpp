// coherence_lab — batch front end for the correlation-optics library.
//
//   coherence_lab run <config-path> [--out <dir>] [--plot]
//   coherence_lab schema <scenario>
//
// Exit codes: 0 success, 2 validation failure (bad config, bad usage, bad
// COHERENCE_LAB_THREADS), 3 numerical convergence failure, 1 anything else.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohlab/errors.hpp"
#include "cohlab/scenario.hpp"
#include "cohlab/threads.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int run_command(const std::string& config_path, const std::string& out_override, bool plot) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return kExitFailure;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    cohlab::ScenarioConfig cfg = cohlab::parse_config(buffer.str());
    if (!out_override.empty()) cfg.output_dir = out_override;

    const std::vector<cohlab::ResultTable> tables = cohlab::run_scenario(cfg);
    const auto written = cohlab::write_outputs(tables, cfg.output_dir, plot);
    for (const auto& path : written) std::cout << path.string() << '\n';
    return kExitSuccess;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence_lab: correlation-induced spectral effects, batch runner"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    bool plot = false;
    CLI::App* run = app.add_subcommand("run", "execute a scenario config and write CSV tables");
    run->add_option("config", config_path, "path to a `key = value` scenario config")->required();
    run->add_option("--out", out_override, "output directory (overrides output_dir in the config)");
    run->add_flag("--plot", plot, "also write one SVG line chart per table");

    std::string scenario;
    CLI::App* schema = app.add_subcommand("schema", "print the key schema of a scenario");
    schema->add_option("scenario", scenario, "one of: wolf, vacuum, atoms, mirror, shg, pulse")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        // Validate the thread cap up front so a bad environment value fails
        // before any work starts.
        cohlab::max_threads();

        if (run->parsed()) return run_command(config_path, out_override, plot);
        std::cout << cohlab::schema_text(scenario);
        return kExitSuccess;
    } catch (const cohlab::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const cohlab::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const cohlab::NumericalDegeneracyError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const cohlab::GridTooNarrowError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const cohlab::InvalidParameterError& e) {
        // Bad thread cap or a cross-key constraint the per-key schema cannot
        // express (e.g. grid_min >= grid_max); both are config problems.
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const cohlab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
