// Command-line front end: runs one scenario config and writes its CSV
// outputs.  Exit codes: 0 success, 2 config error, 3 numeric precondition
// violation, 4 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "homsim/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectrally shaped photon-pair interference simulator"};
    std::string config_path;
    std::string output_dir = ".";
    std::uint64_t seed = 0;
    bool quiet = false;
    app.add_option("config", config_path, "scenario config file (JSON)")
        ->required();
    app.add_option("--output", output_dir, "directory for CSV outputs");
    auto* seed_opt =
        app.add_option("--seed", seed, "override the config seed");
    app.add_flag("--quiet", quiet, "suppress the summary line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    homsim::scenario::RunOptions options;
    options.output_dir = output_dir;
    options.quiet = quiet;
    if (seed_opt->count() > 0) options.seed = seed;

    try {
        const auto config = homsim::scenario::load_config(config_path);
        homsim::scenario::run(config, options, std::cout);
    } catch (const homsim::scenario::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const homsim::scenario::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
