// dicke-lab: command-line driver. Exit codes: 0 ok, 2 config/usage, 3 numerical.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dicke/errors.hpp"
#include "dicke/io.hpp"
#include "dicke/tasks.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral, classical and thermal analysis of the extended Dicke model", "dicke-lab"};
    app.set_version_flag("--version", std::string(DICKE_VERSION));
    std::string task;
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    unsigned threads = 1;
    app.add_option("task", task, "Task to run")->required()->check(CLI::IsMember(dicke::task_names()));
    app.add_option("--config", config_path, "INI configuration file")->required();
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed (overrides [run] seed)");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const auto config = dicke::RunConfig::from_file(config_path);
        dicke::TaskOptions options;
        options.out_dir = out_dir;
        if (seed_opt->count() > 0) options.seed = seed;
        options.threads = threads;
        dicke::run_task(task, config, options);
        return 0;
    } catch (const dicke::ConfigError& e) {
        std::cerr << "dicke-lab: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const dicke::ParameterError& e) {
        std::cerr << "dicke-lab: invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const dicke::UnsupportedError& e) {
        std::cerr << "dicke-lab: unsupported: " << e.what() << '\n';
        return 2;
    } catch (const dicke::TruncationError& e) {
        std::cerr << "dicke-lab: truncation did not converge: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "dicke-lab: numerical failure: " << e.what() << '\n';
        return 3;
    }
}
