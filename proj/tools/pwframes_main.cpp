// Command-line driver for the pwframes shared library. Links only the C
// API; exit codes: 0 success, 1 invalid config, 2 uncertified frame,
// 3 other failures.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "pwframes/pwframes.h"

namespace {

int run_command(const char* command, const std::string& config, const std::string& out,
                long long seed) {
    const pwf_status status = pwf_run(command, config.c_str(), out.c_str(), seed);
    switch (status) {
        case PWF_OK:
            return 0;
        case PWF_ERR_INVALID_CONFIG:
            std::fprintf(stderr, "invalid config: %s\n", pwf_last_error());
            return 1;
        case PWF_ERR_NOT_CERTIFIED:
            std::fprintf(stderr, "not certified: %s\n", pwf_last_error());
            return 2;
        default:
            std::fprintf(stderr, "error: %s\n", pwf_last_error());
            return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bandlimited synthesis and frame reconstruction experiments"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    long long seed = -1;

    const char* names[] = {"lattice", "reconstruct", "sweep"};
    const char* descriptions[] = {
        "Build a lattice and write lattice.csv plus its packing certificate",
        "Run the sampling/reconstruction pipeline and write report.json",
        "Sweep rho/n/multiplier cells and write sweep.csv"};
    for (int i = 0; i < 3; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config, "experiment config JSON")->required();
        sub->add_option("--out", out, "output directory")->required();
        sub->add_option("--seed", seed, "override the config seed");
    }

    CLI11_PARSE(app, argc, argv);

    for (const char* name : names)
        if (app.got_subcommand(name)) return run_command(name, config, out, seed);
    return 1;
}
