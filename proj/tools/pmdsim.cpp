// Command-line front end: reproduces the BER waterfalls, penalty curves,
// analytic penalty models, prototype orthogonality checks and A-coefficient
// fits as plot-ready CSV files.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "pmdsim/config.hpp"
#include "pmdsim/errors.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    long long seed = -1;  // -1: keep the config's seed
    int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key = value config file");
    cmd->add_option("--out", opts.out_path, "output CSV path")->required();
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--workers", opts.workers, "worker thread count")
        ->check(CLI::PositiveNumber);
}

int execute(pmdsim::Command command, const CommonOpts& opts) {
    pmdsim::RunConfig cfg;
    try {
        if (!opts.config_path.empty()) cfg = pmdsim::load_config(opts.config_path);
        if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    } catch (const pmdsim::config_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    try {
        pmdsim::run_command(command, cfg, opts.out_path, opts.workers);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"First-order PMD power-penalty simulator"};
    app.require_subcommand(1);

    const struct {
        const char* name;
        const char* help;
        pmdsim::Command command;
    } commands[] = {
        {"ber-sweep", "BER vs Eb/N0 waterfall per configured DGD value", pmdsim::Command::ber_sweep},
        {"penalty", "measured power penalty vs normalized DGD", pmdsim::Command::penalty},
        {"analytic", "closed-form penalty model vs normalized DGD", pmdsim::Command::analytic},
        {"ortho-check", "prototype orthogonality defect report", pmdsim::Command::ortho_check},
        {"fit-a", "fit the penalty coefficient A from a measured curve", pmdsim::Command::fit_a},
    };

    CommonOpts opts[std::size(commands)];
    for (std::size_t i = 0; i < std::size(commands); ++i)
        add_common(app.add_subcommand(commands[i].name, commands[i].help), opts[i]);

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < std::size(commands); ++i)
        if (app.get_subcommand(commands[i].name)->parsed())
            return execute(commands[i].command, opts[i]);
    return 1;
}
