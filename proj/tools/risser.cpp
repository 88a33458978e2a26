// SPDX-License-Identifier: Apache-2.0
//
// risser: SER analysis and phase optimization for space-time coded RIS links
//
// Batch command-line front end. Each subcommand reads one key = value
// scenario config, writes one CSV plus a reproducing run manifest, and
// reports diagnostics on stderr.

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risser/experiment.hpp"
#include "risser/version.hpp"

namespace {

void add_subcommand(CLI::App& app, const std::string& name,
                    const std::string& description, int& exit_code) {
    auto* sub = app.add_subcommand(name, description);
    auto config = std::make_shared<std::string>();
    auto overrides = std::make_shared<std::vector<std::string>>();
    sub->add_option("config", *config, "scenario config file (key = value)")
        ->required();
    sub->add_option("-D,--define", *overrides,
                    "override a config entry as key=value (repeatable)");
    sub->callback([&exit_code, name, config, overrides] {
        exit_code = risser::cli::run(name, *config, *overrides);
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"SER analysis and phase optimization for space-time coded "
                 "RIS-assisted links"};
    app.set_version_flag("--version", risser::kVersion);
    app.require_subcommand(1);

    int exit_code = 0;
    add_subcommand(app, "pdf",
                   "eigenvalue densities (exact/LCLT/SPA/empirical) on a grid",
                   exit_code);
    add_subcommand(app, "ser", "analytic SER sweep (exact and/or SPA)",
                   exit_code);
    add_subcommand(app, "asym",
                   "asymptotic SER sweep with diversity and coding gains",
                   exit_code);
    add_subcommand(app, "mc", "semi-analytic Monte Carlo SER with standard errors",
                   exit_code);
    add_subcommand(app, "optimize",
                   "group-wise greedy phase search minimizing the negative moment",
                   exit_code);
    add_subcommand(app, "pathloss", "near-field path loss and Fraunhofer report",
                   exit_code);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    return exit_code;
}
