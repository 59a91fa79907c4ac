#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plasmon/config.hpp"
#include "plasmon/runner.hpp"

namespace {

int dispatch(const std::string& cmd, const plasmon::config::RunConfig& cfg)
{
    using namespace plasmon::runner;
    if (cmd == "dispersion") run_dispersion(cfg);
    else if (cmd == "farfield") run_farfield(cfg);
    else if (cmd == "transmission") run_transmission(cfg);
    else if (cmd == "populations") run_populations(cfg);
    else if (cmd == "g2") run_g2(cfg);
    else if (cmd == "sweep") run_sweep(cfg);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Surface-plasmon photon correlation simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset_name;
    std::string out_dir;

    const char* names[] = {"dispersion", "farfield", "transmission",
                           "populations", "g2", "sweep", "report"};
    for (const char* n : names) {
        auto* sub = app.add_subcommand(n);
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--preset", preset_name, "fig2|fig3|fig4|fig5");
        sub->add_option("--out", out_dir, "output directory");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();

    plasmon::config::RunConfig cfg;
    try {
        if (!config_path.empty()) {
            cfg = plasmon::config::load(config_path);
        } else if (!preset_name.empty()) {
            cfg = plasmon::config::preset(preset_name);
        } else if (cmd != "report") {
            std::cerr << "error: need --config or --preset\n";
            return 1;
        }
        if (!out_dir.empty()) cfg.output_dir = out_dir;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cmd == "report") {
            const auto report =
                plasmon::runner::run_report(out_dir.empty() ? "out_report" : out_dir);
            for (const auto& c : report.claims) {
                std::printf("%-26s reference=%-12.6g computed=%-14.8g %s\n",
                            c.id.c_str(), c.reference, c.computed, c.status.c_str());
            }
            return 0;
        }
        return dispatch(cmd, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
