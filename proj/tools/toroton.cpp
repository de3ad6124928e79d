#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "toroton/dispatch.hpp"

namespace {

const char* kSubcommands[] = {"profile", "propagate", "stability", "pair",
                              "young",   "curvature", "torus",     "sweep"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toroton - toroidal electromagnetic soliton workbench"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string format = "csv";

    std::vector<CLI::App*> subs;
    for (const char* name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--set", overrides, "override section.key=value")
            ->take_all();
        sub->add_option("--seed", seed, "random seed override")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        toroton::RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot open config file " << config_path << "\n";
                return 2;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            cfg = toroton::parse_config(ss.str());
        }
        for (const auto& o : overrides) toroton::apply_override(cfg, o);
        if (seed_set) cfg.run.seed = seed;

        const std::string sub = app.get_subcommands().front()->get_name();
        const toroton::RunManifest m = toroton::dispatch(sub, cfg, out_dir);
        std::cout << "wrote " << m.outputs.size() + 1 << " files to " << out_dir << "\n";
        return 0;
    } catch (const toroton::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const toroton::ConfigError& e) {
        for (const auto& msg : e.messages) std::cerr << "config error: " << msg << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
