// Command-line runner: mv-check, solve, play, sweep, cross-validate.
#include <CLI11.hpp>
#include <iostream>

#include "kolmo/experiments.hpp"

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::optional<std::size_t> threads;
    bool dump_config = false;
};

int run(const std::string& command, const Options& opt) {
    using namespace kolmo;
    std::vector<ExperimentConfig> experiments;
    try {
        ConfigFile cfg;
        if (!opt.config.empty()) cfg = parse_config(read_text_file(opt.config));
        ConfigFile selected;
        for (const auto& sec : cfg.sections)
            if (command == "run" || sec.command == command) selected.sections.push_back(sec);
        if (selected.sections.empty()) {
            if (command == "run") throw ConfigError("--config", "no sections to run");
            selected.sections.push_back({command, {}});
        }
        if (opt.dump_config) {
            std::cout << serialize_config(selected);
            return 0;
        }
        for (auto& sec : selected.sections) {
            if (opt.seed && (sec.command == "play" || sec.command == "cross-validate"))
                sec.set("seed", std::to_string(*opt.seed));
            if (opt.threads) sec.set("threads", std::to_string(*opt.threads));
            experiments.push_back(to_experiment(sec));
            validate_experiment(experiments.back());
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }

    bool all_pass = true;
    for (const auto& e : experiments) {
        try {
            const ExperimentOutcome r = run_experiment(e, opt.out);
            all_pass = all_pass && r.pass;
            std::cout << (r.pass ? "PASS " : "FAIL ") << r.summary << '\n';
        } catch (const ConfigError& ex) {
            std::cerr << "config error: " << ex.what() << '\n';
            return 2;
        } catch (const std::exception& ex) {
            std::cerr << "error in " << e.command << ": " << ex.what() << '\n';
            return 3;
        }
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tug-of-war games and Kolmogorov p-Laplacians: mean-value checks, DPP solves, Monte Carlo"};
    app.require_subcommand(1);
    Options opt;
    std::string chosen;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"mv-check", "mean-value residual limits against the operator oracle"},
        {"solve", "solve the dynamic programming principle on a grid"},
        {"play", "Monte Carlo estimate of the game value"},
        {"sweep", "solver error along a decreasing eps ladder"},
        {"cross-validate", "grid value vs game value with greedy strategies"},
        {"run", "run every section of the config file"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "config file")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "random seed for play / cross-validate");
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--threads", opt.threads, "worker threads, 0 = auto (results do not depend on it)");
        sub->add_flag("--dump-config", opt.dump_config, "print the canonical config and exit");
        sub->callback([&chosen, n = name] { chosen = n; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(chosen, opt);
}
