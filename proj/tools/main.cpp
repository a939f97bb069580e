#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "toricdef/errors.hpp"

using toricdef::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Deformations of Gorenstein toric singularities from lattice polytopes"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::int64_t kmax = 0;
    std::size_t u0_edge = 0;
    std::string strategy = "faces-basis";

    const std::vector<std::pair<std::string, std::string>> commands{
        {"analyze", "polytope summary, Hilbert basis, T1 and T2 profiles"},
        {"t1", "graded tangent dimensions"},
        {"t2", "graded obstruction dimensions by every available method"},
        {"base-ideal", "base-space ideal, elimination and minimal presentation"},
        {"family", "equations of the deformation family"},
        {"minkowski", "Minkowski decompositions and the component correspondence"},
        {"verify", "run every cross-check"},
        {"export-cas", "write a computer-algebra script"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", cfg.input, "polytope file")->required();
        sub->add_option("--kmax", kmax, "largest degree k")->check(CLI::PositiveNumber);
        sub->add_option("--degree-bound", cfg.degree_bound, "family degree bound D")->check(CLI::NonNegativeNumber);
        sub->add_option("--strategy", strategy, "faces-basis or minimal-width")
            ->check(CLI::IsMember({"faces-basis", "minimal-width"}));
        sub->add_option("--seed", cfg.seed, "seed for random rational points");
        sub->add_option("--out", cfg.out, "output path");
        sub->add_flag("--maximal", cfg.maximal, "list maximal decompositions only");
        sub->add_option("--u0-edge", u0_edge, "edge used for u0 (1-based)")->check(CLI::PositiveNumber);
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (kmax > 0) cfg.kmax = kmax;
    if (u0_edge > 0) cfg.u0_edge = u0_edge;

    try {
        cfg.strategy = toricdef::parse_strategy(strategy);
        const auto report = toricdef::cli::run(cfg);
        std::cout << report.render();
        return report.exit_code;
    } catch (const toricdef::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const toricdef::UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const toricdef::CorrectnessError& e) {
        std::cerr << "correctness check failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
