#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "tentwave/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"tentwave: explicit space-time tent solver for the 1D wave system"};
    app.require_subcommand(1);

    std::string config_path, out_path = "out.json", out_prefix = "run";
    int n_slabs = 1;

    auto* mesh_cmd = app.add_subcommand("mesh", "pitch a tent mesh and export it as JSON");
    mesh_cmd->add_option("--config", config_path, "run configuration")->required();
    mesh_cmd->add_option("--out", out_path, "output mesh json");
    mesh_cmd->add_option("--slabs", n_slabs, "number of stacked slabs");

    std::string snapshots_arg;
    auto* solve_cmd = app.add_subcommand("solve", "march the tent scheme");
    solve_cmd->add_option("--config", config_path, "run configuration")->required();
    solve_cmd->add_option("--out-prefix", out_prefix, "output file prefix");
    solve_cmd->add_option("--snapshots", snapshots_arg, "comma-separated snapshot times");

    auto* ctcs_cmd = app.add_subcommand("ctcs", "run the staggered reference scheme");
    ctcs_cmd->add_option("--config", config_path, "run configuration")->required();
    ctcs_cmd->add_option("--out-prefix", out_prefix, "output file prefix");

    double ac = 0.9;
    int thetas = 256;
    auto* stab_cmd = app.add_subcommand("stability", "von Neumann sweep");
    stab_cmd->add_option("--ac", ac, "Courant number a*c");
    stab_cmd->add_option("--thetas", thetas, "number of frequencies");
    stab_cmd->add_option("--out", out_path, "output csv");

    std::string suite = "traces";
    auto* verify_cmd = app.add_subcommand("verify", "trace/identity/convergence checks");
    verify_cmd->add_option("--suite", suite, "traces | ibp | convergence")->required();
    verify_cmd->add_option("--out", out_path, "output report json");

    std::string scheme = "tp";
    int hmin = 3, hmax = 9;
    double k_ratio = 0.9;
    auto* conv_cmd = app.add_subcommand("converge", "mesh refinement study");
    conv_cmd->add_option("--scheme", scheme, "tp | ctcs");
    conv_cmd->add_option("--h-exp-min", hmin, "coarsest h = 1/2^e");
    conv_cmd->add_option("--h-exp-max", hmax, "finest h = 1/2^e");
    conv_cmd->add_option("--k-ratio", k_ratio, "k = k_ratio * h");
    conv_cmd->add_option("--out", out_path, "output csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::vector<std::string> written;
        if (mesh_cmd->parsed()) {
            written = tentwave::run_mesh(tentwave::RunConfig::from_file(config_path), out_path,
                                         n_slabs);
        } else if (solve_cmd->parsed() || ctcs_cmd->parsed()) {
            tentwave::RunConfig cfg = tentwave::RunConfig::from_file(config_path);
            if (ctcs_cmd->parsed()) cfg.scheme = "ctcs";
            if (!snapshots_arg.empty()) {
                cfg.output.snapshots.clear();
                std::string item;
                std::stringstream ss(snapshots_arg);
                while (std::getline(ss, item, ','))
                    cfg.output.snapshots.push_back(std::stod(item));
            }
            written = tentwave::run_solve(cfg, out_prefix);
        } else if (stab_cmd->parsed()) {
            written = tentwave::run_stability(ac, thetas, out_path);
        } else if (verify_cmd->parsed()) {
            written = tentwave::run_verify(suite, out_path);
        } else if (conv_cmd->parsed()) {
            written = tentwave::run_converge(scheme, hmin, hmax, k_ratio, out_path);
        }
        for (const auto& f : written) std::printf("wrote %s\n", f.c_str());
        return 0;
    } catch (const tentwave::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const tentwave::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
