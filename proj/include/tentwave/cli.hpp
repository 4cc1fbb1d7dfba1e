#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tentwave/marcher.hpp"

namespace tentwave {

struct RegionSpec {
    double x_end = 1.0;
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double h = 0.01;  // spatial spacing within the region
};

struct InitialSpec {
    enum class Kind { zero, traveling_gaussian, material_pulse };
    Kind kind = Kind::zero;
    double amplitude = 1.0;
    double sharpness = 1000.0;
    double center = 0.5;
    int direction = -1;  // -1: leftward, +1: rightward (traveling_gaussian)
};

struct MeshSpec {
    enum class Kind { pitched, uniform_stencil };
    Kind kind = Kind::pitched;
    double slab_height = 0.002;
    double margin = 0.99;
    double k_ratio = 0.9;  // uniform_stencil: k = k_ratio * h
    std::uint64_t seed = 1;
};

struct OutputSpec {
    std::vector<double> snapshots;
    double error_dt = 0.0;  // 0: every other uniform step, or T/200
    bool nodal_history = false;
};

/// Validated run configuration; keeps the raw JSON for provenance output.
struct RunConfig {
    std::vector<RegionSpec> regions;
    double c = 1.0;
    double T = 1.0;
    double z0 = 1.0, z1 = 1.0;
    bool z0_matched = false, z1_matched = false;
    InitialSpec initial;
    MeshSpec mesh;
    std::string scheme = "tp";
    bool use_closed_form = true;
    OutputSpec output;
    nlohmann::json raw;

    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);

    double S() const { return regions.back().x_end; }
    Material material() const;
    SpatialMesh spatial_mesh() const;
    ProblemSpec problem() const;  // resolves matched impedances and initial data
    nlohmann::json metadata() const;
};

/// Subcommand drivers; each returns the list of files it wrote.
std::vector<std::string> run_solve(const RunConfig& cfg, const std::string& out_prefix);
std::vector<std::string> run_mesh(const RunConfig& cfg, const std::string& out_path,
                                  int n_slabs = 1);
std::vector<std::string> run_stability(double ac, int n_thetas, const std::string& out_path);
std::vector<std::string> run_verify(const std::string& suite, const std::string& out_path);
std::vector<std::string> run_converge(const std::string& scheme, int h_exp_min, int h_exp_max,
                                      double k_ratio, const std::string& out_path);

}  // namespace tentwave
