#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tentwave/errors.hpp"

namespace tentwave {

/// Piecewise-constant material data: a global wave constant c and per-region
/// coefficients kappa1, kappa2. The local wave speed in a region is
/// c / sqrt(kappa1 * kappa2).
struct Material {
    double c = 1.0;
    std::vector<double> kappa1{1.0};
    std::vector<double> kappa2{1.0};

    int n_regions() const { return static_cast<int>(kappa1.size()); }
    double wave_speed(int region) const;
    /// True when every region has kappa1 = kappa2 = 1 (the model wave system).
    bool homogeneous() const;
    void validate() const;
};

/// 1D spatial mesh: strictly increasing vertices, one material-region index
/// per cell.
struct SpatialMesh {
    std::vector<double> vertices;
    std::vector<int> regions;  // size n_cells()

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_cells() const { return static_cast<int>(vertices.size()) - 1; }
    double extent() const { return vertices.back() - vertices.front(); }
    double cell_size(int cell) const { return vertices[cell + 1] - vertices[cell]; }

    static SpatialMesh uniform(double S, double h, int region = 0);
    static SpatialMesh from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    void validate(int n_regions) const;
};

enum class TentType { I, L, R };

const char* to_string(TentType t);

/// One space-time tent: a vertical pole of height k raised above a spatial
/// vertex, spanned by at most two triangles. The outflow corner on each side
/// sits p*k below the apex (p*k is the height of the outflow edge, as drawn
/// in the tent figure), i.e. corner time = t_bottom + (1-p)*k.
struct Tent {
    int center_vertex = -1;
    TentType type = TentType::I;
    double x_center = 0.0;
    double t_bottom = 0.0;
    double k = 0.0;        // pole height
    double h_l = 0.0;      // left half-width (0 for Type L)
    double h_r = 0.0;      // right half-width (0 for Type R)
    double p_l = 0.0;      // outflow-slope fraction, left
    double p_r = 0.0;      // outflow-slope fraction, right

    // Node ids into the owning TentMesh (-1 when absent).
    int node_bottom = -1, node_left = -1, node_right = -1, node_apex = -1;
    // Spatial cell index on each side (-1 when absent).
    int cell_left = -1, cell_right = -1;

    double apex_time() const { return t_bottom + k; }
    double corner_time_left() const { return t_bottom + (1.0 - p_l) * k; }
    double corner_time_right() const { return t_bottom + (1.0 - p_r) * k; }
    bool has_left() const { return type != TentType::L; }
    bool has_right() const { return type != TentType::R; }
    int n_triangles() const { return type == TentType::I ? 2 : 1; }
    double area() const;

    /// Throws GeometryError on nonpositive k, negative half-widths, or a
    /// type/half-width mismatch.
    void validate_geometry() const;
};

/// CFL admissibility |c_loc * k * p / h| <= margin per existing side, with
/// the local wave speed of the adjacent side. Type L skips the left check,
/// Type R the right one.
bool cfl_admissible(const Tent& tent, double speed_left, double speed_right, double margin = 0.99);

/// Convenience overload resolving per-side wave speeds from the mesh cells.
bool cfl_admissible(const Tent& tent, const SpatialMesh& mesh, const Material& material,
                    double margin = 0.99);

/// Largest pole height k (already scaled by margin) such that a tent pitched
/// at `center_vertex` above the given front passes cfl_admissible. front_times
/// holds the current time of every spatial vertex.
double max_pole_height(int center_vertex, std::span<const double> front_times,
                       const SpatialMesh& mesh, const Material& material, double margin = 0.99);

}  // namespace tentwave
