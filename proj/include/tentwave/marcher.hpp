#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tentwave/local_solver.hpp"
#include "tentwave/tent_pitcher.hpp"

namespace tentwave {

using ScalarFn = std::function<double(double)>;
using SpaceTimeFn = std::function<Vec2(double, double)>;

/// Initial-boundary value problem data for the first-order wave system.
struct ProblemSpec {
    Material material;
    ScalarFn initial_u1;  // u1(x, 0)
    ScalarFn initial_u2;  // u2(x, 0)
    SourceFn source;      // empty => f = 0
    double z0 = 1.0;      // boundary parameter at x = 0:  z0*u1 - u2 = 0
    double z1 = 1.0;      // boundary parameter at x = S:  z1*u1 + u2 = 0
    double T = 1.0;
    std::optional<SpaceTimeFn> exact;

    void validate() const;
};

struct SnapshotTrace {
    double t = 0.0;
    std::vector<double> x, u1, u2;  // at the spatial mesh vertices
};

/// Nodal space-time solution on a tent mesh; evaluates the piecewise-linear
/// finite element function anywhere in the meshed slab.
class Solution {
  public:
    Solution(std::shared_ptr<const TentMesh> mesh, std::vector<Vec2> nodal);

    const TentMesh& tent_mesh() const { return *mesh_; }
    const std::vector<Vec2>& nodal_values() const { return nodal_; }

    /// Point evaluation of z_h; throws Error if (x,t) lies outside the mesh.
    Vec2 eval(double x, double t) const;

    /// Spatial trace along the horizontal line at time t, at mesh vertices.
    SnapshotTrace snapshot(double t) const;

    /// L2(0,S) norm of (z_h(.,t) - exact(.,t)) over both components, with
    /// per-segment Gauss quadrature split at the snapshot's breakpoints.
    double l2_error(const SpaceTimeFn& exact, double t) const;

    /// Breakpoints of the piecewise-linear trace at time t inside one cell.
    std::vector<double> trace_breakpoints(int cell, double t) const;

    nlohmann::json nodal_history_json() const;

  private:
    struct TriRef {
        int n0, n1, n2;  // bottom, outer, apex node ids
        double t_min, t_max;
    };
    bool locate(int cell, double x, double t, Vec2& out) const;

    std::shared_ptr<const TentMesh> mesh_;
    std::vector<Vec2> nodal_;
    std::vector<std::vector<TriRef>> cell_tris_;  // per cell, sorted by t_min
    std::vector<double> max_span_;                // per cell
};

/// Explicit tent-by-tent marching in the mesh's causal order. With
/// use_closed_form, homogeneous-material zero-source tents are propagated by
/// the closed-form formulas; everything else is assembled and solved densely.
Solution march(std::shared_ptr<const TentMesh> mesh, const ProblemSpec& problem,
               bool use_closed_form = true);

}  // namespace tentwave
