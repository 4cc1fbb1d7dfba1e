#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "tentwave/mesh1d.hpp"

namespace tentwave {

using Vec2 = Eigen::Vector2d;

/// Essential boundary condition attached to a tent whose pole lies on a
/// domain boundary. z is the impedance parameter of z*u1 -+ u2 = 0 (minus at
/// the left end, plus at the right end); z = 0 is Dirichlet, z = 1 the model
/// outgoing condition, z = sqrt(kappa1/kappa2) matched impedance.
struct BoundaryConstraint {
    enum class Kind { none, left_boundary, right_boundary };
    Kind kind = Kind::none;
    double z = 1.0;

    static BoundaryConstraint none() { return {}; }
    static BoundaryConstraint left(double z) { return {Kind::left_boundary, z}; }
    static BoundaryConstraint right(double z) { return {Kind::right_boundary, z}; }
};

/// Inflow nodal values of z_h at the tent's inflow vertices. Entries for
/// vertices a tent type lacks are ignored.
struct TentInflow {
    Vec2 bottom = Vec2::Zero();
    Vec2 left = Vec2::Zero();
    Vec2 right = Vec2::Zero();
};

/// Material constants resolved per tent side (each triangle lies over one
/// spatial cell, hence in one region).
struct TentMaterial {
    double c = 1.0;
    double kappa1_l = 1.0, kappa2_l = 1.0;
    double kappa1_r = 1.0, kappa2_r = 1.0;

    static TentMaterial homogeneous(double c) { return {c, 1, 1, 1, 1}; }
    bool is_unit_kappa() const {
        return kappa1_l == 1.0 && kappa2_l == 1.0 && kappa1_r == 1.0 && kappa2_r == 1.0;
    }
};

/// Resolve the per-side constants of `tent` from the mesh/material tables.
TentMaterial local_material(const Tent& tent, const SpatialMesh& mesh, const Material& material);

/// Two-component volume source f(x,t).
using SourceFn = std::function<Vec2(double, double)>;

/// The assembled Petrov-Galerkin system on one tent. Unknown layout:
/// [u1_const, u2_const, alpha...] where alpha is the apex nodal value
/// (two components for interior tents, one scalar s with apex = s*(1, +-z)
/// for boundary tents). Rows follow the W1 test basis.
struct LocalSystem {
    int n = 4;  // 3 for boundary tents
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
    Eigen::Vector4d rhs = Eigen::Vector4d::Zero();
};

struct TentSolveResult {
    Vec2 apex = Vec2::Zero();     // nodal pair at the apex
    Vec2 u_const = Vec2::Zero();  // the L1 (per-tent constant) component
    double min_pivot = 0.0;       // from the LU factorization
    double max_pivot = 0.0;
};

/// Closed-form propagation (homogeneous material, f = 0): the Type I/L/R
/// weight formulas. Throws NumericalError when the CFL-protected weight
/// denominator is not positive.
Vec2 solve_tent_closed_form(const Tent& tent, const TentInflow& inflow, double c);

/// Closed-form solve of the *constrained* boundary-tent system (homogeneous
/// material, f = 0) with essential condition z*mu1 - mu2 = 0 (left) or
/// z*mu1 + mu2 = 0 (right). Coincides with solve_tent_closed_form at z = 1
/// whenever the bottom value satisfies the condition. Requires a Type L or R
/// tent and a matching constraint kind.
Vec2 solve_tent_boundary_closed_form(const Tent& tent, const TentInflow& inflow, double c,
                                     const BoundaryConstraint& bc);

/// Assemble the n x n system of the per-tent problem
///   -int_K u . A w + int_{dK} Dd z_o . w = int_K f . w - int_{dK} Dd z_i . w
/// over the test space W1. Pass source = nullptr for f = 0.
LocalSystem assemble_tent_system(const Tent& tent, const TentInflow& inflow,
                                 const TentMaterial& material, const SourceFn* source,
                                 const BoundaryConstraint& bc);

/// Assemble and solve by dense partial-pivot LU. Throws NumericalError when
/// the system is numerically singular.
TentSolveResult solve_tent_assembled(const Tent& tent, const TentInflow& inflow,
                                     const TentMaterial& material, const SourceFn* source,
                                     const BoundaryConstraint& bc);

}  // namespace tentwave
