#include "tentwave/local_solver.hpp"

#include <array>
#include <cmath>

#include "tentwave/quadrature.hpp"

namespace tentwave {

namespace {

using P2 = std::array<double, 2>;  // (x, t)

struct Triangle {
    P2 bottom, outer, apex;
    double kappa1, kappa2;
    bool pole_is_boundary;  // the vertical pole edge lies on the domain boundary
    bool outer_is_left;
};

std::array<Triangle, 2> tent_triangles(const Tent& tent, const TentMaterial& mat, int& count) {
    const double xc = tent.x_center, tb = tent.t_bottom;
    const P2 B{xc, tb}, A{xc, tb + tent.k};
    std::array<Triangle, 2> tri{};
    count = 0;
    if (tent.has_left()) {
        const P2 L{xc - tent.h_l, tent.corner_time_left()};
        tri[count++] = {B, L, A, mat.kappa1_l, mat.kappa2_l, tent.type == TentType::R, true};
    }
    if (tent.has_right()) {
        const P2 R{xc + tent.h_r, tent.corner_time_right()};
        tri[count++] = {B, R, A, mat.kappa1_r, mat.kappa2_r, tent.type == TentType::L, false};
    }
    return tri;
}

double cross(const P2& a, const P2& b) { return a[0] * b[1] - a[1] * b[0]; }

P2 sub(const P2& a, const P2& b) { return {a[0] - b[0], a[1] - b[1]}; }

/// Gradient of the linear hat that is 1 at `one` and 0 at the other two.
P2 hat_gradient(const P2& zero_a, const P2& zero_b, const P2& one) {
    const P2 e = sub(zero_b, zero_a);
    const double twice_area = cross(e, sub(one, zero_a));
    return {-e[1] / twice_area, e[0] / twice_area};
}

struct Edge {
    P2 from, to;
    double zeta_from, zeta_to;  // apex hat values at the endpoints
    Vec2 z_from, z_to;          // inflow nodal values (apex entries are zero)
    double kappa1, kappa2;
};

/// 2x2 boundary matrix scaled by edge length: Dd(N) with N the outward
/// normal times edge length.
Eigen::Matrix2d boundary_matrix(const Edge& e, double c) {
    const double nx = e.to[1] - e.from[1];     // rotate tangent by -90 deg
    const double nt = -(e.to[0] - e.from[0]);  // (CCW traversal => outward)
    Eigen::Matrix2d d;
    d << nt * e.kappa1, -c * nx, -c * nx, nt * e.kappa2;
    return d;
}

}  // namespace

TentMaterial local_material(const Tent& tent, const SpatialMesh& mesh, const Material& material) {
    TentMaterial m;
    m.c = material.c;
    if (tent.has_left()) {
        const int r = mesh.regions.at(tent.cell_left);
        m.kappa1_l = material.kappa1.at(r);
        m.kappa2_l = material.kappa2.at(r);
    }
    if (tent.has_right()) {
        const int r = mesh.regions.at(tent.cell_right);
        m.kappa1_r = material.kappa1.at(r);
        m.kappa2_r = material.kappa2.at(r);
    }
    return m;
}

Vec2 solve_tent_closed_form(const Tent& tent, const TentInflow& inflow, double c) {
    tent.validate_geometry();
    const double k = tent.k;
    const Vec2& b = inflow.bottom;
    switch (tent.type) {
        case TentType::I: {
            const double hsum = tent.h_l + tent.h_r;
            const double dp = tent.p_r - tent.p_l;
            const double den = hsum * hsum - c * c * k * k * dp * dp;
            if (!(den > 0.0))
                throw NumericalError("closed form: CFL-violating tent (weight denominator <= 0)");
            const double w1 = hsum * k / den;
            const double w2 = c * k * k * dp / den;
            const Vec2 d = inflow.right - inflow.left;
            return {b[0] + w1 * c * d[1] + w2 * c * d[0],
                    b[1] + w1 * c * d[0] + w2 * c * d[1]};
        }
        case TentType::L: {
            const double den = c * k * (1.0 - tent.p_r) + tent.h_r;
            if (!(den > 0.0)) throw NumericalError("closed form: degenerate Type L tent");
            const double w1 = k / (2.0 * den);
            const Vec2 d = inflow.right - b;
            return {b[0] + w1 * c * (d[1] + d[0]), b[1] + w1 * c * (d[0] + d[1])};
        }
        case TentType::R: {
            const double den = c * k * (1.0 - tent.p_l) + tent.h_l;
            if (!(den > 0.0)) throw NumericalError("closed form: degenerate Type R tent");
            const double w1 = k / (2.0 * den);
            const Vec2 d = b - inflow.left;
            return {b[0] + w1 * c * (d[1] - d[0]), b[1] + w1 * c * (d[0] - d[1])};
        }
    }
    throw Error("unreachable");
}

Vec2 solve_tent_boundary_closed_form(const Tent& tent, const TentInflow& inflow, double c,
                                     const BoundaryConstraint& bc) {
    tent.validate_geometry();
    const double k = tent.k, z = bc.z;
    const Vec2& b = inflow.bottom;
    if (tent.type == TentType::L && bc.kind == BoundaryConstraint::Kind::left_boundary) {
        const double h = tent.h_r, p = tent.p_r;
        const double den = 2.0 * c * k * z * (1.0 - p) + h * (1.0 + z * z);
        if (!(den > 0.0)) throw NumericalError("boundary closed form: degenerate tent");
        const double s = (b[0] * (h - c * k * p * z) + b[1] * (h * z - c * k * p) +
                          c * k * z * inflow.right[0] + c * k * inflow.right[1]) /
                         den;
        return {s, z * s};
    }
    if (tent.type == TentType::R && bc.kind == BoundaryConstraint::Kind::right_boundary) {
        const double h = tent.h_l, p = tent.p_l;
        const double den = 2.0 * c * k * z * (1.0 - p) + h * (1.0 + z * z);
        if (!(den > 0.0)) throw NumericalError("boundary closed form: degenerate tent");
        const double s = (b[0] * (h - c * k * p * z) + b[1] * (c * k * p - h * z) +
                          c * k * z * inflow.left[0] - c * k * inflow.left[1]) /
                         den;
        return {s, -z * s};
    }
    throw GeometryError("boundary closed form: tent type does not match constraint");
}

LocalSystem assemble_tent_system(const Tent& tent, const TentInflow& inflow,
                                 const TentMaterial& material, const SourceFn* source,
                                 const BoundaryConstraint& bc) {
    tent.validate_geometry();
    const double c = material.c;

    int n_tri = 0;
    const auto tris = tent_triangles(tent, material, n_tri);

    // Essential direction for alpha and for the constant test on boundary
    // tents: z*mu1 - mu2 = 0 at the left end, z*mu1 + mu2 = 0 at the right.
    const bool constrained = bc.kind != BoundaryConstraint::Kind::none;
    if (constrained) {
        const bool ok =
            (bc.kind == BoundaryConstraint::Kind::left_boundary && tent.type == TentType::L) ||
            (bc.kind == BoundaryConstraint::Kind::right_boundary && tent.type == TentType::R);
        if (!ok) throw GeometryError("assemble: boundary constraint does not match tent type");
    }
    const Vec2 dir = bc.kind == BoundaryConstraint::Kind::left_boundary ? Vec2(1.0, bc.z)
                     : bc.kind == BoundaryConstraint::Kind::right_boundary
                         ? Vec2(1.0, -bc.z)
                         : Vec2::Zero();

    LocalSystem sys;
    sys.n = constrained ? 3 : 4;

    // Test basis: (kappa_hat, mu) pairs.
    std::array<std::pair<Vec2, Vec2>, 4> tests;
    int n_tests = 0;
    if (constrained) {
        tests[n_tests++] = {dir, Vec2::Zero()};
    } else {
        tests[n_tests++] = {Vec2(1, 0), Vec2::Zero()};
        tests[n_tests++] = {Vec2(0, 1), Vec2::Zero()};
    }
    tests[n_tests++] = {Vec2::Zero(), Vec2(1, 0)};
    tests[n_tests++] = {Vec2::Zero(), Vec2(0, 1)};

    // Alpha columns as directions in R^2.
    std::array<Vec2, 2> alpha_dirs;
    int n_alpha = 0;
    if (constrained) {
        alpha_dirs[n_alpha++] = dir;
    } else {
        alpha_dirs[n_alpha++] = Vec2(1, 0);
        alpha_dirs[n_alpha++] = Vec2(0, 1);
    }

    // Collect boundary edges (the pole edge only when it lies on the domain
    // boundary; the inflow/outflow edges always).
    std::array<Edge, 5> edges;
    int n_edges = 0;
    for (int m = 0; m < n_tri; ++m) {
        const auto& tr = tris[m];
        const Vec2 z_outer = tr.outer_is_left ? inflow.left : inflow.right;
        if (tr.outer_is_left) {
            // CCW: B -> A -> L ; boundary edges A->L (outflow), L->B (inflow)
            edges[n_edges++] = {tr.apex, tr.outer, 1.0, 0.0, Vec2::Zero(), z_outer,
                                tr.kappa1, tr.kappa2};
            edges[n_edges++] = {tr.outer, tr.bottom, 0.0, 0.0, z_outer, inflow.bottom,
                                tr.kappa1, tr.kappa2};
            if (tr.pole_is_boundary)  // Type R: pole on x = S, CCW edge B->A
                edges[n_edges++] = {tr.bottom, tr.apex, 0.0, 1.0, inflow.bottom, Vec2::Zero(),
                                    tr.kappa1, tr.kappa2};
        } else {
            // CCW: B -> R -> A ; boundary edges B->R (inflow), R->A (outflow)
            edges[n_edges++] = {tr.bottom, tr.outer, 0.0, 0.0, inflow.bottom, z_outer,
                                tr.kappa1, tr.kappa2};
            edges[n_edges++] = {tr.outer, tr.apex, 0.0, 1.0, z_outer, Vec2::Zero(),
                                tr.kappa1, tr.kappa2};
            if (tr.pole_is_boundary)  // Type L: pole on x = 0, CCW edge A->B
                edges[n_edges++] = {tr.apex, tr.bottom, 1.0, 0.0, Vec2::Zero(), inflow.bottom,
                                    tr.kappa1, tr.kappa2};
        }
    }

    for (int row = 0; row < n_tests; ++row) {
        const Vec2& kap = tests[row].first;
        const Vec2& mu = tests[row].second;

        // Volume term -int_K u . A w ; A(const) = 0, so only the mu part acts.
        if (mu[0] != 0.0 || mu[1] != 0.0) {
            for (int m = 0; m < n_tri; ++m) {
                const auto& tr = tris[m];
                const P2 g = hat_gradient(tr.bottom, tr.outer, tr.apex);
                const double area = 0.5 * std::abs(cross(sub(tr.outer, tr.bottom),
                                                         sub(tr.apex, tr.bottom)));
                // A(mu*zeta) = diag(kappa)*mu*dt(zeta) - C_w*mu*dx(zeta)
                const Vec2 aw(tr.kappa1 * mu[0] * g[1] - c * mu[1] * g[0],
                              tr.kappa2 * mu[1] * g[1] - c * mu[0] * g[0]);
                sys.matrix(row, 0) -= area * aw[0];
                sys.matrix(row, 1) -= area * aw[1];
            }
        }

        for (int e = 0; e < n_edges; ++e) {
            const Edge& ed = edges[e];
            const Eigen::Matrix2d dd = boundary_matrix(ed, c);
            const double zf = ed.zeta_from, zt = ed.zeta_to;
            const double int_zeta = 0.5 * (zf + zt);
            const double int_zeta2 = (zf * zf + zf * zt + zt * zt) / 3.0;

            // LHS: int Dd (alpha zeta) . (kap + mu zeta)
            for (int j = 0; j < n_alpha; ++j) {
                const Vec2 da = dd * alpha_dirs[j];
                sys.matrix(row, 2 + j) += da.dot(kap) * int_zeta + da.dot(mu) * int_zeta2;
            }

            // RHS: -int Dd z_i . (kap + mu zeta), z_i linear on the edge
            const Vec2 m0 = dd * (0.5 * (ed.z_from + ed.z_to));
            const Vec2 m1 = dd * (ed.z_from * (zf / 3.0 + zt / 6.0) +
                                  ed.z_to * (zf / 6.0 + zt / 3.0));
            sys.rhs(row) -= m0.dot(kap) + m1.dot(mu);
        }

        if (source) {
            for (int m = 0; m < n_tri; ++m) {
                const auto& tr = tris[m];
                const double area = 0.5 * std::abs(cross(sub(tr.outer, tr.bottom),
                                                         sub(tr.apex, tr.bottom)));
                for (const auto& q : quad::tri3()) {
                    const double l0 = 1.0 - q.l1 - q.l2;  // bottom, outer, apex
                    const double x = l0 * tr.bottom[0] + q.l1 * tr.outer[0] + q.l2 * tr.apex[0];
                    const double t = l0 * tr.bottom[1] + q.l1 * tr.outer[1] + q.l2 * tr.apex[1];
                    const Vec2 w = kap + mu * q.l2;  // zeta = apex barycentric
                    sys.rhs(row) += area * q.w * (*source)(x, t).dot(w);
                }
            }
        }
    }
    return sys;
}

TentSolveResult solve_tent_assembled(const Tent& tent, const TentInflow& inflow,
                                     const TentMaterial& material, const SourceFn* source,
                                     const BoundaryConstraint& bc) {
    const LocalSystem sys = assemble_tent_system(tent, inflow, material, source, bc);
    const int n = sys.n;
    const Eigen::MatrixXd a = sys.matrix.topLeftCorner(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const auto diag = lu.matrixLU().diagonal().cwiseAbs();
    TentSolveResult res;
    res.min_pivot = diag.minCoeff();
    res.max_pivot = diag.maxCoeff();
    if (!(res.min_pivot > res.max_pivot * 1e-14))
        throw NumericalError("tent system numerically singular (pivot ratio " +
                             std::to_string(res.min_pivot / res.max_pivot) + ")");
    const Eigen::VectorXd x = lu.solve(sys.rhs.head(n));
    res.u_const = Vec2(x[0], x[1]);
    if (n == 4) {
        res.apex = Vec2(x[2], x[3]);
    } else {
        const Vec2 dir = bc.kind == BoundaryConstraint::Kind::left_boundary ? Vec2(1.0, bc.z)
                                                                            : Vec2(1.0, -bc.z);
        res.apex = x[2] * dir;
    }
    return res;
}

}  // namespace tentwave
