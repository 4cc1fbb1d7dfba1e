#include "tentwave/marcher.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "tentwave/quadrature.hpp"

namespace tentwave {

void ProblemSpec::validate() const {
    material.validate();
    if (!(T > 0.0)) throw ConfigError("problem: T must be positive");
    if (z0 < 0.0 || z1 < 0.0) throw ConfigError("problem: impedance parameters must be >= 0");
    if (!initial_u1 || !initial_u2) throw ConfigError("problem: initial data not set");
}

Solution::Solution(std::shared_ptr<const TentMesh> mesh, std::vector<Vec2> nodal)
    : mesh_(std::move(mesh)), nodal_(std::move(nodal)) {
    const auto& tm = *mesh_;
    cell_tris_.resize(tm.mesh.n_cells());
    max_span_.assign(tm.mesh.n_cells(), 0.0);
    auto add = [&](int cell, int n0, int n1, int n2) {
        const double t0 = tm.nodes[n0].t, t1 = tm.nodes[n1].t, t2 = tm.nodes[n2].t;
        TriRef r{n0, n1, n2, std::min({t0, t1, t2}), std::max({t0, t1, t2})};
        max_span_[cell] = std::max(max_span_[cell], r.t_max - r.t_min);
        cell_tris_[cell].push_back(r);
    };
    for (const auto& t : tm.tents) {
        if (t.has_left()) add(t.cell_left, t.node_bottom, t.node_left, t.node_apex);
        if (t.has_right()) add(t.cell_right, t.node_bottom, t.node_right, t.node_apex);
    }
    for (auto& v : cell_tris_)
        std::sort(v.begin(), v.end(),
                  [](const TriRef& a, const TriRef& b) { return a.t_min < b.t_min; });
}

bool Solution::locate(int cell, double x, double t, Vec2& out) const {
    const auto& tris = cell_tris_[cell];
    auto it = std::upper_bound(tris.begin(), tris.end(), t,
                               [](double v, const TriRef& r) { return v < r.t_min; });
    const double lo = t - max_span_[cell] - 1e-12 * (1.0 + std::abs(t));
    const auto& nodes = mesh_->nodes;
    while (it != tris.begin()) {
        --it;
        if (it->t_min < lo) break;
        if (t > it->t_max + 1e-12 * (1.0 + std::abs(t))) continue;
        const auto& a = nodes[it->n0];
        const auto& b = nodes[it->n1];
        const auto& c = nodes[it->n2];
        const double det = (b.x - a.x) * (c.t - a.t) - (c.x - a.x) * (b.t - a.t);
        const double l1 = ((x - a.x) * (c.t - a.t) - (c.x - a.x) * (t - a.t)) / det;
        const double l2 = ((b.x - a.x) * (t - a.t) - (x - a.x) * (b.t - a.t)) / det;
        const double l0 = 1.0 - l1 - l2;
        const double tol = 1e-10;
        if (l0 >= -tol && l1 >= -tol && l2 >= -tol) {
            out = l0 * nodal_[it->n0] + l1 * nodal_[it->n1] + l2 * nodal_[it->n2];
            return true;
        }
    }
    return false;
}

Vec2 Solution::eval(double x, double t) const {
    const auto& verts = mesh_->mesh.vertices;
    if (x < verts.front() - 1e-12 || x > verts.back() + 1e-12 || t < -1e-12 ||
        t > mesh_->total_height * (1.0 + 1e-12) + 1e-12)
        throw Error("eval: point outside the meshed slab");
    x = std::clamp(x, verts.front(), verts.back());
    int cell = static_cast<int>(std::upper_bound(verts.begin(), verts.end(), x) -
                                verts.begin()) - 1;
    cell = std::clamp(cell, 0, mesh_->mesh.n_cells() - 1);
    Vec2 out;
    if (locate(cell, x, t, out)) return out;
    // Points on a cell boundary may fall into the neighbor's triangles.
    if (cell > 0 && locate(cell - 1, x, t, out)) return out;
    if (cell + 1 < mesh_->mesh.n_cells() && locate(cell + 1, x, t, out)) return out;
    throw Error("eval: no containing triangle at (x=" + std::to_string(x) +
                ", t=" + std::to_string(t) + ")");
}

SnapshotTrace Solution::snapshot(double t) const {
    if (t < 0.0 || t > mesh_->total_height * (1.0 + 1e-12))
        throw Error("snapshot: time outside the meshed slab");
    SnapshotTrace s;
    s.t = t;
    for (double x : mesh_->mesh.vertices) {
        const Vec2 v = eval(x, t);
        s.x.push_back(x);
        s.u1.push_back(v[0]);
        s.u2.push_back(v[1]);
    }
    return s;
}

std::vector<double> Solution::trace_breakpoints(int cell, double t) const {
    const auto& nodes = mesh_->nodes;
    const double xl = mesh_->mesh.vertices[cell], xr = mesh_->mesh.vertices[cell + 1];
    std::vector<double> cuts{xl, xr};
    for (const auto& r : cell_tris_[cell]) {
        if (t < r.t_min || t > r.t_max) continue;
        // x-interval of the line t within the triangle: intersect each edge.
        const std::array<const SpaceTimeNode*, 3> p{&nodes[r.n0], &nodes[r.n1], &nodes[r.n2]};
        for (int i = 0; i < 3; ++i) {
            const auto *a = p[i], *b = p[(i + 1) % 3];
            if ((a->t - t) * (b->t - t) > 0.0 || a->t == b->t) continue;
            const double s = (t - a->t) / (b->t - a->t);
            cuts.push_back(a->x + s * (b->x - a->x));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double a, double b) { return b - a < 1e-14 * (xr - xl); }),
               cuts.end());
    if (cuts.back() > xr) cuts.back() = xr;
    if (cuts.front() < xl) cuts.front() = xl;
    return cuts;
}

double Solution::l2_error(const SpaceTimeFn& exact, double t) const {
    double acc = 0.0;
    for (int cell = 0; cell < mesh_->mesh.n_cells(); ++cell) {
        const auto cuts = trace_breakpoints(cell, t);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            acc += quad::integrate<3>(
                [&](double x) { return (eval(x, t) - exact(x, t)).squaredNorm(); }, cuts[i],
                cuts[i + 1]);
        }
    }
    return std::sqrt(acc);
}

nlohmann::json Solution::nodal_history_json() const {
    nlohmann::json rows = nlohmann::json::array();
    const auto& nodes = mesh_->nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        rows.push_back({{"x", nodes[i].x},
                        {"t", nodes[i].t},
                        {"u1", nodal_[i][0]},
                        {"u2", nodal_[i][1]}});
    return {{"nodes", rows}};
}

Solution march(std::shared_ptr<const TentMesh> mesh, const ProblemSpec& problem,
               bool use_closed_form) {
    problem.validate();
    const TentMesh& tm = *mesh;
    tm.mesh.validate(problem.material.n_regions());

    std::vector<Vec2> nodal(tm.nodes.size(), Vec2::Zero());
    std::vector<char> resolved(tm.nodes.size(), 0);
    for (int id : tm.initial_nodes) {
        const double x = tm.nodes[id].x;
        nodal[id] = Vec2(problem.initial_u1(x), problem.initial_u2(x));
        resolved[id] = 1;
    }

    const bool homog = problem.material.homogeneous();
    const bool no_source = !problem.source;
    const double c = problem.material.c;

    int idx = 0;
    for (const Tent& t : tm.tents) {
        auto read = [&](int id) -> Vec2 {
            if (id < 0 || !resolved[id])
                throw NumericalError("march: unresolved inflow node (ordering violation)", idx);
            return nodal[id];
        };
        TentInflow in;
        in.bottom = read(t.node_bottom);
        if (t.has_left()) in.left = read(t.node_left);
        if (t.has_right()) in.right = read(t.node_right);

        BoundaryConstraint bc = BoundaryConstraint::none();
        if (t.type == TentType::L) bc = BoundaryConstraint::left(problem.z0);
        if (t.type == TentType::R) bc = BoundaryConstraint::right(problem.z1);

        Vec2 apex;
        if (use_closed_form && homog && no_source) {
            apex = t.type == TentType::I ? solve_tent_closed_form(t, in, c)
                                         : solve_tent_boundary_closed_form(t, in, c, bc);
        } else {
            const TentMaterial local = local_material(t, tm.mesh, problem.material);
            const SourceFn* src = problem.source ? &problem.source : nullptr;
            try {
                apex = solve_tent_assembled(t, in, local, src, bc).apex;
            } catch (NumericalError& e) {
                throw NumericalError(std::string(e.what()) + " at tent " + std::to_string(idx),
                                     idx);
            }
        }
        if (resolved[t.node_apex])
            throw NumericalError("march: apex node already resolved (mesh defect)", idx);
        nodal[t.node_apex] = apex;
        resolved[t.node_apex] = 1;
        ++idx;
    }
    return Solution(std::move(mesh), std::move(nodal));
}

}  // namespace tentwave
