#include "tentwave/tent_pitcher.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

namespace tentwave {

int TentMesh::n_triangles() const {
    int n = 0;
    for (const auto& t : tents) n += t.n_triangles();
    return n;
}

double TentMesh::total_area() const {
    double a = 0.0;
    for (const auto& t : tents) a += t.area();
    return a;
}

void TentMesh::validate_causality() const {
    std::vector<char> resolved(nodes.size(), 0);
    for (int id : initial_nodes) resolved.at(id) = 1;
    int idx = 0;
    for (const auto& t : tents) {
        auto need = [&](int id) {
            if (id < 0 || !resolved.at(id))
                throw Error("causality violated at tent " + std::to_string(idx));
        };
        need(t.node_bottom);
        if (t.has_left()) need(t.node_left);
        if (t.has_right()) need(t.node_right);
        if (t.node_apex < 0 || resolved.at(t.node_apex))
            throw Error("tent " + std::to_string(idx) + " lacks a fresh apex node");
        resolved[t.node_apex] = 1;
        ++idx;
    }
}

std::vector<int> TentMesh::final_front_nodes() const {
    std::vector<int> front = initial_nodes;
    for (const auto& t : tents) front.at(t.center_vertex) = t.node_apex;
    for (int id : front) {
        if (std::abs(nodes.at(id).t - total_height) > 1e-12 * std::max(1.0, total_height))
            throw Error("final front is not flat");
    }
    return front;
}

double TentMesh::min_triangle_angle() const {
    auto corner = [](double ax, double at, double bx, double bt, double cx, double ct) {
        const double ux = bx - ax, ut = bt - at, vx = cx - ax, vt = ct - at;
        const double dot = ux * vx + ut * vt;
        const double na = std::hypot(ux, ut), nb = std::hypot(vx, vt);
        return std::acos(std::clamp(dot / (na * nb), -1.0, 1.0));
    };
    double amin = 3.15;
    for (const auto& t : tents) {
        const double xb = t.x_center, tb = t.t_bottom, ta = t.t_bottom + t.k;
        auto tri_min = [&](double ox, double ot) {
            double m = corner(xb, tb, ox, ot, xb, ta);
            m = std::min(m, corner(ox, ot, xb, tb, xb, ta));
            return std::min(m, corner(xb, ta, xb, tb, ox, ot));
        };
        if (t.has_left()) amin = std::min(amin, tri_min(xb - t.h_l, t.corner_time_left()));
        if (t.has_right()) amin = std::min(amin, tri_min(xb + t.h_r, t.corner_time_right()));
    }
    return amin;
}

nlohmann::json TentMesh::to_json() const {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& n : nodes) verts.push_back({{"x", n.x}, {"t", n.t}});
    nlohmann::json tris = nlohmann::json::array();
    nlohmann::json jt = nlohmann::json::array();
    int order = 0;
    for (const auto& t : tents) {
        if (t.has_left()) tris.push_back({t.node_bottom, t.node_left, t.node_apex});
        if (t.has_right()) tris.push_back({t.node_bottom, t.node_right, t.node_apex});
        jt.push_back({{"type", to_string(t.type)},
                      {"center", t.center_vertex},
                      {"k", t.k},
                      {"h_l", t.h_l},
                      {"h_r", t.h_r},
                      {"p_l", t.p_l},
                      {"p_r", t.p_r},
                      {"order", order++}});
    }
    return {{"vertices", verts},
            {"triangles", tris},
            {"tents", jt},
            {"slab_height", slab_height},
            {"total_height", total_height},
            {"spatial_mesh", mesh.to_json()}};
}

namespace {

/// Builds the tent at `v` over the current front, with pole height k.
Tent make_front_tent(const SpatialMesh& mesh, int v, double k,
                     const std::vector<double>& front) {
    Tent t;
    t.center_vertex = v;
    t.x_center = mesh.vertices[v];
    t.t_bottom = front[v];
    t.k = k;
    const int n = mesh.n_vertices();
    const bool left = v > 0, right = v < n - 1;
    t.type = left && right ? TentType::I : (left ? TentType::R : TentType::L);
    const double apex = t.t_bottom + k;
    if (left) {
        t.h_l = mesh.cell_size(v - 1);
        t.p_l = (apex - front[v - 1]) / k;
        t.cell_left = v - 1;
    }
    if (right) {
        t.h_r = mesh.cell_size(v);
        t.p_r = (apex - front[v + 1]) / k;
        t.cell_right = v;
    }
    return t;
}

}  // namespace

TentMesh pitch_slab(const SpatialMesh& mesh, const Material& material, double slab_height,
                    double margin, std::uint64_t seed, long max_iterations) {
    material.validate();
    mesh.validate(material.n_regions());
    if (!(slab_height > 0.0)) throw ConfigError("pitch_slab: slab_height must be positive");
    const int n = mesh.n_vertices();
    if (max_iterations <= 0) {
        // Generous default: every pitch advances its vertex by at least
        // min(margin*h/c, remaining gap), so this bound is never tight.
        double min_step = std::numeric_limits<double>::infinity();
        for (int cell = 0; cell < mesh.n_cells(); ++cell)
            min_step = std::min(min_step, margin * mesh.cell_size(cell) /
                                              material.wave_speed(mesh.regions[cell]));
        max_iterations =
            16 + 4 * static_cast<long>(n) *
                     static_cast<long>(std::ceil(slab_height / min_step) + 1);
    }

    TentMesh tm;
    tm.mesh = mesh;
    tm.slab_height = slab_height;
    tm.total_height = slab_height;

    std::vector<double> front(n, 0.0);
    std::vector<int> front_node(n);
    for (int v = 0; v < n; ++v) {
        tm.nodes.push_back({mesh.vertices[v], 0.0, v});
        front_node[v] = v;
    }
    tm.initial_nodes = front_node;

    std::mt19937_64 rng(seed);
    std::vector<int> ties;
    long iter = 0;
    while (true) {
        double tmin = slab_height;
        for (int v = 0; v < n; ++v) tmin = std::min(tmin, front[v]);
        if (tmin >= slab_height) break;
        ties.clear();
        for (int v = 0; v < n; ++v)
            if (front[v] == tmin) ties.push_back(v);
        int v = ties.front();
        if (ties.size() > 1) {
            std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
            v = ties[pick(rng)];
        }

        const double kmax = max_pole_height(v, front, mesh, material, margin);
        const double remaining = slab_height - front[v];
        const bool clamped = remaining <= kmax;
        const double k = clamped ? remaining : kmax;
        if (!(k > 0.0))
            throw NumericalError("pitch_slab: no admissible pole at vertex " + std::to_string(v));
        const double apex_t = clamped ? slab_height : front[v] + k;

        Tent t = make_front_tent(mesh, v, k, front);
        if (t.has_left()) t.p_l = (apex_t - front[v - 1]) / k;
        if (t.has_right()) t.p_r = (apex_t - front[v + 1]) / k;
        if (!cfl_admissible(t, mesh, material, margin))
            throw NumericalError("pitch_slab: produced inadmissible tent at vertex " +
                                 std::to_string(v));

        t.node_bottom = front_node[v];
        if (t.has_left()) t.node_left = front_node[v - 1];
        if (t.has_right()) t.node_right = front_node[v + 1];
        t.node_apex = static_cast<int>(tm.nodes.size());
        tm.nodes.push_back({mesh.vertices[v], apex_t, v});
        front[v] = apex_t;
        front_node[v] = t.node_apex;
        tm.tents.push_back(t);

        if (++iter > max_iterations)
            throw NumericalError("pitch_slab: iteration cap exceeded (slab unreachable)");
    }
    return tm;
}

TentMesh stack_slabs(const TentMesh& slab, int n_slabs) {
    if (n_slabs < 1) throw ConfigError("stack_slabs: n_slabs must be >= 1");
    const std::vector<int> top = slab.final_front_nodes();  // throws if not flat
    if (n_slabs == 1) return slab;

    TentMesh out = slab;
    out.n_slabs = slab.n_slabs * n_slabs;
    out.total_height = slab.total_height * n_slabs;

    const int n_vertices = slab.mesh.n_vertices();
    std::vector<int> remap(slab.nodes.size());
    std::vector<int> interface = top;  // previous slab's top nodes, per vertex

    for (int s = 1; s < n_slabs; ++s) {
        const double shift = slab.total_height * s;
        for (std::size_t i = 0; i < slab.nodes.size(); ++i) remap[i] = -1;
        for (int v = 0; v < n_vertices; ++v) remap[slab.initial_nodes[v]] = interface[v];
        for (std::size_t i = 0; i < slab.nodes.size(); ++i) {
            if (remap[i] >= 0) continue;
            remap[i] = static_cast<int>(out.nodes.size());
            out.nodes.push_back({slab.nodes[i].x, slab.nodes[i].t + shift, slab.nodes[i].vertex});
        }
        for (const Tent& t0 : slab.tents) {
            Tent t = t0;
            t.node_bottom = remap[t0.node_bottom];
            if (t0.node_left >= 0) t.node_left = remap[t0.node_left];
            if (t0.node_right >= 0) t.node_right = remap[t0.node_right];
            t.node_apex = remap[t0.node_apex];
            t.t_bottom = out.nodes[t.node_bottom].t;  // keep node times canonical
            out.tents.push_back(t);
        }
        for (int v = 0; v < n_vertices; ++v) interface[v] = remap[top[v]];
    }
    return out;
}

TentMesh uniform_stencil_mesh(double S, double h, double k, int n_levels, double margin,
                              double c) {
    if (!(S > 0.0) || !(h > 0.0) || !(k > 0.0))
        throw ConfigError("uniform_stencil_mesh: S, h, k must be positive");
    if (n_levels < 1) throw ConfigError("uniform_stencil_mesh: n_levels must be >= 1");
    const double a = k / h;
    if (std::abs(a * c) > margin)
        throw ConfigError("uniform_stencil_mesh: |ac| exceeds the CFL margin");
    const long m_count = std::lround(2.0 * S / h);
    if (m_count < 2 || std::abs(m_count * h / 2.0 - S) > 1e-12 * S)
        throw ConfigError("uniform_stencil_mesh: S must be a multiple of h/2");
    const int M = static_cast<int>(m_count);  // lattice spacing h/2, vertices 0..M

    TentMesh tm;
    tm.mesh.vertices.resize(M + 1);
    for (int m = 0; m <= M; ++m) tm.mesh.vertices[m] = S * m / static_cast<double>(M);
    tm.mesh.regions.assign(M, 0);
    tm.slab_height = tm.total_height = n_levels * k / 2.0;
    tm.n_slabs = 1;

    std::vector<double> front(M + 1, 0.0);
    std::vector<int> front_node(M + 1);
    for (int m = 0; m <= M; ++m) {
        tm.nodes.push_back({tm.mesh.vertices[m], 0.0, m});
        front_node[m] = m;
    }
    tm.initial_nodes = front_node;

    Material mat;
    mat.c = c;
    for (int level = 1; level <= n_levels; ++level) {
        const double t_level = level * k / 2.0;
        const int parity = level % 2;
        for (int m = 0; m <= M; ++m) {
            if (m % 2 != parity) continue;
            if (level == 1 && (m == 0 || m == M)) continue;  // boundaries start at level 2
            Tent t = make_front_tent(tm.mesh, m, t_level - front[m], front);
            if (!cfl_admissible(t, tm.mesh, mat, margin))
                throw NumericalError("uniform_stencil_mesh: inadmissible tent");
            t.node_bottom = front_node[m];
            if (t.has_left()) t.node_left = front_node[m - 1];
            if (t.has_right()) t.node_right = front_node[m + 1];
            t.node_apex = static_cast<int>(tm.nodes.size());
            tm.nodes.push_back({tm.mesh.vertices[m], t_level, m});
            front[m] = t_level;
            front_node[m] = t.node_apex;
            tm.tents.push_back(t);
        }
    }
    return tm;
}

}  // namespace tentwave
