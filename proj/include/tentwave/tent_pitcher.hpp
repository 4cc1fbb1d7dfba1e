#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tentwave/mesh1d.hpp"

namespace tentwave {

/// A space-time vertex of the tent mesh. Every node is either an initial
/// node (t = 0) or the apex of exactly one tent.
struct SpaceTimeNode {
    double x = 0.0;
    double t = 0.0;
    int vertex = -1;  // spatial vertex index
};

/// Causally ordered tent mesh over [0, S] x [0, total_height]. Tents appear
/// in an order satisfying the downwind property: every tent's inflow nodes
/// are initial nodes or apexes of earlier tents.
struct TentMesh {
    SpatialMesh mesh;
    std::vector<SpaceTimeNode> nodes;
    std::vector<Tent> tents;            // in causal order
    std::vector<int> initial_nodes;     // node id per spatial vertex at t = 0
    double slab_height = 0.0;           // height of one slab
    double total_height = 0.0;
    int n_slabs = 1;

    int n_triangles() const;
    double total_area() const;
    /// Mesh-quality statistic: smallest triangle corner angle (radians).
    double min_triangle_angle() const;
    /// Replays the enumeration and checks every tent reads only resolved
    /// nodes and writes a fresh apex. Throws Error on violation.
    void validate_causality() const;
    /// Node ids of the final (flat) front, one per vertex; throws if the
    /// final front is not flat.
    std::vector<int> final_front_nodes() const;

    nlohmann::json to_json() const;
};

/// Advancing-front mesher for one time slab: repeatedly pitches a tent at
/// the lowest front vertex (ties broken by a seeded RNG), clamping poles so
/// the final front is exactly flat at slab_height.
TentMesh pitch_slab(const SpatialMesh& mesh, const Material& material, double slab_height,
                    double margin, std::uint64_t seed, long max_iterations = 0);

/// Concatenates n_slabs time-shifted copies of a flat-topped slab; the copies
/// share the interface nodes, so the result marches straight through.
TentMesh stack_slabs(const TentMesh& slab, int n_slabs);

/// The uniform lattice mesh of the stencil figure: spatial vertices at
/// spacing h/2, tent poles of height k with mid-pole outflow corners, and a
/// bootstrap row of half-height tents. n_levels counts time levels of k/2;
/// level nu holds apexes at vertices of parity nu mod 2.
TentMesh uniform_stencil_mesh(double S, double h, double k, int n_levels, double margin = 0.99,
                              double c = 1.0);

}  // namespace tentwave
