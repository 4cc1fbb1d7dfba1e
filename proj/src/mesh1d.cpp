#include "tentwave/mesh1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

namespace tentwave {

double Material::wave_speed(int region) const {
    return c / std::sqrt(kappa1.at(region) * kappa2.at(region));
}

bool Material::homogeneous() const {
    auto is_one = [](double v) { return v == 1.0; };
    return std::all_of(kappa1.begin(), kappa1.end(), is_one) &&
           std::all_of(kappa2.begin(), kappa2.end(), is_one);
}

void Material::validate() const {
    if (!(c > 0.0)) throw ConfigError("material: c must be positive");
    if (kappa1.empty() || kappa1.size() != kappa2.size())
        throw ConfigError("material: kappa1/kappa2 must be nonempty and of equal size");
    for (std::size_t i = 0; i < kappa1.size(); ++i) {
        if (!(kappa1[i] > 0.0) || !(kappa2[i] > 0.0))
            throw ConfigError("material: kappa must be positive in region " + std::to_string(i));
    }
}

SpatialMesh SpatialMesh::uniform(double S, double h, int region) {
    if (!(S > 0.0) || !(h > 0.0)) throw ConfigError("uniform mesh: S and h must be positive");
    const int n = std::max(1, static_cast<int>(std::lround(S / h)));
    SpatialMesh m;
    m.vertices.resize(n + 1);
    for (int i = 0; i <= n; ++i) m.vertices[i] = S * static_cast<double>(i) / n;
    m.regions.assign(n, region);
    return m;
}

SpatialMesh SpatialMesh::from_json(const nlohmann::json& j) {
    SpatialMesh m;
    if (!j.contains("vertices")) throw ConfigError("mesh json: missing 'vertices'");
    m.vertices = j.at("vertices").get<std::vector<double>>();
    if (j.contains("regions"))
        m.regions = j.at("regions").get<std::vector<int>>();
    else
        m.regions.assign(m.vertices.empty() ? 0 : m.vertices.size() - 1, 0);
    return m;
}

nlohmann::json SpatialMesh::to_json() const {
    return {{"vertices", vertices}, {"regions", regions}};
}

void SpatialMesh::validate(int n_regions) const {
    if (vertices.size() < 2) throw ConfigError("mesh: needs at least 2 vertices");
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (!(vertices[i] > vertices[i - 1]))
            throw ConfigError("mesh: vertices must be strictly increasing at index " +
                              std::to_string(i));
    if (regions.size() != vertices.size() - 1)
        throw ConfigError("mesh: need one region index per cell");
    for (int r : regions)
        if (r < 0 || r >= n_regions)
            throw ConfigError("mesh: region index " + std::to_string(r) + " out of range");
}

const char* to_string(TentType t) {
    switch (t) {
        case TentType::I: return "I";
        case TentType::L: return "L";
        case TentType::R: return "R";
    }
    return "?";
}

double Tent::area() const {
    // Each triangle: half-width times pole height over two.
    return 0.5 * k * (h_l + h_r);
}

void Tent::validate_geometry() const {
    if (!(k > 0.0)) throw GeometryError("tent: pole height k must be positive");
    if (h_l < 0.0 || h_r < 0.0) throw GeometryError("tent: half-widths must be nonnegative");
    const bool left = h_l > 0.0, right = h_r > 0.0;
    switch (type) {
        case TentType::I:
            if (!left || !right) throw GeometryError("tent: Type I requires h_l > 0 and h_r > 0");
            break;
        case TentType::L:
            if (left || !right) throw GeometryError("tent: Type L requires h_l = 0, h_r > 0");
            break;
        case TentType::R:
            if (!left || right) throw GeometryError("tent: Type R requires h_r = 0, h_l > 0");
            break;
    }
}

bool cfl_admissible(const Tent& tent, double speed_left, double speed_right, double margin) {
    tent.validate_geometry();
    if (!(margin > 0.0 && margin <= 1.0)) throw ConfigError("cfl: margin must be in (0,1]");
    if (tent.has_right() && std::abs(speed_right * tent.k * tent.p_r) > margin * tent.h_r)
        return false;
    if (tent.has_left() && std::abs(speed_left * tent.k * tent.p_l) > margin * tent.h_l)
        return false;
    return true;
}

bool cfl_admissible(const Tent& tent, const SpatialMesh& mesh, const Material& material,
                    double margin) {
    const double sl =
        tent.has_left() ? material.wave_speed(mesh.regions.at(tent.cell_left)) : 0.0;
    const double sr =
        tent.has_right() ? material.wave_speed(mesh.regions.at(tent.cell_right)) : 0.0;
    return cfl_admissible(tent, sl, sr, margin);
}

double max_pole_height(int center_vertex, std::span<const double> front_times,
                       const SpatialMesh& mesh, const Material& material, double margin) {
    const int n = mesh.n_vertices();
    if (center_vertex < 0 || center_vertex >= n)
        throw GeometryError("max_pole_height: vertex out of range");
    if (n < 2) throw GeometryError("max_pole_height: isolated vertex");
    const double t0 = front_times[center_vertex];

    // Per side: apex may rise at most margin*h/c above the neighbor's front,
    // which keeps |c*k*p/h| = c*|apex - neighbor|/h within the margin.
    double kmax = std::numeric_limits<double>::infinity();
    if (center_vertex > 0) {
        const double h = mesh.cell_size(center_vertex - 1);
        const double cs = material.wave_speed(mesh.regions[center_vertex - 1]);
        kmax = std::min(kmax, (front_times[center_vertex - 1] - t0) + margin * h / cs);
    }
    if (center_vertex < n - 1) {
        const double h = mesh.cell_size(center_vertex);
        const double cs = material.wave_speed(mesh.regions[center_vertex]);
        kmax = std::min(kmax, (front_times[center_vertex + 1] - t0) + margin * h / cs);
    }
    return kmax;
}

}  // namespace tentwave
