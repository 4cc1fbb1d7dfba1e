#include "tentwave/problems.hpp"

#include <cmath>

namespace tentwave {

ProblemSpec pulse_problem(double T, double sharpness, double center) {
    ProblemSpec p;
    p.material.c = 1.0;
    p.T = T;
    p.z0 = p.z1 = 1.0;
    auto pulse = [sharpness, center](double x, double t) {
        const double d = (x + t) - center;
        return std::exp(-sharpness * d * d);
    };
    p.initial_u1 = [pulse](double x) { return pulse(x, 0.0); };
    p.initial_u2 = p.initial_u1;
    p.exact = [pulse](double x, double t) {
        const double v = pulse(x, t);
        return Vec2(v, v);
    };
    return p;
}

namespace {

ProblemSpec interface_problem(double T, double sharpness, double center,
                              std::vector<double> kappa1, std::vector<double> kappa2,
                              double z0, double z1) {
    ProblemSpec p;
    p.material.c = 1.0;
    p.material.kappa1 = std::move(kappa1);
    p.material.kappa2 = std::move(kappa2);
    p.T = T;
    p.z0 = z0;
    p.z1 = z1;
    const Material mat = p.material;
    auto region_of = [](double x) { return x < 0.5 ? 0 : 1; };
    auto g = [sharpness, center](double x) {
        return std::exp(-sharpness * (x - center) * (x - center));
    };
    p.initial_u1 = [mat, region_of, g](double x) {
        return mat.c / mat.kappa1[region_of(x)] * g(x);
    };
    p.initial_u2 = [mat, region_of, g](double x) {
        const int r = region_of(x);
        return -mat.c / std::sqrt(mat.kappa1[r] * mat.kappa2[r]) * g(x);
    };
    return p;
}

}  // namespace

ProblemSpec matched_interface_problem(double T, double sharpness, double center) {
    // Matched impedance at both ends: z = sqrt(kappa1/kappa2) = 1 in both
    // boundary regions.
    return interface_problem(T, sharpness, center, {2.0, 1.0}, {2.0, 1.0}, 1.0, 1.0);
}

ProblemSpec reflection_interface_problem(double T, double sharpness, double center) {
    return interface_problem(T, sharpness, center, {4.0, 0.5}, {1.0, 0.5}, 0.0, 0.0);
}

SpatialMesh two_region_mesh(double h_left, double h_right) {
    SpatialMesh m;
    const int nl = std::max(1, static_cast<int>(std::lround(0.5 / h_left)));
    const int nr = std::max(1, static_cast<int>(std::lround(0.5 / h_right)));
    for (int i = 0; i < nl; ++i) {
        m.vertices.push_back(0.5 * i / nl);
        m.regions.push_back(0);
    }
    for (int i = 0; i <= nr; ++i) {
        m.vertices.push_back(0.5 + 0.5 * i / nr);
        if (i < nr) m.regions.push_back(1);
    }
    return m;
}

}  // namespace tentwave
