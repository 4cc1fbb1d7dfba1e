#pragma once

#include <array>
#include <cstddef>
#include <functional>

namespace tentwave::quad {

struct Node1D {
    double x;  // abscissa in (0,1)
    double w;  // weight, sums to 1
};

/// Gauss-Legendre rules mapped to (0,1). gauss<N>() is exact for degree 2N-1.
template <int N>
constexpr std::array<Node1D, N> gauss();

template <>
constexpr std::array<Node1D, 2> gauss<2>() {
    constexpr double d = 0.28867513459481288225;  // 1/(2*sqrt(3))
    return {{{0.5 - d, 0.5}, {0.5 + d, 0.5}}};
}

template <>
constexpr std::array<Node1D, 3> gauss<3>() {
    constexpr double d = 0.38729833462074168852;  // sqrt(3/5)/2
    return {{{0.5 - d, 5.0 / 18.0}, {0.5, 8.0 / 18.0}, {0.5 + d, 5.0 / 18.0}}};
}

template <>
constexpr std::array<Node1D, 5> gauss<5>() {
    // nodes (1±x_i)/2 for the standard [-1,1] 5-point rule
    return {{{0.046910077030668004, 0.11846344252809454},
             {0.230765344947158450, 0.23931433524968324},
             {0.5, 0.28444444444444444},
             {0.769234655052841550, 0.23931433524968324},
             {0.953089922969331996, 0.11846344252809454}}};
}

template <>
constexpr std::array<Node1D, 8> gauss<8>() {
    return {{{0.019855071751231884, 0.050614268145188130},
             {0.101666761293186630, 0.111190517226687235},
             {0.237233795041835507, 0.156853322938943644},
             {0.408282678752175098, 0.181341891689180991},
             {0.591717321247824902, 0.181341891689180991},
             {0.762766204958164493, 0.156853322938943644},
             {0.898333238706813370, 0.111190517226687235},
             {0.980144928248768116, 0.050614268145188130}}};
}

/// Integrate f over [a,b] with an n-point Gauss rule.
template <int N, class F>
double integrate(F&& f, double a, double b) {
    double s = 0.0;
    for (const auto& n : gauss<N>()) s += n.w * f(a + (b - a) * n.x);
    return (b - a) * s;
}

/// Composite integration over [a,b] with `panels` uniform panels.
template <int N, class F>
double integrate_composite(F&& f, double a, double b, int panels) {
    double s = 0.0;
    const double dx = (b - a) / panels;
    for (int i = 0; i < panels; ++i) s += integrate<N>(f, a + i * dx, a + (i + 1) * dx);
    return s;
}

struct NodeTri {
    double l1, l2;  // barycentric coordinates (third is 1-l1-l2)
    double w;       // weights sum to 1 (multiply by triangle area)
};

/// Degree-2 exact 3-point triangle rule (interior points).
constexpr std::array<NodeTri, 3> tri3() {
    return {{{1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0},
             {2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0},
             {1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0}}};
}

/// Integrate f(x,t) over the triangle (P0,P1,P2) with the 3-point rule.
template <class F>
double integrate_tri3(F&& f, const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                      const std::array<double, 2>& p2) {
    const double jac = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double area = 0.5 * (jac < 0 ? -jac : jac);
    double s = 0.0;
    for (const auto& n : tri3()) {
        const double l0 = 1.0 - n.l1 - n.l2;
        s += n.w * f(l0 * p0[0] + n.l1 * p1[0] + n.l2 * p2[0],
                     l0 * p0[1] + n.l1 * p1[1] + n.l2 * p2[1]);
    }
    return area * s;
}

/// High-order triangle integration via the collapsed (Duffy) map with an
/// NxN tensor Gauss grid; exact for polynomials of degree <= 2N-2.
template <int N, class F>
double integrate_tri_duffy(F&& f, const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                           const std::array<double, 2>& p2) {
    const double jac = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double area2 = (jac < 0 ? -jac : jac);
    double s = 0.0;
    for (const auto& nu : gauss<N>()) {
        for (const auto& nv : gauss<N>()) {
            const double l1 = nu.x;
            const double l2 = nv.x * (1.0 - nu.x);  // Duffy collapse
            const double l0 = 1.0 - l1 - l2;
            s += nu.w * nv.w * (1.0 - nu.x) *
                 f(l0 * p0[0] + l1 * p1[0] + l2 * p2[0], l0 * p0[1] + l1 * p1[1] + l2 * p2[1]);
        }
    }
    return area2 * s;
}

}  // namespace tentwave::quad
