#include "tentwave/ctcs_ref.hpp"

#include <algorithm>
#include <cmath>

#include "tentwave/quadrature.hpp"

namespace tentwave {

UniformGrid UniformGrid::create(double S, double h, double k, double c) {
    if (!(S > 0.0) || !(h > 0.0) || !(k > 0.0) || !(c > 0.0))
        throw ConfigError("uniform grid: S, h, k, c must be positive");
    const long m = std::lround(2.0 * S / h);
    if (m < 4 || m % 2 != 0 || std::abs(m * h / 2.0 - S) > 1e-10 * S)
        throw ConfigError("uniform grid: 2S/h must be an even integer >= 4");
    UniformGrid g{S, h, k, c, static_cast<int>(m)};
    if (!(std::abs(g.a() * c) < 1.0))
        throw ConfigError("uniform grid: CFL violated, |k/h * c| must be < 1");
    return g;
}

double ErrorRecord::max_error() const {
    double m = 0.0;
    for (double e : err) m = std::max(m, e);
    return m;
}

namespace {

/// L2 norm of the piecewise-linear interpolant of nodal values `e` placed at
/// x(idx[0..n-1]); integrates exactly per segment.
double pw_linear_l2_sq(const std::vector<double>& xs, const std::vector<double>& es) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < es.size(); ++i) {
        const double a = es[i], b = es[i + 1], dx = xs[i + 1] - xs[i];
        acc += dx * (a * a + a * b + b * b) / 3.0;
    }
    return acc;
}

Vec2 boundary_update(const UniformGrid& g, bool left, double z, const Vec2& bottom,
                     const Vec2& corner, double k) {
    Tent t;
    t.center_vertex = 0;
    t.k = k;
    if (left) {
        t.type = TentType::L;
        t.h_r = g.h / 2.0;
        t.p_r = 0.5;
    } else {
        t.type = TentType::R;
        t.h_l = g.h / 2.0;
        t.p_l = 0.5;
    }
    TentInflow in;
    in.bottom = bottom;
    (left ? in.right : in.left) = corner;
    const auto bc = left ? BoundaryConstraint::left(z) : BoundaryConstraint::right(z);
    return solve_tent_boundary_closed_form(t, in, g.c, bc);
}

}  // namespace

LeapfrogScheme::LeapfrogScheme(const UniformGrid& grid, double z0, double z1)
    : grid_(grid), z0_(z0), z1_(z1) {
    if (!(std::abs(grid.a() * grid.c) < 1.0)) throw ConfigError("leapfrog: CFL violated");
    const int n = grid_.M + 1;
    u_prev_.assign(n, 0.0);
    v_prev_.assign(n, 0.0);
    u_cur_.assign(n, 0.0);
    v_cur_.assign(n, 0.0);
}

void LeapfrogScheme::initialize(const ScalarFn& u1, const ScalarFn& u2) {
    std::vector<double> u(grid_.M + 1), v(grid_.M + 1);
    for (int m = 0; m <= grid_.M; ++m) {
        u[m] = u1(grid_.x(m));
        v[m] = u2(grid_.x(m));
    }
    initialize_nodal(std::move(u), std::move(v));
}

void LeapfrogScheme::initialize_nodal(std::vector<double> u, std::vector<double> v) {
    if (static_cast<int>(u.size()) != grid_.M + 1 || v.size() != u.size())
        throw ConfigError("leapfrog: nodal data must cover every lattice vertex");
    u_prev_ = std::move(u);
    v_prev_ = std::move(v);
    level_ = 0;
    u_cur_ = u_prev_;
    v_cur_ = v_prev_;
    bootstrap_level1();
}

void LeapfrogScheme::bootstrap_level1() {
    // Half-height bootstrap tents at interior odd vertices (level 1).
    const double ach = grid_.a() * grid_.c / 2.0;
    std::vector<double> u(grid_.M + 1, 0.0), v(grid_.M + 1, 0.0);
    for (int m = 1; m < grid_.M; m += 2) {
        u[m] = u_prev_[m] + ach * (v_prev_[m + 1] - v_prev_[m - 1]);
        v[m] = v_prev_[m] + ach * (u_prev_[m + 1] - u_prev_[m - 1]);
    }
    u_cur_ = std::move(u);
    v_cur_ = std::move(v);
    level_ = 1;
}

void LeapfrogScheme::advance() {
    const int next = level_ + 1;
    const int parity = next % 2;
    const double ac = grid_.a() * grid_.c;
    std::vector<double> u(grid_.M + 1, 0.0), v(grid_.M + 1, 0.0);
    for (int m = parity; m <= grid_.M; m += 2) {
        if (m == 0) {
            const Vec2 a = boundary_update(grid_, true, z0_, {u_prev_[0], v_prev_[0]},
                                           {u_cur_[1], v_cur_[1]}, grid_.k);
            u[0] = a[0];
            v[0] = a[1];
        } else if (m == grid_.M) {
            const Vec2 a = boundary_update(grid_, false, z1_, {u_prev_[m], v_prev_[m]},
                                           {u_cur_[m - 1], v_cur_[m - 1]}, grid_.k);
            u[m] = a[0];
            v[m] = a[1];
        } else {
            u[m] = u_prev_[m] + ac * (v_cur_[m + 1] - v_cur_[m - 1]);
            v[m] = v_prev_[m] + ac * (u_cur_[m + 1] - u_cur_[m - 1]);
        }
    }
    u_prev_ = std::move(u_cur_);
    v_prev_ = std::move(v_cur_);
    u_cur_ = std::move(u);
    v_cur_ = std::move(v);
    level_ = next;
}

ErrorRecord LeapfrogScheme::run_with_errors(double T, const SpaceTimeFn& exact,
                                            int sample_every) {
    ErrorRecord rec;
    auto sample = [&]() {
        // Current-parity vertices carry values exactly at this level's time.
        std::vector<double> xs, e1, e2;
        const int parity = level_ % 2;
        const double t = time();
        for (int m = (level_ == 0 ? 0 : parity); m <= grid_.M; m += (level_ == 0 ? 1 : 2)) {
            const Vec2 ex = exact(grid_.x(m), t);
            xs.push_back(grid_.x(m));
            e1.push_back(u_cur_[m] - ex[0]);
            e2.push_back(v_cur_[m] - ex[1]);
        }
        rec.t.push_back(t);
        rec.err.push_back(std::sqrt(pw_linear_l2_sq(xs, e1) + pw_linear_l2_sq(xs, e2)));
    };
    sample();
    while (time() < T - 1e-12) {
        advance();
        if (level_ % sample_every == 0) sample();
    }
    return rec;
}

CtcsScheme::CtcsScheme(const UniformGrid& grid, double z0, double z1)
    : grid_(grid), z0_(z0), z1_(z1) {
    if (!(std::abs(grid.a() * grid.c) < 1.0)) throw ConfigError("ctcs: CFL violated");
    u_.assign(grid_.M + 1, 0.0);
    v_.assign(grid_.M + 1, 0.0);
    v_prev_.assign(grid_.M + 1, 0.0);
}

void CtcsScheme::initialize(const ScalarFn& u1, const ScalarFn& u2) {
    // U at even vertices (t = 0); V bootstrapped at odd vertices to t = k/2
    // by the same half-step used by the leapfrog bootstrap.
    std::vector<double> u0(grid_.M + 1, 0.0), v0(grid_.M + 1, 0.0);
    for (int m = 0; m <= grid_.M; ++m) {
        u0[m] = u1(grid_.x(m));
        v0[m] = u2(grid_.x(m));
    }
    const double ach = grid_.a() * grid_.c / 2.0;
    u_.assign(grid_.M + 1, 0.0);
    v_.assign(grid_.M + 1, 0.0);
    for (int m = 0; m <= grid_.M; m += 2) u_[m] = u0[m];
    for (int m = 1; m < grid_.M; m += 2)
        v_[m] = v0[m] + ach * (u0[m + 1] - u0[m - 1]);
    v_prev_ = v_;  // placeholder until the first full V step
    level_u_ = 0;
    level_v_ = 1;
}

void CtcsScheme::advance_u() {
    const double ac = grid_.a() * grid_.c;
    std::vector<double> u(grid_.M + 1, 0.0);
    u[0] = ((1.0 - ac * z0_) * u_[0] + 2.0 * ac * v_[1]) / (1.0 + ac * z0_);
    for (int m = 2; m < grid_.M; m += 2) u[m] = u_[m] + ac * (v_[m + 1] - v_[m - 1]);
    u[grid_.M] =
        ((1.0 - ac * z1_) * u_[grid_.M] - 2.0 * ac * v_[grid_.M - 1]) / (1.0 + ac * z1_);
    u_ = std::move(u);
    level_u_ += 2;
}

void CtcsScheme::advance_v() {
    const double ac = grid_.a() * grid_.c;
    std::vector<double> v(grid_.M + 1, 0.0);
    for (int m = 1; m < grid_.M; m += 2) v[m] = v_[m] + ac * (u_[m + 1] - u_[m - 1]);
    v_prev_ = std::move(v_);
    v_ = std::move(v);
    level_v_ += 2;
}

ErrorRecord CtcsScheme::run_with_errors(double T, const SpaceTimeFn& exact, int sample_every) {
    if (sample_every % 2 != 0)
        throw ConfigError("ctcs: sample interval must be even (U levels)");
    ErrorRecord rec;
    auto sample_named = [&](int ulevel, const std::vector<double>& vmid) {
        const double t = grid_.time(ulevel);
        std::vector<double> xs1, e1, xs2, e2;
        for (int m = 0; m <= grid_.M; m += 2) {
            xs1.push_back(grid_.x(m));
            e1.push_back(u_[m] - exact(grid_.x(m), t)[0]);
        }
        for (int m = 1; m < grid_.M; m += 2) {
            xs2.push_back(grid_.x(m));
            e2.push_back(vmid[m] - exact(grid_.x(m), t)[1]);
        }
        rec.t.push_back(t);
        rec.err.push_back(std::sqrt(pw_linear_l2_sq(xs1, e1) + pw_linear_l2_sq(xs2, e2)));
    };
    int since_sample = 0;
    while (grid_.time(level_u_) < T - 1e-12) {
        advance_u();
        advance_v();
        since_sample += 2;
        if (since_sample >= sample_every) {
            // V at the U level: average of the levels on either side.
            std::vector<double> vmid(grid_.M + 1, 0.0);
            for (int m = 1; m < grid_.M; m += 2) vmid[m] = 0.5 * (v_prev_[m] + v_[m]);
            sample_named(level_u_, vmid);
            since_sample = 0;
        }
    }
    return rec;
}

ErrorRecord ctcs_run(const UniformGrid& grid, const ProblemSpec& problem, int sample_every) {
    problem.validate();
    if (!problem.material.homogeneous())
        throw ConfigError("ctcs: only homogeneous material is supported");
    if (grid.c != problem.material.c) throw ConfigError("ctcs: grid and problem disagree on c");
    if (!problem.exact) throw ConfigError("ctcs: error record requires an exact solution");
    CtcsScheme scheme(grid, problem.z0, problem.z1);
    scheme.initialize(problem.initial_u1, problem.initial_u2);
    return scheme.run_with_errors(problem.T, *problem.exact, sample_every);
}

}  // namespace tentwave
