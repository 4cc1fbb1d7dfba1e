#include "tentwave/verify.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "tentwave/ctcs_ref.hpp"
#include "tentwave/problems.hpp"
#include "tentwave/quadrature.hpp"

namespace tentwave {

namespace {

/// Integrate f over (0,1) with the panel layout from opts: uniform panels,
/// optionally replaced by geometric grading toward x = 0.
template <class F>
double line_integral(F&& f, const TraceOptions& opts) {
    if (opts.grade_depth <= 0)
        return quad::integrate_composite<5>(f, 0.0, 1.0, std::max(1, opts.panels));
    double acc = 0.0;
    double hi = 1.0;
    for (int j = 0; j < opts.grade_depth; ++j) {
        const double lo = hi / 2.0;
        acc += quad::integrate<5>(f, lo, hi);
        hi = lo;
    }
    acc += quad::integrate<5>(f, 0.0, hi);  // innermost sliver
    return acc;
}

}  // namespace

TraceReport trace_check(const Fn2& w, const Fn2& wt, const TraceOptions& opts) {
    TraceReport r;
    auto ti = [&](double x) { return w(x, 0.0); };
    auto to = [&](double x) { return w(x, x); };
    r.weighted_inflow = line_integral([&](double x) { return x * ti(x) * ti(x); }, opts);
    r.weighted_outflow = line_integral([&](double x) { return x * to(x) * to(x); }, opts);
    r.difference = line_integral(
        [&](double x) {
            const double d = ti(x) - to(x);
            return d * d / x;
        },
        opts);
    r.unweighted_inflow = line_integral([&](double x) { return ti(x) * ti(x); }, opts);
    const int inner = std::max(4, opts.panels / 8);
    r.graph_norm_sq = line_integral(
        [&](double x) {
            return quad::integrate_composite<5>(
                [&](double t) {
                    const double a = w(x, t), b = wt(x, t);
                    return a * a + b * b;
                },
                0.0, x, inner);
        },
        opts);
    r.ratio = (r.weighted_inflow + r.weighted_outflow + r.difference) / r.graph_norm_sq;
    return r;
}

Poly2 Poly2::monomial(int i, int j, double coeff) {
    Poly2 p;
    p.c_.at(i).at(j) = coeff;
    return p;
}

double Poly2::eval(double x, double t) const {
    double acc = 0.0;
    double xi = 1.0;
    for (int i = 0; i < 6; ++i) {
        double tj = 1.0;
        double row = 0.0;
        for (int j = 0; j < 6; ++j) {
            row += c_[i][j] * tj;
            tj *= t;
        }
        acc += xi * row;
        xi *= x;
    }
    return acc;
}

Poly2 Poly2::dt() const {
    Poly2 p;
    for (int i = 0; i < 6; ++i)
        for (int j = 1; j < 6; ++j) p.c_[i][j - 1] = j * c_[i][j];
    return p;
}

int Poly2::max_degree() const {
    int d = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (c_[i][j] != 0.0) d = std::max(d, i + j);
    return d;
}

Tent reference_triangle_tent() {
    Tent t;
    t.center_vertex = 1;
    t.type = TentType::R;
    t.x_center = 1.0;
    t.t_bottom = 0.0;
    t.k = 1.0;
    t.h_l = 1.0;
    t.p_l = 1.0;
    return t;
}

double ibp_identity_check(const Poly2& w, const Poly2& v, const Tent& tent) {
    tent.validate_geometry();
    const Poly2 wt = w.dt(), vt = v.dt();
    auto volume_integrand = [&](double x, double t) {
        return wt.eval(x, t) * v.eval(x, t) + w.eval(x, t) * vt.eval(x, t);
    };

    const double xc = tent.x_center, tb = tent.t_bottom, ta = tent.t_bottom + tent.k;
    double volume = 0.0, boundary = 0.0;

    auto add_side = [&](double x_out, double t_corner) {
        volume += quad::integrate_tri_duffy<6>(volume_integrand, {xc, tb}, {x_out, t_corner},
                                               {xc, ta});
        // Inflow graph: corner -> pole bottom; outflow graph: corner -> apex.
        auto gi = [&](double x) {
            const double s = (x - x_out) / (xc - x_out);
            return t_corner + s * (tb - t_corner);
        };
        auto go = [&](double x) {
            const double s = (x - x_out) / (xc - x_out);
            return t_corner + s * (ta - t_corner);
        };
        const double lo = std::min(x_out, xc), hi = std::max(x_out, xc);
        boundary += quad::integrate<8>(
            [&](double x) {
                return w.eval(x, go(x)) * v.eval(x, go(x)) - w.eval(x, gi(x)) * v.eval(x, gi(x));
            },
            lo, hi);
    };
    if (tent.has_left()) add_side(xc - tent.h_l, tent.corner_time_left());
    if (tent.has_right()) add_side(xc + tent.h_r, tent.corner_time_right());
    return std::abs(volume - boundary);
}

NonclosedRow nonclosed_sum_demo(int n) {
    if (n < 2) throw ConfigError("nonclosed_sum_demo: n must be >= 2");
    NonclosedRow row;
    row.n = n;
    // chi_n - 1 = -1 on the strip x < 1/n of the triangle {0 < t < x}.
    row.w_dist_sq = quad::integrate<5>([](double x) { return x; }, 0.0, 1.0 / n);
    // tau_o v_n = chi_n, so the 1/x-weighted trace integral is int_{1/n}^1 dx/x;
    // geometric panels keep the quadrature exact-ish for 1/x.
    double acc = 0.0;
    double lo = 1.0 / n;
    while (lo < 1.0 - 1e-15) {
        const double hi = std::min(1.0, 2.0 * lo);
        acc += quad::integrate<5>([](double x) { return 1.0 / x; }, lo, hi);
        lo = hi;
    }
    row.trace_integral = acc;
    return row;
}

std::vector<TraceFunction> trace_corpus(std::uint64_t seed, int n_random) {
    std::vector<TraceFunction> fns;
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 3; ++j) {
            fns.push_back({"x^" + std::to_string(i) + " t^" + std::to_string(j),
                           [i, j](double x, double t) {
                               return std::pow(x, i) * std::pow(t, j);
                           },
                           [i, j](double x, double t) {
                               return j == 0 ? 0.0 : j * std::pow(x, i) * std::pow(t, j - 1);
                           }});
        }
    }
    for (double a : {3.0, 10.0, 30.0}) {
        for (double x0 : {0.2, 0.7}) {
            for (double t0 : {0.1, 0.5}) {
                auto w = [a, x0, t0](double x, double t) {
                    return std::exp(-a * ((x - x0) * (x - x0) + (t - t0) * (t - t0)));
                };
                auto wt = [a, x0, t0, w](double x, double t) {
                    return -2.0 * a * (t - t0) * w(x, t);
                };
                fns.push_back({"gauss(a=" + std::to_string(a) + ")", w, wt});
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int r = 0; r < n_random; ++r) {
        auto p = std::make_shared<Poly2>();
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3 && j <= 3; ++j) p->at(i, j) = unif(rng);
        auto pt = std::make_shared<Poly2>(p->dt());
        fns.push_back({"random cubic " + std::to_string(r),
                       [p](double x, double t) { return p->eval(x, t); },
                       [pt](double x, double t) { return pt->eval(x, t); }});
    }
    return fns;
}

ConvergenceResult convergence_study(Scheme scheme, const std::vector<double>& h_list,
                                    double k_ratio) {
    ConvergenceResult res;
    for (double h : h_list) {
        const double k = k_ratio * h;
        // First even lattice level at or after t = 0.5.
        int level = 2 * static_cast<int>(std::ceil(0.5 / k - 1e-12));
        const double t_sample = level * k / 2.0;
        const ProblemSpec problem = pulse_problem(t_sample + k);
        double err = 0.0;
        if (scheme == Scheme::tp) {
            auto mesh = std::make_shared<TentMesh>(
                uniform_stencil_mesh(1.0, h, k, level, 0.99, problem.material.c));
            const Solution sol = march(mesh, problem, true);
            err = sol.l2_error(*problem.exact, t_sample);
        } else {
            const UniformGrid grid = UniformGrid::create(1.0, h, k, problem.material.c);
            CtcsScheme ctcs(grid, problem.z0, problem.z1);
            ctcs.initialize(problem.initial_u1, problem.initial_u2);
            const ErrorRecord rec = ctcs.run_with_errors(t_sample, *problem.exact, 2);
            err = rec.err.back();
        }
        res.rows.push_back({h, err, t_sample});
    }
    // Least-squares slope of log(err) against log(h).
    const int n = static_cast<int>(res.rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : res.rows) {
        const double lx = std::log(r.h), ly = std::log(r.err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    if (n >= 2) res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (int i = 0; i + 1 < n; ++i) {
        // rows ordered coarse -> fine when h_list is descending
        res.pair_ratios.push_back(res.rows[i].err / res.rows[i + 1].err);
        if (res.rows[i + 1].err > res.rows[i].err) res.monotone = false;
    }
    return res;
}

}  // namespace tentwave
