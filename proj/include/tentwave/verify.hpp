#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tentwave/mesh1d.hpp"

namespace tentwave {

using Fn2 = std::function<double(double, double)>;

/// Trace integrals on the reference triangle K = {0 < t < x < 1} for the
/// operator d/dt, with inflow trace w(x,0) and outflow trace w(x,x):
///   weighted_inflow   = int x |w(x,0)|^2
///   weighted_outflow  = int x |w(x,x)|^2
///   difference        = int |w(x,0) - w(x,x)|^2 / x
///   graph_norm_sq     = int_K w^2 + (dt w)^2
///   ratio             = (sum of the three trace terms) / graph_norm_sq
/// unweighted_inflow (int |w(x,0)|^2, no weight) is reported for the
/// counterexample mode, where it diverges while everything else stays put.
struct TraceReport {
    double weighted_inflow = 0.0;
    double weighted_outflow = 0.0;
    double difference = 0.0;
    double graph_norm_sq = 0.0;
    double unweighted_inflow = 0.0;
    double ratio = 0.0;
};

struct TraceOptions {
    int panels = 64;      // uniform composite panels per 1D integral
    int grade_depth = 0;  // >0: geometric panels [2^-(j+1), 2^-j] toward x=0
};

/// Composite-Gauss evaluation of the trace inequality ingredients for an
/// analytic w with analytic time derivative wt.
TraceReport trace_check(const Fn2& w, const Fn2& wt, const TraceOptions& opts = {});

/// Small bivariate polynomial sum c[i][j] x^i t^j, degree <= 5 per variable.
class Poly2 {
  public:
    Poly2() = default;
    static Poly2 monomial(int i, int j, double coeff = 1.0);
    double& at(int i, int j) { return c_[i][j]; }
    double eval(double x, double t) const;
    Poly2 dt() const;
    int max_degree() const;

  private:
    std::array<std::array<double, 6>, 6> c_{};
};

/// Residual of the integration-by-parts identity on a tent:
///   int_K (dt w) v + w (dt v)  =  int tau_o(w) tau_o(v) dx - int tau_i(w) tau_i(v) dx
/// with traces along the tent's outflow/inflow graphs over its footprint.
/// Exact-degree quadrature; the residual is pure roundoff for polynomials.
double ibp_identity_check(const Poly2& w, const Poly2& v, const Tent& tent);

/// The reference triangle (0,0),(1,0),(1,1) viewed as a tent (pole at x=1).
Tent reference_triangle_tent();

struct NonclosedRow {
    int n;
    double w_dist_sq;       // ||chi_n - 1||_W^2 on the reference triangle
    double trace_integral;  // int_0^1 |tau_o v_n|^2 / x = log n
};

/// The sequence v_n = chi_n(x) t/x, v_n* = chi_n(x)(x-t)/x whose sum
/// converges in W while the 1/x-weighted outflow trace of v_n diverges.
NonclosedRow nonclosed_sum_demo(int n);

/// Named test function with its analytic time derivative.
struct TraceFunction {
    std::string name;
    Fn2 w, wt;
};

/// Corpus for the empirical trace-constant bound: tensor polynomials,
/// Gaussians, and seeded random cubics.
std::vector<TraceFunction> trace_corpus(std::uint64_t seed, int n_random);

enum class Scheme { tp, ctcs };

struct ConvergenceRow {
    double h;
    double err;
    double t_sample;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    double slope = 0.0;  // least-squares slope of log err vs log h
    bool monotone = true;
    std::vector<double> pair_ratios;  // err(h)/err(h/2) for consecutive rows
};

/// Pulse-problem convergence sweep: L2 error near t = 0.5 for each h with
/// k = k_ratio * h, and the fitted convergence order.
ConvergenceResult convergence_study(Scheme scheme, const std::vector<double>& h_list,
                                    double k_ratio);

}  // namespace tentwave
