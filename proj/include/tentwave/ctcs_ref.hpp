#pragma once

#include <vector>

#include "tentwave/marcher.hpp"

namespace tentwave {

/// Uniform space-time lattice of the stencil figure: points (m*h/2, nu*k/2).
/// Schemes on it use alternating parity classes; M = 2S/h must be even so
/// both ends carry U values.
struct UniformGrid {
    double S = 1.0;
    double h = 0.1;  // scheme mesh size (lattice spacing is h/2)
    double k = 0.09;
    double c = 1.0;
    int M = 20;  // lattice vertices 0..M

    double a() const { return k / h; }
    double x(int m) const { return S * m / static_cast<double>(M); }
    double time(int level) const { return level * k / 2.0; }

    static UniformGrid create(double S, double h, double k, double c);
};

struct ErrorRecord {
    std::vector<double> t;
    std::vector<double> err;
    double max_error() const;
};

/// Non-staggered leapfrog (the uniform-grid tent scheme written as a direct
/// two-level recursion). Level 0 holds nodal data at every lattice vertex;
/// level nu >= 1 holds values at vertices of parity nu mod 2. Level 1 is the
/// bootstrap row of half-height tents; boundaries close with the constrained
/// boundary-tent formulas.
class LeapfrogScheme {
  public:
    LeapfrogScheme(const UniformGrid& grid, double z0, double z1);

    void initialize(const ScalarFn& u1, const ScalarFn& u2);
    void initialize_nodal(std::vector<double> u, std::vector<double> v);

    /// One time level of k/2.
    void advance();

    int level() const { return level_; }
    double time() const { return grid_.time(level_); }
    const UniformGrid& grid() const { return grid_; }
    /// Value at lattice vertex m on the current level (parity must match;
    /// level 0 carries both parities).
    Vec2 value(int m) const { return {u_cur_[m], v_cur_[m]}; }
    const std::vector<double>& u() const { return u_cur_; }
    const std::vector<double>& v() const { return v_cur_; }

    /// March to final time T, recording the interpolant L2 error every
    /// `sample_every` levels (2 = every other time step).
    ErrorRecord run_with_errors(double T, const SpaceTimeFn& exact, int sample_every = 2);

  private:
    void bootstrap_level1();
    UniformGrid grid_;
    double z0_, z1_;
    std::vector<double> u_prev_, v_prev_, u_cur_, v_cur_;
    int level_ = 0;
};

/// Staggered central-time central-space (Yee) scheme on the same lattice:
/// U lives at (m even, nu even), V at (m odd, nu odd). Impedance boundaries
/// are closed by ghost-point elimination:
///   ghost average   (V_-1 + V_1)/2   = z0 * (U_0^{nu} + U_0^{nu-2})/2
/// (and the analogue at x = S), which resolves the update at m = 0, M to
///   U_0^{nu} = [(1 - a c z0) U_0^{nu-2} + 2 a c V_1^{nu-1}] / (1 + a c z0),
///   U_M^{nu} = [(1 - a c z1) U_M^{nu-2} - 2 a c V_{M-1}^{nu-1}] / (1 + a c z1).
class CtcsScheme {
  public:
    CtcsScheme(const UniformGrid& grid, double z0, double z1);

    void initialize(const ScalarFn& u1, const ScalarFn& u2);
    /// Advance U by one full step k (even levels).
    void advance_u();
    /// Advance V by one full step k (odd levels).
    void advance_v();

    int level_u() const { return level_u_; }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& v() const { return v_; }

    ErrorRecord run_with_errors(double T, const SpaceTimeFn& exact, int sample_every = 2);

  private:
    UniformGrid grid_;
    double z0_, z1_;
    std::vector<double> u_, v_, v_prev_;
    int level_u_ = 0, level_v_ = -1;
};

/// Convenience driver for the pulse-problem error study.
ErrorRecord ctcs_run(const UniformGrid& grid, const ProblemSpec& problem, int sample_every = 2);

}  // namespace tentwave
