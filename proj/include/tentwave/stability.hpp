#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace tentwave {

using Complex = std::complex<double>;

/// Von Neumann amplification matrix of the uniform-grid scheme at frequency
/// theta, with s = a*c*sin(theta). Eigenvalues are +-i*s +- sqrt(1 - s^2);
/// for |s| > 1 the square root continues as i*sqrt(s^2 - 1).
struct AmplificationMatrix {
    double theta = 0.0;
    double s = 0.0;
    Eigen::Matrix4cd G;
    std::array<Complex, 4> eigenvalues;
    Complex det_r;  // det R = 4 (g1^-1 - g2^-1)(g4^-1 - g3^-1)

    double spectral_radius() const;
    /// Eigenvector matrix R with G = R diag(g) R^-1.
    Eigen::Matrix4cd eigenvector_matrix() const;
};

AmplificationMatrix amplification(double a, double c, double theta);

enum class StabilityVerdict { stable, marginal, unstable };

struct SweepRow {
    double theta;
    double spectral_radius;
    double max_power_norm;  // max Frobenius norm of G^n, n <= cap
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double max_spectral_radius = 0.0;
    double max_power_norm = 0.0;
    double min_abs_det_r = 0.0;
    StabilityVerdict verdict = StabilityVerdict::stable;
};

/// Sweeps n_theta frequencies over [-pi, pi]; stable iff the spectral radius
/// stays at 1 (to roundoff) and the G^n norms stay below `power_bound`.
SweepResult spectral_sweep(double a, double c, int n_theta, int power_cap = 10000,
                           double power_bound = 100.0);

struct BlowupReport {
    double growth;      // max-norm growth factor over the run
    double log_growth;  // natural log (safe against overflow)
    int steps;
};

/// Leapfrog recursion on a periodic lattice with random data; returns the
/// max-norm growth over n_steps. Confirms the von Neumann prediction
/// numerically.
BlowupReport empirical_blowup(double ac, int n_points, int n_steps, std::uint64_t seed);

}  // namespace tentwave
