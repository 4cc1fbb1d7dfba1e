#include "tentwave/stability.hpp"

#include <cmath>
#include <random>

#include "tentwave/errors.hpp"

namespace tentwave {

double AmplificationMatrix::spectral_radius() const {
    double r = 0.0;
    for (const auto& g : eigenvalues) r = std::max(r, std::abs(g));
    return r;
}

Eigen::Matrix4cd AmplificationMatrix::eigenvector_matrix() const {
    const auto& g = eigenvalues;
    Eigen::Matrix4cd r;
    r << 1, 1, 1, 1,
         1, 1, -1, -1,
         1.0 / g[0], 1.0 / g[1], 1.0 / g[2], 1.0 / g[3],
         1.0 / g[0], 1.0 / g[1], -1.0 / g[2], -1.0 / g[3];
    return r;
}

AmplificationMatrix amplification(double a, double c, double theta) {
    AmplificationMatrix m;
    m.theta = theta;
    const double s = a * c * std::sin(theta);
    m.s = s;
    const Complex is(0.0, s);
    // sqrt(1 - s^2), continued through |s| = 1 as i*sqrt(s^2 - 1)
    const Complex root = std::abs(s) <= 1.0 ? Complex(std::sqrt(1.0 - s * s), 0.0)
                                            : Complex(0.0, std::sqrt(s * s - 1.0));
    m.eigenvalues = {is - root, is + root, -is - root, -is + root};
    const Complex i2s(0.0, 2.0 * s);
    m.G << 0, i2s, 1, 0,
           i2s, 0, 0, 1,
           1, 0, 0, 0,
           0, 1, 0, 0;
    const auto& g = m.eigenvalues;
    m.det_r = 4.0 * (1.0 / g[0] - 1.0 / g[1]) * (1.0 / g[3] - 1.0 / g[2]);
    return m;
}

SweepResult spectral_sweep(double a, double c, int n_theta, int power_cap, double power_bound) {
    if (n_theta < 8) throw ConfigError("spectral_sweep: n_theta must be >= 8");
    SweepResult res;
    res.min_abs_det_r = std::numeric_limits<double>::infinity();
    const double pi = std::acos(-1.0);
    for (int j = 0; j < n_theta; ++j) {
        const double theta = -pi + 2.0 * pi * j / (n_theta - 1);
        const AmplificationMatrix m = amplification(a, c, theta);
        const double rho = m.spectral_radius();
        res.min_abs_det_r = std::min(res.min_abs_det_r, std::abs(m.det_r));

        double max_norm = m.G.norm();
        Eigen::Matrix4cd p = m.G;
        for (int n = 1; n < power_cap; ++n) {
            p = m.G * p;
            const double nn = p.norm();
            max_norm = std::max(max_norm, nn);
            if (nn > 1e12) break;  // clearly unbounded
        }
        res.rows.push_back({theta, rho, max_norm});
        res.max_spectral_radius = std::max(res.max_spectral_radius, rho);
        res.max_power_norm = std::max(res.max_power_norm, max_norm);
    }
    if (res.max_spectral_radius > 1.0 + 1e-9)
        res.verdict = StabilityVerdict::unstable;
    else if (res.max_power_norm > power_bound || res.min_abs_det_r < 1e-8)
        res.verdict = StabilityVerdict::marginal;
    else
        res.verdict = StabilityVerdict::stable;
    return res;
}

BlowupReport empirical_blowup(double ac, int n_points, int n_steps, std::uint64_t seed) {
    if (n_points < 8) throw ConfigError("empirical_blowup: need >= 8 points");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int m = n_points;
    std::vector<double> up(m), vp(m), uc(m), vc(m), un(m), vn(m);
    for (int i = 0; i < m; ++i) {
        up[i] = unif(rng);
        vp[i] = unif(rng);
        uc[i] = unif(rng);
        vc[i] = unif(rng);
    }
    auto maxnorm = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s = std::max({s, std::abs(a[i]), std::abs(b[i])});
        return s;
    };
    const double initial = maxnorm(uc, vc);
    double log_rescale = 0.0;
    for (int step = 0; step < n_steps; ++step) {
        for (int i = 0; i < m; ++i) {
            const int ip = (i + 1) % m, im = (i + m - 1) % m;
            un[i] = up[i] + ac * (vc[ip] - vc[im]);
            vn[i] = vp[i] + ac * (uc[ip] - uc[im]);
        }
        up.swap(uc);
        vp.swap(vc);
        uc.swap(un);
        vc.swap(vn);
        const double nn = maxnorm(uc, vc);
        if (nn > 1e100) {  // renormalize both levels to avoid overflow
            log_rescale += std::log(nn);
            for (int i = 0; i < m; ++i) {
                uc[i] /= nn;
                vc[i] /= nn;
                up[i] /= nn;
                vp[i] /= nn;
            }
        }
    }
    BlowupReport rep;
    rep.steps = n_steps;
    rep.log_growth = log_rescale + std::log(maxnorm(uc, vc) / initial);
    rep.growth = std::exp(rep.log_growth);
    return rep;
}

}  // namespace tentwave
