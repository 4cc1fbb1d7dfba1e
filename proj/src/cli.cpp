#include "tentwave/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "tentwave/ctcs_ref.hpp"
#include "tentwave/stability.hpp"
#include "tentwave/tent_pitcher.hpp"
#include "tentwave/verify.hpp"

namespace tentwave {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config: " + path + ": " + msg);
}

double require_positive(const nlohmann::json& j, const std::string& path, const char* key,
                        double fallback = std::nan("")) {
    double v = fallback;
    if (j.contains(key)) {
        if (!j.at(key).is_number()) fail(path + "." + key, "must be a number");
        v = j.at(key).get<double>();
    } else if (std::isnan(fallback)) {
        fail(path, std::string("missing required field '") + key + "'");
    }
    if (!(v > 0.0)) fail(path + "." + key, "must be positive");
    return v;
}

void write_text(const std::string& path, const std::string& body,
                std::vector<std::string>& written) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file " + path);
    out << body;
    written.push_back(path);
}

std::string format_time_tag(double t) {
    std::ostringstream os;
    os << std::setprecision(6) << t;
    std::string s = os.str();
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

std::string csv_of_record(const ErrorRecord& rec) {
    std::ostringstream os;
    os << std::setprecision(17) << "t,l2err\n";
    for (std::size_t i = 0; i < rec.t.size(); ++i) os << rec.t[i] << "," << rec.err[i] << "\n";
    return os.str();
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig cfg;
    cfg.raw = j;
    if (!j.contains("problem")) fail("problem", "missing section");
    const auto& jp = j.at("problem");
    cfg.c = require_positive(jp, "problem", "c", 1.0);
    cfg.T = require_positive(jp, "problem", "T");

    if (!jp.contains("regions") || !jp.at("regions").is_array() || jp.at("regions").empty())
        fail("problem.regions", "must be a nonempty array");
    double x_prev = 0.0;
    int idx = 0;
    for (const auto& jr : jp.at("regions")) {
        const std::string path = "problem.regions[" + std::to_string(idx++) + "]";
        RegionSpec r;
        r.x_end = require_positive(jr, path, "x_end");
        if (r.x_end <= x_prev) fail(path + ".x_end", "region ends must increase");
        x_prev = r.x_end;
        r.kappa1 = require_positive(jr, path, "kappa1", 1.0);
        r.kappa2 = require_positive(jr, path, "kappa2", 1.0);
        r.h = require_positive(jr, path, "h", 0.01);
        cfg.regions.push_back(r);
    }

    if (jp.contains("bc")) {
        const auto& jb = jp.at("bc");
        auto read_z = [&](const char* key, double& z, bool& matched) {
            if (!jb.contains(key)) return;
            if (jb.at(key).is_string()) {
                if (jb.at(key).get<std::string>() != "matched")
                    fail(std::string("problem.bc.") + key, "must be a number or \"matched\"");
                matched = true;
            } else if (jb.at(key).is_number()) {
                z = jb.at(key).get<double>();
                if (z < 0.0) fail(std::string("problem.bc.") + key, "must be >= 0");
            } else {
                fail(std::string("problem.bc.") + key, "must be a number or \"matched\"");
            }
        };
        read_z("z0", cfg.z0, cfg.z0_matched);
        read_z("z1", cfg.z1, cfg.z1_matched);
    }

    if (jp.contains("initial")) {
        const auto& ji = jp.at("initial");
        const std::string type = ji.value("type", "zero");
        if (type == "zero")
            cfg.initial.kind = InitialSpec::Kind::zero;
        else if (type == "traveling_gaussian")
            cfg.initial.kind = InitialSpec::Kind::traveling_gaussian;
        else if (type == "material_pulse")
            cfg.initial.kind = InitialSpec::Kind::material_pulse;
        else
            fail("problem.initial.type", "unknown type '" + type + "'");
        cfg.initial.amplitude = ji.value("amplitude", 1.0);
        if (ji.contains("sharpness"))
            cfg.initial.sharpness = require_positive(ji, "problem.initial", "sharpness");
        if (ji.contains("center")) cfg.initial.center = ji.at("center").get<double>();
        const std::string dir = ji.value("direction", "left");
        if (dir == "left")
            cfg.initial.direction = -1;
        else if (dir == "right")
            cfg.initial.direction = +1;
        else
            fail("problem.initial.direction", "must be \"left\" or \"right\"");
    }

    if (j.contains("mesh")) {
        const auto& jm = j.at("mesh");
        const std::string kind = jm.value("kind", "pitched");
        if (kind == "pitched")
            cfg.mesh.kind = MeshSpec::Kind::pitched;
        else if (kind == "uniform_stencil")
            cfg.mesh.kind = MeshSpec::Kind::uniform_stencil;
        else
            fail("mesh.kind", "unknown kind '" + kind + "'");
        if (jm.contains("slab_height"))
            cfg.mesh.slab_height = require_positive(jm, "mesh", "slab_height");
        if (jm.contains("margin")) {
            cfg.mesh.margin = require_positive(jm, "mesh", "margin");
            if (cfg.mesh.margin > 1.0) fail("mesh.margin", "must be in (0,1]");
        }
        if (jm.contains("k_ratio")) cfg.mesh.k_ratio = require_positive(jm, "mesh", "k_ratio");
        if (jm.contains("seed")) cfg.mesh.seed = jm.at("seed").get<std::uint64_t>();
    }

    if (j.contains("scheme")) {
        const auto& js = j.at("scheme");
        cfg.scheme = js.value("name", "tp");
        if (cfg.scheme != "tp" && cfg.scheme != "ctcs")
            fail("scheme.name", "must be \"tp\" or \"ctcs\"");
        cfg.use_closed_form = js.value("use_closed_form", true);
    }

    if (j.contains("output")) {
        const auto& jo = j.at("output");
        if (jo.contains("snapshots"))
            cfg.output.snapshots = jo.at("snapshots").get<std::vector<double>>();
        for (double t : cfg.output.snapshots)
            if (t < 0.0 || t > cfg.T) fail("output.snapshots", "snapshot time outside [0,T]");
        if (jo.contains("error_dt"))
            cfg.output.error_dt = require_positive(jo, "output", "error_dt");
        cfg.output.nodal_history = jo.value("nodal_history", false);
    }

    // Cross-field validation before any computation.
    cfg.material().validate();
    cfg.spatial_mesh().validate(static_cast<int>(cfg.regions.size()));
    if (cfg.scheme == "ctcs" || cfg.mesh.kind == MeshSpec::Kind::uniform_stencil) {
        if (cfg.regions.size() != 1) fail("mesh", "uniform schemes need a single region");
        const double speed = cfg.material().wave_speed(0);
        if (!(cfg.mesh.k_ratio * speed < 1.0))
            fail("mesh.k_ratio", "CFL-infeasible: k/h * wave speed must be < 1");
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: " + path + " is not valid JSON: " + e.what());
    }
    return from_json(j);
}

Material RunConfig::material() const {
    Material m;
    m.c = c;
    m.kappa1.clear();
    m.kappa2.clear();
    for (const auto& r : regions) {
        m.kappa1.push_back(r.kappa1);
        m.kappa2.push_back(r.kappa2);
    }
    return m;
}

SpatialMesh RunConfig::spatial_mesh() const {
    SpatialMesh mesh;
    double x0 = 0.0;
    for (std::size_t ri = 0; ri < regions.size(); ++ri) {
        const auto& r = regions[ri];
        const double len = r.x_end - x0;
        const int n = std::max(1, static_cast<int>(std::lround(len / r.h)));
        for (int i = 0; i < n; ++i) {
            mesh.vertices.push_back(x0 + len * i / n);
            mesh.regions.push_back(static_cast<int>(ri));
        }
        x0 = r.x_end;
    }
    mesh.vertices.push_back(x0);
    return mesh;
}

ProblemSpec RunConfig::problem() const {
    ProblemSpec p;
    p.material = material();
    p.T = T;
    p.z0 = z0_matched ? std::sqrt(regions.front().kappa1 / regions.front().kappa2) : z0;
    p.z1 = z1_matched ? std::sqrt(regions.back().kappa1 / regions.back().kappa2) : z1;

    const Material mat = p.material;
    const auto mesh = spatial_mesh();
    auto region_of = [mesh](double x) {
        int cell = static_cast<int>(std::upper_bound(mesh.vertices.begin(), mesh.vertices.end(),
                                                     x) -
                                    mesh.vertices.begin()) -
                   1;
        cell = std::clamp(cell, 0, mesh.n_cells() - 1);
        return mesh.regions[cell];
    };
    const InitialSpec init = initial;
    switch (init.kind) {
        case InitialSpec::Kind::zero:
            p.initial_u1 = [](double) { return 0.0; };
            p.initial_u2 = [](double) { return 0.0; };
            break;
        case InitialSpec::Kind::traveling_gaussian: {
            auto g = [init](double y) {
                return init.amplitude * std::exp(-init.sharpness * (y - init.center) *
                                                 (y - init.center));
            };
            const double sgn = init.direction < 0 ? 1.0 : -1.0;  // u2 = -+ u1
            p.initial_u1 = [g](double x) { return g(x); };
            p.initial_u2 = [g, sgn](double x) { return sgn * g(x); };
            if (mat.homogeneous()) {
                const double cc = mat.c, dir = init.direction;
                p.exact = [g, sgn, cc, dir](double x, double t) {
                    const double v = g(x - dir * cc * t);
                    return Vec2(v, sgn * v);
                };
            }
            break;
        }
        case InitialSpec::Kind::material_pulse: {
            auto g = [init](double x) {
                return init.amplitude * std::exp(-init.sharpness * (x - init.center) *
                                                 (x - init.center));
            };
            p.initial_u1 = [mat, region_of, g](double x) {
                return mat.c / mat.kappa1[region_of(x)] * g(x);
            };
            p.initial_u2 = [mat, region_of, g](double x) {
                const int r = region_of(x);
                return -mat.c / std::sqrt(mat.kappa1[r] * mat.kappa2[r]) * g(x);
            };
            break;
        }
    }
    return p;
}

nlohmann::json RunConfig::metadata() const {
    return {{"config", raw}, {"seed", mesh.seed}, {"version", "0.1.0"}};
}

std::vector<std::string> run_solve(const RunConfig& cfg, const std::string& out_prefix) {
    const ProblemSpec problem = cfg.problem();
    std::vector<std::string> written;

    std::vector<double> sample_times;
    double err_dt = cfg.output.error_dt;

    std::shared_ptr<Solution> sol;
    ErrorRecord record;

    if (cfg.scheme == "ctcs") {
        // Snapshot output is not defined for the staggered scheme's lattice;
        // snapshots are served by the tp scheme.
        if (!cfg.output.snapshots.empty())
            throw ConfigError("config: snapshots are only available with scheme tp");
        if (!problem.exact) throw ConfigError("config: ctcs runs need an exact solution");
        // For uniform schemes the region h is the scheme mesh size; the
        // lattice spacing is h/2.
        const double h = cfg.regions.front().h;
        const UniformGrid grid = UniformGrid::create(cfg.S(), h, cfg.mesh.k_ratio * h, cfg.c);
        record = ctcs_run(grid, problem);
    } else {
        std::shared_ptr<const TentMesh> mesh;
        if (cfg.mesh.kind == MeshSpec::Kind::uniform_stencil) {
            const double h = cfg.regions.front().h;
            const double k = cfg.mesh.k_ratio * h;
            const int levels = static_cast<int>(std::ceil(cfg.T / (k / 2.0)));
            mesh = std::make_shared<TentMesh>(
                uniform_stencil_mesh(cfg.S(), h, k, levels, cfg.mesh.margin, cfg.c));
            if (err_dt == 0.0) err_dt = k;
        } else {
            TentMesh slab = pitch_slab(cfg.spatial_mesh(), problem.material,
                                       cfg.mesh.slab_height, cfg.mesh.margin, cfg.mesh.seed);
            const int n_slabs =
                std::max(1, static_cast<int>(std::ceil(cfg.T / cfg.mesh.slab_height - 1e-12)));
            mesh = std::make_shared<TentMesh>(stack_slabs(slab, n_slabs));
        }
        sol = std::make_shared<Solution>(march(mesh, problem, cfg.use_closed_form));
        if (problem.exact) {
            if (err_dt == 0.0) err_dt = cfg.T / 200.0;
            const double t_end = std::min(cfg.T, mesh->total_height);
            for (double t = 0.0; t <= t_end * (1.0 + 1e-12); t += err_dt) {
                const double tc = std::min(t, t_end);
                record.t.push_back(tc);
                record.err.push_back(sol->l2_error(*problem.exact, tc));
            }
        }
    }

    write_text(out_prefix + "_meta.json", cfg.metadata().dump(2) + "\n", written);
    if (!record.t.empty()) write_text(out_prefix + "_error.csv", csv_of_record(record), written);
    if (sol) {
        for (double t : cfg.output.snapshots) {
            const SnapshotTrace s = sol->snapshot(std::min(t, sol->tent_mesh().total_height));
            std::ostringstream os;
            os << std::setprecision(17) << "x,u1,u2\n";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                os << s.x[i] << "," << s.u1[i] << "," << s.u2[i] << "\n";
            write_text(out_prefix + "_snap_" + format_time_tag(t) + ".csv", os.str(), written);
        }
        if (cfg.output.nodal_history)
            write_text(out_prefix + "_nodal.json", sol->nodal_history_json().dump() + "\n",
                       written);
    }
    return written;
}

std::vector<std::string> run_mesh(const RunConfig& cfg, const std::string& out_path,
                                  int n_slabs) {
    TentMesh slab = pitch_slab(cfg.spatial_mesh(), cfg.material(), cfg.mesh.slab_height,
                               cfg.mesh.margin, cfg.mesh.seed);
    const TentMesh full = n_slabs > 1 ? stack_slabs(slab, n_slabs) : slab;
    nlohmann::json j = full.to_json();
    j["min_triangle_angle"] = full.min_triangle_angle();
    std::vector<std::string> written;
    write_text(out_path, j.dump() + "\n", written);
    return written;
}

std::vector<std::string> run_stability(double ac, int n_thetas, const std::string& out_path) {
    const SweepResult sweep = spectral_sweep(ac, 1.0, n_thetas);
    std::ostringstream os;
    os << std::setprecision(17) << "theta,spectral_radius,max_power_norm\n";
    for (const auto& row : sweep.rows)
        os << row.theta << "," << row.spectral_radius << "," << row.max_power_norm << "\n";
    std::vector<std::string> written;
    write_text(out_path, os.str(), written);
    return written;
}

std::vector<std::string> run_verify(const std::string& suite, const std::string& out_path) {
    nlohmann::json report;
    if (suite == "traces") {
        auto corpus = trace_corpus(2024, 20);
        double max_ratio = 0.0;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& f : corpus) {
            const TraceReport r = trace_check(f.w, f.wt, {128, 0});
            max_ratio = std::max(max_ratio, r.ratio);
            rows.push_back({{"name", f.name},
                            {"ratio", r.ratio},
                            {"weighted_inflow", r.weighted_inflow},
                            {"weighted_outflow", r.weighted_outflow},
                            {"difference", r.difference},
                            {"graph_norm_sq", r.graph_norm_sq}});
        }
        report["corpus"] = rows;
        report["max_ratio"] = max_ratio;

        nlohmann::json cex = nlohmann::json::array();
        for (int depth : {8, 80, 800, 8000}) {
            const TraceReport r = trace_check([](double x, double) { return 1.0 / std::sqrt(x); },
                                              [](double, double) { return 0.0; }, {0, depth});
            cex.push_back({{"grade_depth", depth},
                           {"unweighted_inflow", r.unweighted_inflow},
                           {"graph_norm_sq", r.graph_norm_sq},
                           {"weighted_inflow", r.weighted_inflow}});
        }
        report["counterexample_x_pow_minus_half"] = cex;

        nlohmann::json nc = nlohmann::json::array();
        for (int n = 2; n <= 1024; n *= 2) {
            const NonclosedRow row = nonclosed_sum_demo(n);
            nc.push_back({{"n", row.n},
                          {"w_dist_sq", row.w_dist_sq},
                          {"trace_integral", row.trace_integral},
                          {"log_n", std::log(static_cast<double>(row.n))}});
        }
        report["nonclosed_sum"] = nc;
    } else if (suite == "ibp") {
        double max_residual = 0.0;
        Tent interior;
        interior.type = TentType::I;
        interior.k = 0.7;
        interior.h_l = 0.6;
        interior.h_r = 0.45;
        interior.p_l = 0.8;
        interior.p_r = 0.55;
        Tent left;
        left.type = TentType::L;
        left.k = 0.5;
        left.h_r = 0.4;
        left.p_r = 0.7;
        Tent right = reference_triangle_tent();
        nlohmann::json rows = nlohmann::json::array();
        for (const Tent* tent : {&interior, &left, &right}) {
            double worst = 0.0;
            for (int iw = 0; iw <= 3; ++iw)
                for (int jw = 0; iw + jw <= 3; ++jw)
                    for (int iv = 0; iv <= 3; ++iv)
                        for (int jv = 0; iv + jv <= 3; ++jv)
                            worst = std::max(
                                worst, ibp_identity_check(Poly2::monomial(iw, jw),
                                                          Poly2::monomial(iv, jv), *tent));
            rows.push_back({{"tent_type", to_string(tent->type)}, {"max_residual", worst}});
            max_residual = std::max(max_residual, worst);
        }
        report["tents"] = rows;
        report["max_residual"] = max_residual;
    } else if (suite == "convergence") {
        for (const char* name : {"tp", "ctcs"}) {
            std::vector<double> hs;
            for (int e = 3; e <= 9; ++e) hs.push_back(1.0 / (1 << e));
            const ConvergenceResult res =
                convergence_study(name == std::string("tp") ? Scheme::tp : Scheme::ctcs, hs,
                                  0.9);
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : res.rows)
                rows.push_back({{"h", r.h}, {"err", r.err}, {"t", r.t_sample}});
            report[name] = {{"rows", rows}, {"slope", res.slope}, {"monotone", res.monotone}};
        }
    } else {
        throw ConfigError("verify: unknown suite '" + suite + "'");
    }
    std::vector<std::string> written;
    write_text(out_path, report.dump(2) + "\n", written);
    return written;
}

std::vector<std::string> run_converge(const std::string& scheme, int h_exp_min, int h_exp_max,
                                      double k_ratio, const std::string& out_path) {
    if (scheme != "tp" && scheme != "ctcs")
        throw ConfigError("converge: scheme must be tp or ctcs");
    if (h_exp_min < 1 || h_exp_max < h_exp_min)
        throw ConfigError("converge: bad h exponent range");
    std::vector<double> hs;
    for (int e = h_exp_min; e <= h_exp_max; ++e) hs.push_back(1.0 / (1 << e));
    const ConvergenceResult res =
        convergence_study(scheme == "tp" ? Scheme::tp : Scheme::ctcs, hs, k_ratio);
    std::ostringstream os;
    os << std::setprecision(17) << "h,err,slope_running\n";
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        double slope_running = 0.0;
        if (i > 0)
            slope_running = std::log(res.rows[i].err / res.rows[i - 1].err) /
                            std::log(res.rows[i].h / res.rows[i - 1].h);
        os << res.rows[i].h << "," << res.rows[i].err << "," << slope_running << "\n";
    }
    std::vector<std::string> written;
    write_text(out_path, os.str(), written);
    return written;
}

}  // namespace tentwave
