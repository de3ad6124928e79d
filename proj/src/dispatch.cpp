#include "toroton/dispatch.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "toroton/bpm.hpp"
#include "toroton/experiments.hpp"
#include "toroton/gridio.hpp"
#include "toroton/svg.hpp"
#include "toroton/torus.hpp"

namespace toroton {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string iso_now() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct OutputSet {
    std::string dir;
    std::vector<std::string> files;

    std::string path(const std::string& name) {
        files.push_back(name);
        return dir + "/" + name;
    }
    void write_text(const std::string& name, const std::string& text) {
        std::ofstream out(path(name), std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output " + name);
        out << text;
    }
    void write_json(const std::string& name, const json& j) {
        write_text(name, j.dump(2) + "\n");
    }
};

PerturbKind perturb_kind_of(const std::string& name) {
    if (name == "symmetric-ring") return PerturbKind::SymmetricRing;
    if (name == "asymmetric-tilt") return PerturbKind::AsymmetricTilt;
    return PerturbKind::Noise;
}

std::string trace_csv(const PropagationTrace& trace) {
    std::string out = "z,power,peak,centroid_x,centroid_y,width\n";
    for (const auto& r : trace.records)
        out += f17(r.z) + "," + f17(r.power) + "," + f17(r.peak) + "," + f17(r.cx) + "," +
               f17(r.cy) + "," + f17(r.width) + "\n";
    return out;
}

StabilityConfig stability_config(const RunConfig& cfg) {
    StabilityConfig sc;
    sc.nx = cfg.grid.nx;
    sc.ny = cfg.grid.ny;
    sc.dx = cfg.grid.dx;
    sc.e0 = cfg.run.e0;
    sc.diffraction_lengths = cfg.run.diffraction_lengths;
    sc.steps_per_length = cfg.run.steps_per_length;
    sc.seed = cfg.run.seed;
    return sc;
}

void run_profile(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    const RadialProfile prof = solve_profile(cfg.run.e0, cfg.medium, w);
    std::string csv = "r,e_t\n";
    for (std::size_t i = 0; i < prof.r_grid.size(); ++i)
        csv += f17(prof.r_grid[i]) + "," + f17(prof.e_t[i]) + "\n";
    out.write_text("profile.csv", csv);
    out.write_json("profile.json", json{{"e0", cfg.run.e0},
                                        {"beta", prof.beta},
                                        {"power", prof.power},
                                        {"kappa", prof.kappa}});
}

void run_propagate(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    const RadialProfile prof = solve_profile(cfg.run.e0, cfg.medium, w);
    double dx = cfg.grid.dx;
    if (dx <= 0.0) dx = 18.0 / prof.kappa / static_cast<double>(cfg.grid.nx);
    const double dy = cfg.grid.dy > 0.0 ? cfg.grid.dy : dx;
    ScalarField field = embed_profile(prof, cfg.grid.nx, cfg.grid.ny, dx, dy);

    PropagateOptions opt;
    const double n0 = std::sqrt(cfg.medium.eps_lin);
    const double w_rms = width(field);
    const double l_diff = w.k0 * n0 * w_rms * w_rms;
    opt.z_end = cfg.run.z_end > 0.0 ? cfg.run.z_end : cfg.run.diffraction_lengths * l_diff;
    opt.dz = cfg.run.dz > 0.0
                 ? cfg.run.dz
                 : std::min(l_diff / cfg.run.steps_per_length, w.lambda_med / 10.0);
    opt.trace_every = cfg.run.trace_every;
    opt.absorber = cfg.grid.absorber;
    if (cfg.mask.kind == "single-hole")
        opt.masks.emplace_back(cfg.mask.z_position,
                               Mask::circular_hole(field, cfg.mask.offset, 0.0,
                                                   0.5 * cfg.mask.width));
    else if (cfg.mask.kind == "double-hole")
        opt.masks.emplace_back(
            cfg.mask.z_position,
            Mask::two_holes(field, 0.0, 0.0, 0.5 * cfg.mask.width, cfg.mask.offset, 0.0,
                            0.5 * cfg.mask.width));
    else if (cfg.mask.kind == "absorber")
        opt.masks.emplace_back(cfg.mask.z_position, Mask::full_absorber(field.nx, field.ny));

    const PropagationTrace trace = propagate(field, opt, cfg.medium, w);
    out.write_text("trace.csv", trace_csv(trace));
    dump_grid(field, out.path("field.bin"));

    Series wz{"width", {}, {}};
    for (const auto& r : trace.records) {
        wz.x.push_back(r.z);
        wz.y.push_back(r.width);
    }
    render_svg_series({wz}, "beam width vs z", out.path("width.svg"));
    render_svg_heatmap(field, "final intensity", out.path("intensity.svg"));
}

void run_stability_cmd(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    const StabilityReport rep =
        run_stability(perturb_kind_of(cfg.run.perturb_kind), cfg.run.perturb_level,
                      cfg.medium, w, stability_config(cfg));
    out.write_text("trace.csv", trace_csv(rep.trace));
    out.write_json("stability.json", json{{"kind", cfg.run.perturb_kind},
                                          {"level", cfg.run.perturb_level},
                                          {"centroid_drift", rep.centroid_drift},
                                          {"width_drift", rep.width_drift},
                                          {"core_power_fraction", rep.core_power_fraction},
                                          {"drift_monotone", rep.drift_monotone},
                                          {"verdict", rep.verdict}});
    Series cx{"centroid_x", {}, {}};
    for (const auto& r : rep.trace.records) {
        cx.x.push_back(r.z);
        cx.y.push_back(r.cx);
    }
    render_svg_series({cx}, "centroid vs z", out.path("centroid.svg"));
}

void run_pair_cmd(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    PairConfig pc;
    pc.nx = cfg.grid.nx;
    pc.ny = cfg.grid.ny;
    pc.dx = cfg.grid.dx;
    pc.e0 = cfg.run.e0;
    pc.separation_cores = cfg.run.separation_cores;
    pc.diffraction_lengths = cfg.run.diffraction_lengths;
    pc.steps_per_length = cfg.run.steps_per_length;
    const PairReport rep =
        run_pair(cfg.run.separation, cfg.run.relative_phase, cfg.medium, w, pc);

    std::string csv = "z,separation\n";
    for (std::size_t i = 0; i < rep.z.size(); ++i)
        csv += f17(rep.z[i]) + "," + f17(rep.separation[i]) + "\n";
    out.write_text("separation.csv", csv);
    out.write_json("pair.json", json{{"relative_phase", cfg.run.relative_phase},
                                     {"verdict", rep.verdict},
                                     {"merged", rep.merged},
                                     {"com_drift", rep.com_drift}});
    render_svg_series({{"separation", rep.z, rep.separation}}, "pair separation vs z",
                      out.path("separation.svg"));
}

void run_young_cmd(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    YoungConfig yc;
    yc.nx = cfg.grid.nx;
    yc.dx = cfg.grid.dx;
    yc.e0 = cfg.run.e0;
    yc.slit_width_cores = cfg.run.slit_width_cores;
    yc.hole1_offset_cores = cfg.run.hole1_offset_cores;
    yc.hole_offset_cores = cfg.run.hole_offset_cores;
    yc.hole2_phase = cfg.run.hole2_phase;
    yc.diffraction_lengths = cfg.run.diffraction_lengths;
    yc.steps_per_length = cfg.run.steps_per_length;
    yc.significance = cfg.run.significance;
    yc.randomize_second_hole = cfg.run.randomize_second_hole;
    yc.seed = cfg.run.seed;
    yc.twod = cfg.run.young_2d;
    yc.ny2d = cfg.grid.ny;
    const DeflectionReport rep = run_young(cfg.medium, w, yc);

    std::string csv = "z,control_x,test_x\n";
    for (std::size_t i = 0; i < rep.z.size(); ++i)
        csv += f17(rep.z[i]) + "," + f17(rep.control_x[i]) + "," + f17(rep.test_x[i]) + "\n";
    out.write_text("deflection.csv", csv);
    out.write_json("young.json", json{{"deflection_control", rep.deflection_control},
                                      {"deflection_test", rep.deflection_test},
                                      {"fringe_gradient_sign", rep.fringe_gradient_sign},
                                      {"verdict", rep.verdict}});
    render_svg_series({{"control", rep.z, rep.control_x}, {"test", rep.z, rep.test_x}},
                      "filament centroid vs z", out.path("deflection.svg"));
}

void scan_outputs(const CurvatureScan& scan, OutputSet& out) {
    std::string csv = "c,gamma\n";
    for (std::size_t i = 0; i < scan.c_values.size(); ++i)
        csv += f17(scan.c_values[i]) + "," + f17(scan.gamma_values[i]) + "\n";
    out.write_text("curvature_scan.csv", csv);
    render_svg_series({{"gamma", scan.c_values, scan.gamma_values}}, "gamma vs curvature",
                      out.path("gamma.svg"));
}

void run_curvature(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    const RadialProfile prof = solve_profile(cfg.run.e0, cfg.medium, w);
    const CurvatureScan scan =
        find_fixed_point(prof, cfg.medium, w, cfg.scan.c_min, cfg.scan.c_max, cfg.scan.n_c);
    scan_outputs(scan, out);
    json j{{"stable", scan.stable}};
    if (scan.c0)
        j["c0"] = *scan.c0;
    else
        j["c0"] = nullptr;
    out.write_json("curvature.json", j);
}

void run_torus(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    std::vector<double> amps(cfg.scan.n_amp);
    for (std::size_t i = 0; i < amps.size(); ++i)
        amps[i] = cfg.scan.amp_min + (cfg.scan.amp_max - cfg.scan.amp_min) *
                                         static_cast<double>(i) /
                                         static_cast<double>(std::max<std::size_t>(
                                             1, amps.size() - 1));
    const PowerCurve curve = critical_power(cfg.medium, w, amps);

    const RadialProfile prof = solve_profile(cfg.run.e0, cfg.medium, w);
    const CurvatureScan scan =
        find_fixed_point(prof, cfg.medium, w, cfg.scan.c_min, cfg.scan.c_max, cfg.scan.n_c);
    scan_outputs(scan, out);
    if (!scan.c0)
        throw std::runtime_error("torus: no curvature fixed point in the scan range");

    const double r0 = 1.0 / *scan.c0;
    const MPolicy policy =
        cfg.scan.m_policy == "nearest" ? MPolicy::Nearest : MPolicy::AllWithin;
    auto solutions = quantize(r0, w, policy, cfg.scan.m_delta);
    json jsol = json::array();
    for (auto& s : solutions) {
        s.energy = torus_energy(curve.critical_power, s, cfg.medium);
        jsol.push_back(json{{"r0", s.r0},
                            {"m", s.m},
                            {"lambda_adj", s.lambda_adj},
                            {"freq_shift", s.freq_shift},
                            {"energy", s.energy}});
    }
    out.write_json("torus.json", json{{"c0", *scan.c0},
                                      {"stable", scan.stable},
                                      {"critical_power", curve.critical_power},
                                      {"solutions", jsol}});
}

void run_sweep(const RunConfig& cfg, const WaveParams& w, OutputSet& out) {
    std::vector<double> mu1s = cfg.scan.mu1_values;
    std::vector<double> usats = cfg.scan.u_sat_values;
    if (mu1s.empty()) mu1s = {cfg.medium.mu1};
    if (usats.empty()) usats = {cfg.medium.u_sat};
    std::vector<std::pair<MediumParams, double>> grid;
    for (double m1 : mu1s)
        for (double us : usats) {
            MediumParams p = cfg.medium;
            p.mu1 = m1;
            p.u_sat = us;
            grid.emplace_back(p, cfg.run.e0);
        }
    const SweepReport rep =
        sweep_gamma(grid, w, cfg.scan.c_min, cfg.scan.c_max, cfg.scan.n_c);
    std::string csv = "mu1,u_sat,e0,c0,stable,error\n";
    for (const auto& cell : rep.cells)
        csv += f17(cell.params.mu1) + "," + f17(cell.params.u_sat) + "," + f17(cell.e0) + "," +
               (cell.c0 ? f17(*cell.c0) : "") + "," + (cell.stable ? "true" : "false") + ",\"" +
               cell.error + "\"\n";
    out.write_text("sweep.csv", csv);
}

}  // namespace

RunManifest dispatch(const std::string& subcommand, const RunConfig& cfg,
                     const std::string& out_dir) {
    fs::create_directories(out_dir);
    const WaveParams w = WaveParams::from_k0(cfg.wave.k0, cfg.medium);
    OutputSet out{out_dir, {}};

    try {
        if (subcommand == "profile")
            run_profile(cfg, w, out);
        else if (subcommand == "propagate")
            run_propagate(cfg, w, out);
        else if (subcommand == "stability")
            run_stability_cmd(cfg, w, out);
        else if (subcommand == "pair")
            run_pair_cmd(cfg, w, out);
        else if (subcommand == "young")
            run_young_cmd(cfg, w, out);
        else if (subcommand == "curvature")
            run_curvature(cfg, w, out);
        else if (subcommand == "torus")
            run_torus(cfg, w, out);
        else if (subcommand == "sweep")
            run_sweep(cfg, w, out);
        else
            throw UsageError("unknown subcommand '" + subcommand + "'");
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        json err{{"subcommand", subcommand}, {"error", e.what()}};
        std::ofstream f(out_dir + "/error_report.json", std::ios::trunc);
        f << err.dump(2) << "\n";
        throw;
    }

    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.config_hash = sha256_hex(serialize_config(cfg));
    manifest.wall_clock = iso_now();
    for (const auto& name : out.files)
        manifest.outputs.emplace_back(name, sha256_file(out_dir + "/" + name));
    write_manifest(manifest, out_dir);
    return manifest;
}

}  // namespace toroton
