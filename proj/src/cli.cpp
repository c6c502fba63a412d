#include "gsbq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gsbq/dsurface.hpp"
#include "gsbq/errors.hpp"
#include "gsbq/evolution.hpp"
#include "gsbq/functionals.hpp"
#include "gsbq/kernels.hpp"
#include "gsbq/model.hpp"
#include "gsbq/parallel.hpp"
#include "gsbq/petviashvili.hpp"
#include "gsbq/textio.hpp"

namespace gsbq {

namespace {

std::string resolve_output(const std::string& name) {
    if (name.empty() || name.front() == '/') return name;
    const char* dir = std::getenv("GSBQ_OUTPUT_DIR");
    if (!dir || !*dir) return name;
    std::string d = dir;
    if (d.back() != '/') d += '/';
    return d + name;
}

void write_file(const std::string& name, const std::string& content) {
    const std::string path = resolve_output(name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out.good()) throw Error("failed while writing: " + path);
}

std::string stem_of(const std::string& output, const std::string& fallback) {
    std::string s = output.empty() ? fallback : output;
    for (const std::string ext : {".csv", ".json"}) {
        if (s.size() > ext.size() && s.compare(s.size() - ext.size(), ext.size(), ext) == 0) {
            s.resize(s.size() - ext.size());
            break;
        }
    }
    return s;
}

std::string jnum(double x) { return std::isfinite(x) ? num17(x) : "null"; }

Parity parse_parity(const std::string& s) {
    if (s == "odd") return Parity::Odd;
    if (s == "even") return Parity::Even;
    throw UsageError("parity must be odd or even, got: " + s);
}

WaveParams wave_params(const RunConfig& cfg) {
    WaveParams wp{cfg.beta, cfg.c, cfg.p, parse_parity(cfg.parity)};
    try {
        validate(wp);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return wp;
}

GridPtr cli_grid(const RunConfig& cfg) {
    try {
        return make_grid(cfg.half_length, cfg.n_points);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

SolveOptions solve_opts(const RunConfig& cfg) {
    SolveOptions so;
    so.max_iterations = cfg.max_iters;
    so.increment_tol = cfg.increment_tol;
    so.m_tol = cfg.m_tol;
    so.dealias = cfg.dealias;
    return so;
}

SurfaceOptions surface_opts(const RunConfig& cfg) {
    SurfaceOptions o;
    o.half_length = cfg.half_length;
    o.n_points = cfg.n_points;
    o.solve = solve_opts(cfg);
    o.init_amplitude = cfg.amp;
    o.init_width = cfg.width;
    return o;
}

// ---- config file -----------------------------------------------------------

double as_num(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw UsageError("config key '" + key + "' must be a number");
    return v.get<double>();
}

long long as_int(const nlohmann::json& v, const std::string& key) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d != std::floor(d)) throw UsageError("config key '" + key + "' must be an integer");
        return static_cast<long long>(std::llround(d));
    }
    throw UsageError("config key '" + key + "' must be an integer");
}

bool as_bool(const nlohmann::json& v, const std::string& key) {
    if (!v.is_boolean()) throw UsageError("config key '" + key + "' must be a boolean");
    return v.get<bool>();
}

std::string as_str(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw UsageError("config key '" + key + "' must be a string");
    return v.get<std::string>();
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "beta") cfg.beta = as_num(val, key);
        else if (key == "c") cfg.c = as_num(val, key);
        else if (key == "p") cfg.p = as_num(val, key);
        else if (key == "parity") cfg.parity = as_str(val, key);
        else if (key == "half-length") cfg.half_length = as_num(val, key);
        else if (key == "n") cfg.n_points = static_cast<std::size_t>(as_int(val, key));
        else if (key == "output") cfg.output = as_str(val, key);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_int(val, key));
        else if (key == "workers") cfg.workers = static_cast<int>(as_int(val, key));
        else if (key == "backend") cfg.backend = as_str(val, key);
        else if (key == "max-iters") cfg.max_iters = static_cast<int>(as_int(val, key));
        else if (key == "increment-tol") cfg.increment_tol = as_num(val, key);
        else if (key == "m-tol") cfg.m_tol = as_num(val, key);
        else if (key == "dealias") cfg.dealias = as_bool(val, key);
        else if (key == "amp") cfg.amp = as_num(val, key);
        else if (key == "width") cfg.width = as_num(val, key);
        else if (key == "x-max") cfg.x_max = as_num(val, key);
        else if (key == "x-samples") cfg.x_samples = static_cast<int>(as_int(val, key));
        else if (key == "with-oracle") cfg.with_oracle = as_bool(val, key);
        else if (key == "segment") cfg.segment = as_str(val, key);
        else if (key == "ellipse-k") cfg.ellipse_k = as_num(val, key);
        else if (key == "samples") cfg.samples = static_cast<int>(as_int(val, key));
        else if (key == "with-dcc") cfg.with_dcc = as_bool(val, key);
        else if (key == "resolution") cfg.resolution = static_cast<int>(as_int(val, key));
        else if (key == "dcc-step") cfg.dcc_step = as_num(val, key);
        else if (key == "t-final") cfg.t_final = as_num(val, key);
        else if (key == "dt") cfg.dt = as_num(val, key);
        else if (key == "record-every") cfg.record_every = static_cast<int>(as_int(val, key));
        else if (key == "perturb") cfg.perturb = as_str(val, key);
        else if (key == "delta") cfg.delta = as_num(val, key);
        else if (key == "evolve-init") cfg.evolve_init = as_str(val, key);
        else throw UsageError("unknown config key: " + key);
    }
}

// ---- commands --------------------------------------------------------------

std::string diagnostics_json(const SolitaryWave& wave) {
    const SolveDiagnostics& d = wave.diagnostics;
    std::string j = "{\n";
    j += "  \"beta\": " + jnum(wave.params.beta) + ",\n";
    j += "  \"c\": " + jnum(wave.params.c) + ",\n";
    j += "  \"p\": " + jnum(wave.params.p) + ",\n";
    j += "  \"parity\": \"" + std::string(wave.params.parity == Parity::Odd ? "odd" : "even") +
         "\",\n";
    j += "  \"iterations\": " + std::to_string(d.iterations) + ",\n";
    j += "  \"final_increment\": " + jnum(d.final_increment) + ",\n";
    j += "  \"m_deviation\": " + jnum(d.m_deviation) + ",\n";
    j += "  \"residual_sup\": " + jnum(d.residual_sup) + ",\n";
    j += "  \"ik_gap_rel\": " + jnum(d.ik_gap_rel) + ",\n";
    j += "  \"pohozaev_rel\": " + jnum(d.pohozaev_rel) + ",\n";
    j += "  \"boundary_tail\": " + jnum(d.boundary_tail) + "\n";
    j += "}\n";
    return j;
}

int cmd_solve(const RunConfig& cfg) {
    WaveParams wp = wave_params(cfg);
    GridPtr grid = cli_grid(cfg);
    SolitaryWave wave = petviashvili_solve(wp, grid, gaussian_init(grid, cfg.amp, cfg.width),
                                           solve_opts(cfg));
    const std::string stem = stem_of(cfg.output, "solve");
    std::string csv = "x,phi\n";
    for (std::size_t j = 0; j < grid->n_points; ++j)
        csv += num17(grid->nodes[j]) + ',' + num17(wave.profile.samples[j]) + '\n';
    write_file(stem + ".csv", csv);
    write_file(stem + "_diagnostics.json", diagnostics_json(wave));
    std::cout << "converged in " << wave.diagnostics.iterations
              << " iterations, residual_sup = " << num17(wave.diagnostics.residual_sup)
              << ", wrote " << stem << ".csv and " << stem << "_diagnostics.json\n";
    return 0;
}

int cmd_kernel(const RunConfig& cfg) {
    WaveParams wp = wave_params(cfg);
    if (!(cfg.x_max > 0) || cfg.x_samples < 2)
        throw UsageError("kernel table needs x-max > 0 and x-samples >= 2");
    const std::string stem = stem_of(cfg.output, "kernel");
    std::string csv = cfg.with_oracle ? "x,closed,oracle,abs_diff\n" : "x,closed\n";
    for (int i = 0; i < cfg.x_samples; ++i) {
        const double x = -cfg.x_max + 2.0 * cfg.x_max * i / (cfg.x_samples - 1);
        const double closed = kernel_eval(x, wp.beta, wp.c);
        csv += num17(x) + ',' + num17(closed);
        if (cfg.with_oracle) {
            const double oracle = kernel_oracle(x, wp.beta, wp.c);
            csv += ',' + num17(oracle) + ',' + num17(std::abs(closed - oracle));
        }
        csv += '\n';
    }
    write_file(stem + ".csv", csv);
    std::cout << "wrote " << stem << ".csv (" << cfg.x_samples << " samples)\n";
    return 0;
}

int cmd_functionals(const RunConfig& cfg) {
    WaveParams wp = wave_params(cfg);
    GridPtr grid = cli_grid(cfg);
    SolitaryWave wave = petviashvili_solve(wp, grid, gaussian_init(grid, cfg.amp, cfg.width),
                                           solve_opts(cfg));
    FunctionalReport r = functional_report(wave);
    InstabilityDirections dir = instability_direction_forms(wave);
    std::string j = "{\n";
    j += "  \"beta\": " + jnum(wp.beta) + ",\n";
    j += "  \"c\": " + jnum(wp.c) + ",\n";
    j += "  \"p\": " + jnum(wp.p) + ",\n";
    j += "  \"parity\": \"" + cfg.parity + "\",\n";
    j += "  \"I\": " + jnum(r.I) + ",\n";
    j += "  \"K\": " + jnum(r.K) + ",\n";
    j += "  \"E\": " + jnum(r.E) + ",\n";
    j += "  \"Q\": " + jnum(r.Q) + ",\n";
    j += "  \"Q1\": " + jnum(r.Q1) + ",\n";
    j += "  \"Q2\": " + jnum(r.Q2) + ",\n";
    j += "  \"Q3_k1\": " + jnum(r.Q3_k1) + ",\n";
    j += "  \"action_L\": " + jnum(r.action_L) + ",\n";
    j += "  \"nehari_P\": " + jnum(r.nehari_P) + ",\n";
    j += "  \"m_ratio\": " + jnum(r.m_ratio) + ",\n";
    j += "  \"d_value\": " + jnum(r.d_value) + ",\n";
    j += "  \"dir_i_value\": " + jnum(dir.dir_i_value) + ",\n";
    j += "  \"dir_ii_value\": " + jnum(dir.dir_ii_value) + ",\n";
    j += "  \"q_orth_i\": " + jnum(dir.q_orth_i) + ",\n";
    j += "  \"q_orth_ii\": " + jnum(dir.q_orth_ii) + ",\n";
    j += "  \"pohozaev_rel\": " + jnum(wave.diagnostics.pohozaev_rel) + ",\n";
    j += "  \"ik_gap_rel\": " + jnum(wave.diagnostics.ik_gap_rel) + "\n";
    j += "}\n";
    const std::string stem = stem_of(cfg.output, "functionals");
    write_file(stem + ".json", j);
    std::cout << "wrote " << stem << ".json\n";
    return 0;
}

Segment parse_segment(const std::string& s) {
    if (s == "s1") return Segment::S1;
    if (s == "s2") return Segment::S2;
    if (s == "ellipse") return Segment::CustomEllipse;
    throw UsageError("segment must be s1, s2 or ellipse, got: " + s);
}

int cmd_sweep(const RunConfig& cfg) {
    if (cfg.samples < 1) throw UsageError("sweep needs samples >= 1");
    if (!(cfg.p > 1)) throw UsageError("nonlinearity exponent must satisfy p > 1");
    SweepSpec spec;
    spec.segment = parse_segment(cfg.segment);
    spec.ellipse_k = cfg.ellipse_k;
    spec.samples = cfg.samples;
    spec.p = cfg.p;
    spec.parity = parse_parity(cfg.parity);
    spec.with_dcc = cfg.with_dcc;
    spec.opt = surface_opts(cfg);
    std::vector<SweepRow> rows = sweep_segment(spec);
    const std::string stem = stem_of(cfg.output, "sweep");
    write_file(stem + ".csv", sweep_csv(rows));
    int failures = 0;
    for (const auto& r : rows)
        if (!r.error.empty()) ++failures;
    std::cout << "wrote " << stem << ".csv (" << rows.size() << " rows, " << failures
              << " failures)\n";
    return 0;
}

int cmd_atlas(const RunConfig& cfg) {
    if (cfg.resolution < 8) throw UsageError("atlas needs resolution >= 8");
    if (!(cfg.p > 1)) throw UsageError("nonlinearity exponent must satisfy p > 1");
    NodalAtlas atlas = nodal_atlas(cfg.p, parse_parity(cfg.parity), cfg.resolution,
                                   surface_opts(cfg));
    const std::string stem = stem_of(cfg.output, "atlas");
    write_file(stem + ".csv", sweep_csv(atlas.samples));
    write_file(stem + "_crossings.csv", crossings_csv(atlas.crossings));
    std::cout << "wrote " << stem << ".csv and " << stem << "_crossings.csv ("
              << atlas.samples.size() << " samples, " << atlas.crossings.size()
              << " crossings)\n";
    return 0;
}

int cmd_classify(const RunConfig& cfg) {
    if (!(cfg.p > 1)) throw UsageError("nonlinearity exponent must satisfy p > 1");
    const Parity parity = parse_parity(cfg.parity);
    std::string cls;
    std::string provenance = "null";
    double d = std::nan(""), dc = std::nan(""), db = std::nan(""), dcc = std::nan(""),
           mass = std::nan("");
    if (params_valid({cfg.beta, cfg.c, cfg.p, parity})) {
        DPoint pt = d_point_auto(cfg.beta, cfg.c, cfg.p, parity, surface_opts(cfg));
        cls = to_string(pt.classification);
        provenance = "\"" + to_string(pt.provenance) + "\"";
        d = pt.d;
        dc = pt.d_c;
        db = pt.d_beta;
        if (pt.d_cc) dcc = *pt.d_cc;
        mass = pt.mass;
    } else {
        cls = to_string(classify_point(cfg.beta, cfg.c, cfg.p, parity));
    }
    std::string j = "{\n";
    j += "  \"beta\": " + jnum(cfg.beta) + ",\n";
    j += "  \"c\": " + jnum(cfg.c) + ",\n";
    j += "  \"p\": " + jnum(cfg.p) + ",\n";
    j += "  \"parity\": \"" + cfg.parity + "\",\n";
    j += "  \"classification\": \"" + cls + "\",\n";
    j += "  \"provenance\": " + provenance + ",\n";
    j += "  \"d\": " + jnum(d) + ",\n";
    j += "  \"d_c\": " + jnum(dc) + ",\n";
    j += "  \"d_beta\": " + jnum(db) + ",\n";
    j += "  \"d_cc\": " + jnum(dcc) + ",\n";
    j += "  \"mass\": " + jnum(mass) + "\n";
    j += "}\n";
    const std::string stem = stem_of(cfg.output, "classify");
    write_file(stem + ".json", j);
    std::cout << cls << ", wrote " << stem << ".json\n";
    return 0;
}

int cmd_evolve(const RunConfig& cfg) {
    if (!(cfg.dt > 0) || !(cfg.t_final >= 0) || cfg.record_every < 1)
        throw UsageError("evolution needs dt > 0, t-final >= 0, record-every >= 1");
    WaveParams wp = wave_params(cfg);
    GridPtr grid = cli_grid(cfg);

    SolitaryWave wave = [&] {
        if (cfg.evolve_init == "solve")
            return petviashvili_solve(wp, grid, gaussian_init(grid, cfg.amp, cfg.width),
                                      solve_opts(cfg));
        if (cfg.evolve_init == "exact") {
            if (cfg.p != std::floor(cfg.p) || cfg.p < 2)
                throw UsageError("the closed-form profile needs integer p >= 2");
            return exact_profile(static_cast<int>(std::llround(cfg.p)), cfg.c, grid);
        }
        throw UsageError("evolve-init must be solve or exact, got: " + cfg.evolve_init);
    }();
    wp = wave.params;  // exact profiles pin their own beta

    StatePair initial = [&] {
        if (cfg.perturb == "scale")
            return make_perturbation(wave.profile, wp.c, PerturbKind::Scale, cfg.delta, cfg.seed);
        if (cfg.perturb == "noise")
            return make_perturbation(wave.profile, wp.c, PerturbKind::BandlimitedNoise, cfg.delta,
                                     cfg.seed);
        if (cfg.perturb == "direction-i")
            return make_perturbation(wave.profile, wp.c, PerturbKind::DirectionI, cfg.delta,
                                     cfg.seed);
        if (cfg.perturb == "none")
            return make_perturbation(wave.profile, wp.c, PerturbKind::Scale, 0.0, cfg.seed);
        throw UsageError("perturb must be scale, noise, direction-i or none, got: " + cfg.perturb);
    }();

    EvolveOptions eo;
    eo.t_final = cfg.t_final;
    eo.dt = cfg.dt;
    eo.record_every = cfg.record_every;
    eo.dealias = cfg.dealias;
    eo.keep_snapshots = true;
    EvolveResult res = evolve(wp, initial, eo);

    std::string csv = "t,E_drift,Q_drift,Q1_drift,Q2_drift,Q3_drift,orbital_distance\n";
    for (std::size_t i = 0; i < res.monitor.size(); ++i) {
        const MonitorRow& row = res.monitor[i];
        const OrbitalFit fit = orbital_distance(res.snapshots[i], wave.profile, wp.c);
        csv += num17(row.t) + ',' + num17(row.e_drift) + ',' + num17(row.q_drift) + ',' +
               num17(row.q1_drift) + ',' + num17(row.q2_drift) + ',' + num17(row.q3_drift) + ',' +
               num17(fit.distance) + '\n';
    }
    const std::string stem = stem_of(cfg.output, "evolve");
    write_file(stem + ".csv", csv);
    std::cout << "reached t = " << num17(res.t_reached) << (res.blew_up ? " (norm blow-up)" : "")
              << ", wrote " << stem << ".csv\n";
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    (void)cfg;
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    try {
        GridPtr g = make_grid(60.0, 1024);
        SolitaryWave exact = exact_profile(2, 0.0, g);
        const double r = solitary_residual(exact);
        add("exact-profile-residual", r <= 1e-6, "sup residual " + num17(r));
    } catch (const std::exception& e) {
        add("exact-profile-residual", false, e.what());
    }

    SolitaryWave solved{};
    bool have_solved = false;
    try {
        GridPtr g = make_grid(120.0, 2048);
        solved = petviashvili_solve({-3.0, 0.0, 2.0, Parity::Odd}, g, gaussian_init(g));
        have_solved = true;
        const double gap = solved.diagnostics.ik_gap_rel;
        add("ground-state-iteration",
            gap <= 1e-6 && solved.diagnostics.residual_sup <= 1e-6,
            std::to_string(solved.diagnostics.iterations) + " iterations, ik gap " + num17(gap));
    } catch (const std::exception& e) {
        add("ground-state-iteration", false, e.what());
    }

    try {
        const double pi = 3.14159265358979323846;
        const double e1 = std::abs(kernel_eval(0, 0, 0) - pi / std::sqrt(2.0));
        const double e2 = std::abs(kernel_eval(0, -2, 0) - pi / 2.0);
        const double e3 = std::abs(kernel_eval(0, -3, 0) - pi / std::sqrt(5.0));
        const double e4 = std::abs(kernel_eval(0.7, -3, 0) - kernel_oracle(0.7, -3, 0));
        const double e5 = std::abs(kernel_eval(1.1, 1.5, 0.3) - kernel_oracle(1.1, 1.5, 0.3));
        const double worst = std::max({e1, e2, e3, e4, e5});
        add("kernel-closed-forms", worst <= 1e-8, "worst abs error " + num17(worst));
    } catch (const std::exception& e) {
        add("kernel-closed-forms", false, e.what());
    }

    if (have_solved) {
        try {
            FunctionalReport r = functional_report(solved);
            RealField cphi = solved.profile;
            kern::scale(std::span<double>(cphi.samples), -solved.params.c);
            StatePair pair{solved.profile, cphi};
            const double form = h_quadratic_form(pair, pair, solved);
            const double target = -2.0 * (solved.params.p + 1.0) * r.d_value;
            const double err = std::abs(form - target) / std::max(1.0, std::abs(target));
            add("quadratic-form-identity", err <= 1e-3, "relative gap " + num17(err));
        } catch (const std::exception& e) {
            add("quadratic-form-identity", false, e.what());
        }
    } else {
        add("quadratic-form-identity", false, "no solved profile available");
    }

    try {
        GridPtr g = make_grid(50.0, 512);
        StatePair w0{make_field(g), make_field(g)};
        for (std::size_t j = 0; j < g->n_points; ++j) {
            const double x = g->nodes[j];
            w0.u.samples[j] = 0.3 * std::exp(-x * x / 4.0);
            w0.v.samples[j] = 0.2 * x * std::exp(-x * x / 9.0);
        }
        EvolveOptions eo;
        eo.t_final = 0.5;
        eo.dt = 1e-3;
        eo.record_every = 100;
        EvolveResult res = evolve({-1.0, 0.0, 2.0, Parity::Odd}, w0, eo);
        const MonitorRow& last = res.monitor.back();
        const double worst = std::max(last.e_drift, last.q_drift);
        add("conservation-drift", worst <= 1e-8 && !res.blew_up,
            "max (E,Q) drift " + num17(worst));
    } catch (const std::exception& e) {
        add("conservation-drift", false, e.what());
    }

    try {
        SurfaceOptions so;
        so.half_length = 120.0;
        so.n_points = 2048;
        DPoint base = d_point(-1.0, 0.0, 2.0, Parity::Odd, so);
        DPoint moved = scaling_transport(base, 0.8, 2.0, Parity::Odd);
        DPoint direct = d_point(moved.beta, moved.c, 2.0, Parity::Odd, so);
        const double err = std::abs(moved.d - direct.d) / std::abs(direct.d);
        add("scaling-transport", err <= 1e-3, "relative gap " + num17(err));
    } catch (const std::exception& e) {
        add("scaling-transport", false, e.what());
    }

    int failed = 0;
    for (const auto& chk : checks) {
        std::cout << (chk.pass ? "pass" : "FAIL") << "  " << chk.name << "  (" << chk.detail
                  << ")\n";
        if (!chk.pass) ++failed;
    }
    if (failed == 0) {
        std::cout << "all " << checks.size() << " checks passed\n";
        return 0;
    }
    std::cout << failed << " of " << checks.size() << " checks failed\n";
    return 1;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;

    // the config file acts as a layer of defaults, so pull it out first
    std::vector<std::string> rest;
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file path");
            config_path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    if (!config_path.empty()) {
        cfg.config_path = config_path;
        apply_config_file(config_path, cfg);
    }

    CLI::App app{"solitary waves of a sixth-order dispersive wave equation"};
    app.require_subcommand(0, 1);

    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--beta", cfg.beta, "second-order dispersion coefficient");
        sub->add_option("--c", cfg.c, "wave speed");
        sub->add_option("--p", cfg.p, "nonlinearity exponent, p > 1");
        sub->add_option("--parity", cfg.parity, "nonlinearity family: odd | even");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--half-length", cfg.half_length, "domain half length");
        sub->add_option("--n", cfg.n_points, "grid points, power of two >= 16");
    };
    auto add_solver = [&](CLI::App* sub) {
        sub->add_option("--max-iters", cfg.max_iters, "iteration budget");
        sub->add_option("--increment-tol", cfg.increment_tol, "sup-increment stop threshold");
        sub->add_option("--m-tol", cfg.m_tol, "|M - 1| acceptance threshold");
        sub->add_flag("--dealias,!--no-dealias", cfg.dealias, "2/3-rule truncation");
        sub->add_option("--amp", cfg.amp, "Gaussian seed amplitude");
        sub->add_option("--width", cfg.width, "Gaussian seed width");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--output", cfg.output, "output file or stem");
        sub->add_option("--workers", cfg.workers, "worker threads (0 keeps the default)");
        sub->add_option("--backend", cfg.backend, "execution backend: serial | openmp");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--config", cfg.config_path,
                        "JSON file of defaults, long option names as keys");
    };

    CLI::App* solve = app.add_subcommand("solve", "compute a ground state profile");
    add_params(solve);
    add_grid(solve);
    add_solver(solve);
    add_common(solve);

    CLI::App* kernel = app.add_subcommand("kernel", "tabulate the convolution kernel");
    add_params(kernel);
    add_common(kernel);
    kernel->add_option("--x-max", cfg.x_max, "half width of the table");
    kernel->add_option("--x-samples", cfg.x_samples, "table rows");
    kernel->add_flag("--with-oracle", cfg.with_oracle, "add quadrature oracle columns");

    CLI::App* functionals = app.add_subcommand("functionals", "solve and report the functionals");
    add_params(functionals);
    add_grid(functionals);
    add_solver(functionals);
    add_common(functionals);

    CLI::App* sweep = app.add_subcommand("sweep", "sample the wave-action surface on a segment");
    add_params(sweep);
    add_grid(sweep);
    add_solver(sweep);
    add_common(sweep);
    sweep->add_option("--segment", cfg.segment, "s1 | s2 | ellipse");
    sweep->add_option("--ellipse-k", cfg.ellipse_k, "ellipse parameter beta / sqrt(1 - c^2)");
    sweep->add_option("--samples", cfg.samples, "points along the segment");
    sweep->add_flag("--with-dcc,!--no-dcc", cfg.with_dcc, "second speed derivative per point");

    CLI::App* atlas = app.add_subcommand("atlas", "map curvature and its sign-change curve");
    add_params(atlas);
    add_grid(atlas);
    add_solver(atlas);
    add_common(atlas);
    atlas->add_option("--resolution", cfg.resolution, "points per segment, >= 8");

    CLI::App* classify = app.add_subcommand("classify", "stability verdict for one point");
    add_params(classify);
    add_grid(classify);
    add_solver(classify);
    add_common(classify);
    classify->add_option("--dcc-step", cfg.dcc_step, "difference step (0 = adaptive)");

    CLI::App* evolve_cmd = app.add_subcommand("evolve", "time evolution near a solitary wave");
    add_params(evolve_cmd);
    add_grid(evolve_cmd);
    add_solver(evolve_cmd);
    add_common(evolve_cmd);
    evolve_cmd->add_option("--t-final", cfg.t_final, "final time");
    evolve_cmd->add_option("--dt", cfg.dt, "time step");
    evolve_cmd->add_option("--record-every", cfg.record_every, "steps between monitor rows");
    evolve_cmd->add_option("--perturb", cfg.perturb, "scale | noise | direction-i | none");
    evolve_cmd->add_option("--delta", cfg.delta, "perturbation size");
    evolve_cmd->add_option("--evolve-init", cfg.evolve_init,
                           "profile source: solve | exact (pins its own beta)");

    CLI::App* validate = app.add_subcommand("validate", "run the built-in check battery");
    add_common(validate);

    std::vector<std::string> rev(rest.rbegin(), rest.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        cfg.command = "help";
        auto subs = app.get_subcommands();
        cfg.help_text = subs.empty() ? app.help() : subs.front()->help();
        return cfg;
    } catch (const CLI::CallForAllHelp&) {
        cfg.command = "help";
        cfg.help_text = app.help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    auto subs = app.get_subcommands();
    if (subs.empty()) {
        cfg.command = "help";
        cfg.help_text = app.help();
        return cfg;
    }
    cfg.command = subs.front()->get_name();
    return cfg;
}

int run_command(const RunConfig& cfg) {
    if (cfg.command == "help") {
        std::cout << cfg.help_text;
        return 0;
    }
    if (!cfg.backend.empty()) {
        if (cfg.backend == "serial") par::set_backend(par::Backend::Serial);
        else if (cfg.backend == "openmp") par::set_backend(par::Backend::OpenMP);
        else throw UsageError("backend must be serial or openmp, got: " + cfg.backend);
    }
    if (cfg.workers < 0) throw UsageError("workers must be >= 0");
    if (cfg.workers > 0) par::set_workers(cfg.workers);

    if (cfg.command == "solve") return cmd_solve(cfg);
    if (cfg.command == "kernel") return cmd_kernel(cfg);
    if (cfg.command == "functionals") return cmd_functionals(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "atlas") return cmd_atlas(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    if (cfg.command == "evolve") return cmd_evolve(cfg);
    if (cfg.command == "validate") return cmd_validate(cfg);
    throw UsageError("unknown command: " + cfg.command);
}

int cli_main(const std::vector<std::string>& args) {
    try {
        return run_command(parse_config(args));
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(args);
}

}  // namespace gsbq
