#ifndef ZKLAB_SCENARIOS_HPP
#define ZKLAB_SCENARIOS_HPP

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "zklab/config.hpp"
#include "zklab/csv.hpp"
#include "zklab/diagnostics.hpp"
#include "zklab/mollify.hpp"
#include "zklab/probes.hpp"

namespace zklab {

inline const char* kResultSchema = "zklab-results-1";
inline const char* kVersion = "0.1.0";

struct ScenarioResult {
    ResultTable table;
    bool pass = true;
};

namespace detail {

// Centered Gaussian bump, the stock localized initial datum.
inline RealField2 gaussian_data(const Grid2& g, double amp, double width) {
    RealField2 f(g);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double x = g.x(ix) - 0.5 * g.Lx, y = g.y(iy) - 0.5 * g.Ly;
            f.at(ix, iy) = amp * std::exp(-(x * x + y * y) / (width * width));
        }
    return f;
}

// Rough deterministic datum with spectrum (1 + |k|^2)^{-p}, normalized to
// the requested H^1 size. Genuinely rough data keeps the smoothing sweep
// away from the double-precision floor.
inline RealField2 power_law_data(const Grid2& g, double p, double h1_size, std::uint64_t seed) {
    Rng rng(seed);
    SpectralField2 f(g);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double kx = g.kx(ix), ky = g.ky(iy);
            const double mag = std::pow(1.0 + kx * kx + ky * ky, -p);
            const double phase = 2.0 * M_PI * rng.next_double();
            f.at(ix, iy) = mag * std::exp(cplx{0.0, phase});
        }
    SpectralField2 sym(g);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const int jx = (g.nx - ix) % g.nx, jy = (g.ny - iy) % g.ny;
            sym.at(ix, iy) = 0.5 * (f.at(ix, iy) + std::conj(f.at(jx, jy)));
        }
    const double h1 = sobolev_norm(sym, 1.0);
    for (cplx& c : sym.modes) c *= h1_size / h1;
    return inverse_transform(sym);
}

inline RealField2 scenario_data(const ScenarioConfig& sc) {
    const std::string kind = sc.file.get_string("data.kind", "gaussian");
    if (kind == "gaussian") {
        return gaussian_data(sc.grid, sc.file.get_double("data.amplitude", 1.0),
                             sc.file.get_double("data.width", 1.0));
    }
    if (kind == "power_law") {
        return power_law_data(sc.grid, sc.file.get_double("data.p", 1.25),
                              sc.file.get_double("data.h1_size", 1.0),
                              static_cast<std::uint64_t>(sc.file.get_long("data.seed", 1)));
    }
    throw config_error("config: unknown data.kind '" + kind + "'");
}

struct TablePrefix {
    std::string hash;
    std::string kind;
    std::string seed;

    explicit TablePrefix(const ScenarioConfig& sc)
        : hash(fnv1a_hex(sc.file.raw_text())), kind(kind_name(sc.kind)),
          seed(std::to_string(sc.seed)) {}

    static std::vector<std::string> columns(std::vector<std::string> extra) {
        std::vector<std::string> cols{"schema", "version", "config_hash", "kind", "seed"};
        cols.insert(cols.end(), extra.begin(), extra.end());
        return cols;
    }
    std::vector<std::string> row(std::vector<std::string> extra) const {
        std::vector<std::string> cells{kResultSchema, kVersion, hash, kind, seed};
        cells.insert(cells.end(), extra.begin(), extra.end());
        return cells;
    }
};

inline ScenarioResult run_conservation(const ScenarioConfig& sc) {
    const double tol1 = sc.file.get_double("params.tol_i1", 1e-8);
    const double tol2 = sc.file.get_double("params.tol_i2", 1e-8);
    const double tol3 = sc.file.get_double("params.tol_i3", 1e-6);
    const bool with_bg = sc.file.get_bool("params.with_background", false);

    const Trajectory traj = evolve(scenario_data(sc), sc.background, sc.solver);

    TablePrefix pre(sc);
    ScenarioResult res;
    res.table.columns = TablePrefix::columns(
        {"t", "I1", "I2", "I3", "dI1", "dI2_rel", "dI3_rel", "tol_i1", "tol_i2", "tol_i3",
         "pass"});

    ConservedTriple ref{};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        RealField2 v = inverse_transform(traj.at(i).u);
        if (with_bg) {
            const RealField2 psi = sample(sc.background, traj.at(i).t, sc.grid);
            for (std::size_t j = 0; j < v.values.size(); ++j) v.values[j] += psi.values[j];
        }
        const ConservedTriple c = invariants(v);
        if (i == 0) ref = c;
        const double d1 = std::abs(c.I1 - ref.I1);
        const double d2 = std::abs(c.I2 - ref.I2) / std::max(std::abs(ref.I2), 1e-300);
        const double d3 = std::abs(c.I3 - ref.I3) / std::max(std::abs(ref.I3), 1e-300);
        const bool ok = d1 <= tol1 && d2 <= tol2 && d3 <= tol3;
        res.pass = res.pass && ok;
        res.table.add_row(pre.row({csv_double(traj.at(i).t), csv_double(c.I1), csv_double(c.I2),
                                   csv_double(c.I3), csv_double(d1), csv_double(d2),
                                   csv_double(d3), csv_double(tol1), csv_double(tol2),
                                   csv_double(tol3), csv_bool(ok)}));
    }
    return res;
}

inline ScenarioResult run_scaling(const ScenarioConfig& sc) {
    const double lambda = sc.file.get_double("params.lambda", 4.0);
    const double tol = sc.file.get_double("params.tol", 1e-6);

    const RealField2 u0 = scenario_data(sc);
    const Trajectory direct = evolve(u0, sc.background, sc.solver);

    const RescaleResult rs = rescale(u0, sc.background, lambda);
    SolverConfig scaled = sc.solver;
    scaled.dt = sc.solver.dt * rs.time_scale;
    scaled.T = sc.solver.T * rs.time_scale;
    const Trajectory mapped = evolve(rs.data, rs.background, scaled);

    const RealField2 undone =
        rescale_undo_field(inverse_transform(mapped.states.back().u), lambda, sc.grid);
    const RealField2 target = inverse_transform(direct.states.back().u);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < undone.values.size(); ++i) {
        num += std::pow(undone.values[i] - target.values[i], 2);
        den += std::pow(target.values[i], 2);
    }
    const double mismatch = std::sqrt(num / std::max(den, 1e-300));
    const bool ok = mismatch <= tol;

    TablePrefix pre(sc);
    ScenarioResult res;
    res.pass = ok;
    res.table.columns =
        TablePrefix::columns({"lambda", "T", "l2_mismatch_rel", "tol", "pass"});
    res.table.add_row(pre.row({csv_double(lambda), csv_double(sc.solver.T),
                               csv_double(mismatch), csv_double(tol), csv_bool(ok)}));
    return res;
}

inline ScenarioResult run_bona_smith(const ScenarioConfig& sc) {
    const int kmin = static_cast<int>(sc.file.get_long("params.lambda_k_min", 1));
    const int kmax = static_cast<int>(sc.file.get_long("params.lambda_k_max", 5));
    const double s = sc.file.get_double("params.s", 1.0);
    const double creg_bound = sc.file.get_double("params.creg_bound", std::sqrt(5.0));
    if (kmin >= kmax) throw config_error("bona_smith: lambda_k_min must be < lambda_k_max");

    const RealField2 u0 = scenario_data(sc);
    const SpectralField2 u0h = forward_transform(u0);
    const double h_s = sobolev_norm(u0h, s);

    TablePrefix pre(sc);
    ScenarioResult res;
    res.table.columns = TablePrefix::columns(
        {"row", "lambda", "value", "reference", "flag_desc", "pass"});

    // mollifier inequalities on the data
    double prev_quotient = INFINITY;
    std::vector<Trajectory> runs;
    std::vector<double> lambdas;
    for (int k = kmin; k <= kmax; ++k) {
        const double lambda = std::pow(2.0, -k);
        lambdas.push_back(lambda);
        const SpectralField2 moll = mollify_spectral(u0h, lambda);

        SpectralField2 diff(sc.grid);
        for (std::size_t i = 0; i < diff.modes.size(); ++i)
            diff.modes[i] = u0h.modes[i] - moll.modes[i];
        const double quotient = sobolev_norm(diff, 0.0) / lambda;
        const bool qok = quotient < prev_quotient;
        res.pass = res.pass && qok;
        res.table.add_row(pre.row({"quotient", csv_double(lambda), csv_double(quotient),
                                   csv_double(prev_quotient), "quotient_decreasing",
                                   csv_bool(qok)}));
        prev_quotient = quotient;

        const double creg = lambda * sobolev_norm(moll, s + 1.0) / h_s;
        const bool cok = creg <= creg_bound;
        res.pass = res.pass && cok;
        res.table.add_row(pre.row({"regularization", csv_double(lambda), csv_double(creg),
                                   csv_double(creg_bound), "creg_bounded", csv_bool(cok)}));

        runs.push_back(evolve(inverse_transform(moll), sc.background, sc.solver));
    }

    // convergence of the mollified solutions: sup-in-time H^s differences of
    // consecutive runs must decrease along the sweep
    double prev_diff = INFINITY;
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
        double sup = 0.0;
        for (std::size_t r = 0; r < runs[i].size(); ++r) {
            SpectralField2 d(sc.grid);
            for (std::size_t m = 0; m < d.modes.size(); ++m)
                d.modes[m] = runs[i].at(r).u.modes[m] - runs[i + 1].at(r).u.modes[m];
            sup = std::max(sup, sobolev_norm(d, s));
        }
        const bool ok = sup < prev_diff;
        res.pass = res.pass && ok;
        res.table.add_row(pre.row({"solution_diff", csv_double(lambdas[i]), csv_double(sup),
                                   csv_double(prev_diff), "diff_decreasing", csv_bool(ok)}));
        prev_diff = sup;
    }
    return res;
}

inline ScenarioResult run_background_perturbation(const ScenarioConfig& sc) {
    const std::vector<double> orders =
        sc.file.has("params.sobolev_orders") ? sc.file.get_double_list("params.sobolev_orders")
                                             : std::vector<double>{0.0, 1.0};
    const double res_h3_max = sc.file.get_double("params.res_h3_max", 1e30);

    const Trajectory traj = evolve(scenario_data(sc), sc.background, sc.solver);
    const std::vector<DiagnosticsRecord> table = diagnostics_table(traj, sc.background, orders);

    std::vector<double> times;
    for (const auto& st : traj.states) times.push_back(st.t);
    const HypothesisReport hyp = hypothesis_report(sc.background, times, sc.grid);
    const bool hyp_ok = std::isfinite(hyp.w4inf) && hyp.resH3 <= res_h3_max;

    TablePrefix pre(sc);
    ScenarioResult res;
    std::vector<std::string> cols{"t",       "I1",   "I2",       "I3",
                                  "energy",  "l2_rate", "gronwall_bound", "gronwall_ok",
                                  "w4inf",   "resH3", "pass"};
    for (double s : orders) cols.push_back("h" + csv_double(s));
    res.table.columns = TablePrefix::columns(cols);

    for (const DiagnosticsRecord& r : table) {
        res.pass = res.pass && r.gronwall_ok && hyp_ok;
        std::vector<std::string> cells{
            csv_double(r.t),       csv_double(r.I1),
            csv_double(r.I2),      csv_double(r.I3),
            csv_double(r.modified_energy), csv_double(r.l2_rate),
            csv_double(r.gronwall_bound),  csv_bool(r.gronwall_ok),
            csv_double(hyp.w4inf), csv_double(hyp.resH3),
            csv_bool(r.gronwall_ok && hyp_ok)};
        for (double v : r.sobolev_s) cells.push_back(csv_double(v));
        res.table.add_row(pre.row(cells));
    }
    return res;
}

inline ScenarioResult run_growth_bound(const ScenarioConfig& sc) {
    const double tol_scale = sc.file.get_double("params.tol_scale", 1e-6);
    const Trajectory traj = evolve(scenario_data(sc), sc.background, sc.solver);
    const GronwallReport rep = gronwall_check(traj, sc.background, tol_scale);

    TablePrefix pre(sc);
    ScenarioResult res;
    res.table.columns = TablePrefix::columns(
        {"t", "mass", "l2_rate", "bound", "rate_ok", "C_data", "C_psi", "envelope_ok", "pass"});
    res.pass = rep.rate_ok && rep.envelope_ok;
    for (const GronwallRecord& r : rep.records) {
        res.table.add_row(pre.row({csv_double(r.t), csv_double(r.mass), csv_double(r.l2_rate),
                                   csv_double(r.bound), csv_bool(r.ok),
                                   csv_double(rep.envelope.C_data), csv_double(rep.envelope.C_psi),
                                   csv_bool(rep.envelope_ok), csv_bool(res.pass)}));
    }
    return res;
}

inline std::array<DyadicSupportSpec, 3> parse_tuple(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> v;
    double x;
    while (in >> x) v.push_back(x);
    if (v.size() != 6 && v.size() != 9)
        throw config_error("bilinear tuple must have 6 or 9 entries 'H1 H2 H3 L1 L2 L3 [N1 N2 N3]'");
    auto dy = [](double d) {
        const auto u = static_cast<std::uint64_t>(d);
        if (static_cast<double>(u) != d || u == 0 || (u & (u - 1)) != 0)
            throw config_error("bilinear tuple entries must be powers of two");
        return u;
    };
    std::array<DyadicSupportSpec, 3> specs{};
    for (int i = 0; i < 3; ++i) {
        specs[i].H = DyadicIndex{dy(v[i])};
        specs[i].L = DyadicIndex{dy(v[3 + i])};
        if (v.size() == 9) specs[i].N = (v[6 + i] == 0.0) ? 0 : dy(v[6 + i]);
    }
    return specs;
}

inline ScenarioResult run_bilinear_probe(const ScenarioConfig& sc) {
    const std::string case_name = sc.file.get_string("params.case", "a");
    BilinearCase cs;
    if (case_name == "a")
        cs = BilinearCase::A;
    else if (case_name == "b")
        cs = BilinearCase::B;
    else if (case_name == "c")
        cs = BilinearCase::C;
    else
        throw config_error("bilinear_probe: unknown case '" + case_name + "'");

    const int nt = static_cast<int>(sc.file.get_long("params.nt", 1024));
    const int trials = static_cast<int>(sc.file.get_long("params.trials", 200));
    const double ratio_bound = sc.file.get_double("params.ratio_bound", 50.0);
    const double spread_bound = sc.file.get_double("params.spread_bound", 10.0);
    const SpaceTimeGrid g(nt, 2.0 * M_PI, sc.grid);

    TablePrefix pre(sc);
    ScenarioResult res;
    res.table.columns = TablePrefix::columns({"row", "case", "tuple", "trials", "ratio_min",
                                              "ratio_median", "ratio_max", "raw_median", "value",
                                              "bound", "pass"});

    std::vector<std::string> tuple_keys = sc.file.keys_with_prefix("params.tuple");
    std::sort(tuple_keys.begin(), tuple_keys.end());
    for (const std::string& key : tuple_keys) {
        const std::string text = sc.file.get_string(key);
        const auto specs = parse_tuple(text);
        const RatioStats st = bilinear_probe(cs, g, specs, trials, sc.seed);
        const bool bounded = std::isfinite(st.max) && st.max <= ratio_bound;
        const bool spread = st.max <= spread_bound * st.median;
        res.pass = res.pass && bounded && spread;
        res.table.add_row(pre.row({"tuple_stats", case_name, text, std::to_string(st.trials),
                                   csv_double(st.min), csv_double(st.median), csv_double(st.max),
                                   csv_double(st.raw_median), csv_double(st.max),
                                   csv_double(std::min(ratio_bound, spread_bound * st.median)),
                                   csv_bool(bounded && spread)}));
    }

    // exponent regressions: sweep one dyadic parameter of a template tuple and
    // regress the raw functional median against it
    for (const std::string which : {"hmin", "lmin"}) {
        const std::string skey = "params." + which + "_sweep";
        if (!sc.file.has(skey)) continue;
        const std::vector<double> sweep = sc.file.get_double_list(skey);
        const std::string tmpl = sc.file.get_string(skey + "_tuple");
        const double expected = sc.file.get_double(skey + "_exponent", 0.5);
        const double tol = sc.file.get_double(skey + "_tol", 0.15);
        const int sweep_trials = static_cast<int>(sc.file.get_long(skey + "_trials", 25));
        const int sweep_nt = static_cast<int>(sc.file.get_long(skey + "_nt", nt));
        const SpaceTimeGrid gs(sweep_nt, 2.0 * M_PI, sc.grid);

        std::vector<double> raw;
        for (double v : sweep) {
            auto specs = parse_tuple(tmpl);
            if (which == "hmin")
                specs[0].H = DyadicIndex{static_cast<std::uint64_t>(v)};
            else
                specs[0].L = DyadicIndex{static_cast<std::uint64_t>(v)};
            const RatioStats st = bilinear_probe(cs, gs, specs, sweep_trials, sc.seed);
            raw.push_back(st.raw_median);
            res.table.add_row(pre.row({which + "_sweep_point", case_name, tmpl,
                                       std::to_string(sweep_trials), csv_double(st.min),
                                       csv_double(st.median), csv_double(st.max),
                                       csv_double(st.raw_median), csv_double(v), "", "1"}));
        }
        const double slope = fit_log2_slope(sweep, raw);
        const bool ok = std::abs(slope - expected) <= tol;
        res.pass = res.pass && ok;
        res.table.add_row(pre.row({which + "_exponent", case_name, tmpl, "", "", "", "",
                                   "", csv_double(slope), csv_double(expected), csv_bool(ok)}));
    }
    return res;
}

inline ScenarioResult run_strichartz_probe(const ScenarioConfig& sc) {
    const int nt = static_cast<int>(sc.file.get_long("params.nt", 64));
    const int trials = static_cast<int>(sc.file.get_long("params.trials", 100));
    const double tol = sc.file.get_double("params.refine_tol", 0.2);

    const StrichartzResult base = strichartz_probe(sc.grid, nt, trials, sc.seed);
    const StrichartzResult fine_t = strichartz_probe(sc.grid, 2 * nt, trials, sc.seed);
    const Grid2 g2(2 * sc.grid.nx, 2 * sc.grid.ny, sc.grid.Lx, sc.grid.Ly);
    const StrichartzResult fine_x = strichartz_probe(g2, nt, trials, sc.seed);

    const bool ok_t = std::abs(base.stats.max - fine_t.stats.max) <= tol * fine_t.stats.max;
    const bool ok_x = std::abs(base.stats.max - fine_x.stats.max) <= tol * fine_x.stats.max;
    const bool finite = std::isfinite(base.stats.max) && base.stats.max > 0.0;

    TablePrefix pre(sc);
    ScenarioResult res;
    res.pass = ok_t && ok_x && finite;
    res.table.columns = TablePrefix::columns(
        {"variant", "nt", "nx", "trials", "ratio_min", "ratio_median", "ratio_max", "tol",
         "pass"});
    auto row = [&](const char* name, int nt_, int nx_, const StrichartzResult& r, bool ok) {
        res.table.add_row(pre.row({name, std::to_string(nt_), std::to_string(nx_),
                                   std::to_string(trials), csv_double(r.stats.min),
                                   csv_double(r.stats.median), csv_double(r.stats.max),
                                   csv_double(tol), csv_bool(ok)}));
    };
    row("base", nt, sc.grid.nx, base, finite);
    row("refined_time", 2 * nt, sc.grid.nx, fine_t, ok_t);
    row("refined_space", nt, g2.nx, fine_x, ok_x);
    return res;
}

inline ScenarioResult run_commutator_probe(const ScenarioConfig& sc) {
    const std::uint64_t h_min = sc.file.get_dyadic("params.h_min");
    const std::uint64_t h_max = sc.file.get_dyadic("params.h_max");
    const double ratio_bound = sc.file.get_double("params.ratio_bound", 5.0);

    Rng rng(sc.seed);
    RealField2 u(sc.grid), V(sc.grid);
    for (double& v : u.values) v = rng.next_gaussian();
    for (int ix = 0; ix < sc.grid.nx; ++ix)
        for (int iy = 0; iy < sc.grid.ny; ++iy)
            V.at(ix, iy) = std::sin(sc.grid.x(ix) / 8.0);

    TablePrefix pre(sc);
    ScenarioResult res;
    res.table.columns =
        TablePrefix::columns({"H", "lhs", "rhs", "ratio", "ratio_bound", "pass"});
    for (std::uint64_t H = h_min; H <= h_max; H *= 2) {
        const CommutatorResult r = commutator_probe(DyadicIndex{H}, u, V);
        const bool ok = std::isfinite(r.ratio) && r.ratio <= ratio_bound;
        res.pass = res.pass && ok;
        res.table.add_row(pre.row({std::to_string(H), csv_double(r.lhs), csv_double(r.rhs),
                                   csv_double(r.ratio), csv_double(ratio_bound), csv_bool(ok)}));
    }
    return res;
}

} // namespace detail

// Execute a validated scenario; emits the result table to the configured
// output path (if any) and reports aggregated pass/fail.
inline ScenarioResult run_scenario(const ScenarioConfig& sc) {
    ScenarioResult res;
    switch (sc.kind) {
        case ScenarioKind::Conservation: res = detail::run_conservation(sc); break;
        case ScenarioKind::Scaling: res = detail::run_scaling(sc); break;
        case ScenarioKind::BonaSmith: res = detail::run_bona_smith(sc); break;
        case ScenarioKind::BackgroundPerturbation:
            res = detail::run_background_perturbation(sc);
            break;
        case ScenarioKind::GrowthBound: res = detail::run_growth_bound(sc); break;
        case ScenarioKind::BilinearProbe: res = detail::run_bilinear_probe(sc); break;
        case ScenarioKind::StrichartzProbe: res = detail::run_strichartz_probe(sc); break;
        case ScenarioKind::CommutatorProbe: res = detail::run_commutator_probe(sc); break;
    }
    if (!sc.output_path.empty()) emit_csv(res.table, sc.output_path);
    return res;
}

} // namespace zklab

#endif
