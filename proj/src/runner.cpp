#include "dynamo/runner.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "dynamo/dynamics.hpp"
#include "dynamo/stability.hpp"
#include "dynamo/valuations.hpp"

namespace dynamo {

const std::vector<std::string> kSubcommands = {
    "check-lift", "per-points",  "lift",           "tate-voloch",
    "manin-mumford", "stability", "backward-orbit", "gauss-norm"};

namespace {

std::string point_text(const std::vector<ResidueElement>& pt) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) os << ",";
        os << pt[i].to_string();
    }
    os << ")";
    return os.str();
}

std::string point_text(const std::vector<PAdicElement>& pt) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < pt.size(); ++i) {
        if (i) os << ",";
        os << pt[i].to_string();
    }
    os << ")";
    return os.str();
}

std::string cycle_text(const ResidueCycle& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (i) os << "->";
        os << point_text(c.points[i]);
    }
    return os.str();
}

struct Setup {
    ContextPtr ctx;
    PolyMap map;
    ExperimentConfig cfg;
};

Setup make_setup(const ExperimentConfig& cfg) {
    ContextPtr ctx = PAdicContext::make(cfg.p, cfg.k, cfg.precision);
    std::vector<Polynomial> comps;
    comps.reserve(cfg.map_texts.size());
    for (const auto& t : cfg.map_texts) comps.push_back(parse_polynomial(t, ctx, cfg.dim));
    return Setup{ctx, PolyMap(ctx, std::move(comps)), cfg};
}

VarietySpec make_variety(const Setup& s) {
    std::vector<Polynomial> gens;
    gens.reserve(s.cfg.variety_texts.size());
    for (const auto& t : s.cfg.variety_texts)
        gens.push_back(parse_polynomial(t, s.ctx, s.cfg.dim));
    return VarietySpec(s.ctx, std::move(gens));
}

ResiduePoint make_residue_point(const Setup& s) {
    ResiduePoint pt;
    pt.reserve(s.cfg.point_texts.size());
    for (const auto& t : s.cfg.point_texts) pt.push_back(reduce(parse_constant(t, s.ctx)));
    return pt;
}

std::vector<unsigned> effective_degrees(const ExperimentConfig& cfg) {
    if (cfg.degrees.empty()) return {cfg.k};
    std::vector<unsigned> ds = cfg.degrees;
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

void require_fields(const ExperimentConfig& cfg, bool variety, bool point) {
    std::vector<std::string> issues;
    if (variety && cfg.variety_texts.empty())
        issues.push_back("this subcommand requires at least one 'variety =' line");
    if (point && cfg.point_texts.empty())
        issues.push_back("this subcommand requires a 'point =' line");
    if (!issues.empty()) throw config_error(std::move(issues));
}

Report base_report(const std::string& kind, const ExperimentConfig& cfg) {
    Report r;
    r.kind = kind;
    r.config_echo = render_config(cfg);
    return r;
}

Report run_check_lift(const Setup& s, const RunOptions&) {
    Report r = base_report("check-lift", s.cfg);
    r.columns = {"component", "G", "q_exponents", "remainder_degree"};
    LiftRecognition rec = recognize_lift_of_pth_power(s.map);
    if (!rec.is_lift) {
        r.summary = "lift=no (" + rec.failure + ")";
        return r;
    }
    RestrictednessCheck rc = is_restricted_syntactic(s.map);
    for (unsigned i = 0; i < s.map.dim(); ++i) {
        std::string q = "-", fdeg = "-";
        if (rc.restricted) {
            std::ostringstream qs;
            for (std::size_t j = 0; j < rc.witness[i].root_exponents.size(); ++j) {
                if (j) qs << ",";
                qs << rc.witness[i].root_exponents[j];
            }
            q = qs.str();
            fdeg = std::to_string(rc.witness[i].remainder.degree());
        }
        r.rows.push_back({std::to_string(i), rec.root->components()[i].to_string(), q, fdeg});
    }
    r.summary = rc.restricted ? "lift=yes restricted_syntactic=yes"
                              : "lift=yes restricted_syntactic=no (" + rc.reason + ")";
    return r;
}

Report run_per_points(const Setup& s, const RunOptions& opt) {
    Report r = base_report("per-points", s.cfg);
    r.columns = {"k", "period", "cycle"};
    std::size_t total = 0;
    for (unsigned k : effective_degrees(s.cfg)) {
        ContextPtr ctx_k = k == s.ctx->degree() ? s.ctx
                                                : PAdicContext::make(s.cfg.p, k, s.cfg.precision);
        PolyMap fk = s.map.with_context(ctx_k);
        auto cycles = periodic_points_residue(reduce_map(fk), s.cfg.max_period, opt.budget);
        total += cycles.size();
        for (const auto& c : cycles)
            r.rows.push_back({std::to_string(k), std::to_string(c.period()), cycle_text(c)});
    }
    r.summary = "cycles=" + std::to_string(total);
    return r;
}

Report run_lift(const Setup& s, const RunOptions& opt) {
    Report r = base_report("lift", s.cfg);
    r.columns = {"k", "period", "start", "point", "verified"};
    if (!opt.override_restricted) {
        RestrictednessCheck rc = is_restricted_syntactic(s.map);
        if (!rc.restricted)
            throw lift_failure("map failed the syntactic restrictedness check (" + rc.reason +
                               "); pass --override-restricted to lift anyway");
    }
    std::size_t total = 0;
    for (unsigned k : effective_degrees(s.cfg)) {
        ContextPtr ctx_k = k == s.ctx->degree() ? s.ctx
                                                : PAdicContext::make(s.cfg.p, k, s.cfg.precision);
        PolyMap fk = s.map.with_context(ctx_k);
        auto cycles = periodic_points_residue(reduce_map(fk), s.cfg.max_period, opt.budget);
        for (const auto& c : cycles) {
            PeriodicPoint pp = lift_periodic(fk, c, true);
            ++total;
            r.rows.push_back({std::to_string(k), std::to_string(pp.period),
                              point_text(c.points[0]), point_text(pp.coords), "yes"});
        }
    }
    r.summary = "lifted=" + std::to_string(total);
    return r;
}

Report run_tate_voloch(const Setup& s, const RunOptions& opt) {
    require_fields(s.cfg, true, false);
    Report r = base_report("tate-voloch", s.cfg);
    r.columns = {"k", "points", "on_V", "suspect", "off_vals"};
    VarietySpec v = make_variety(s);
    GapReport gap = tate_voloch_scan(s.map, v, effective_degrees(s.cfg), s.cfg.max_period,
                                     opt.budget, opt.override_restricted);
    for (const auto& row : gap.rows) {
        std::ostringstream hist;
        if (row.finite_vals.empty()) {
            hist << "-";
        } else {
            unsigned cur = row.finite_vals.front();
            std::size_t count = 0;
            bool first = true;
            auto flush = [&]() {
                if (!first) hist << ",";
                hist << cur << ":" << count;
                first = false;
            };
            for (unsigned v2 : row.finite_vals) {
                if (v2 == cur) {
                    ++count;
                } else {
                    flush();
                    cur = v2;
                    count = 1;
                }
            }
            flush();
        }
        r.rows.push_back({std::to_string(row.degree), std::to_string(row.points),
                          std::to_string(row.on_variety), std::to_string(row.suspect),
                          hist.str()});
    }
    if (gap.max_observed)
        r.summary = "M_observed=" + std::to_string(*gap.max_observed) + " epsilon=" +
                    std::to_string(s.cfg.p) + "^-" + std::to_string(*gap.max_observed);
    else
        r.summary = "M_observed=- epsilon=-";
    return r;
}

Report run_manin_mumford(const Setup& s, const RunOptions& opt) {
    require_fields(s.cfg, true, false);
    Report r = base_report("manin-mumford", s.cfg);
    r.columns = {"k", "variety_points", "periodic_on_variety", "lifted_on_variety"};
    VarietySpec v = make_variety(s);
    DensityReport dens = manin_mumford_scan(s.map, v, effective_degrees(s.cfg), opt.budget,
                                            opt.override_restricted);
    for (const auto& row : dens.rows)
        r.rows.push_back({std::to_string(row.degree), std::to_string(row.variety_points),
                          std::to_string(row.periodic_on_variety),
                          std::to_string(row.lifted_on_variety)});
    r.summary = "rows=" + std::to_string(dens.rows.size());
    return r;
}

Report run_stability(const Setup& s, const RunOptions& opt) {
    require_fields(s.cfg, false, true);
    Report r = base_report("stability", s.cfg);
    r.columns = {"n", "preimages", "orbits", "field_degree", "complete"};
    OrbitReport orb = eventual_stability_probe(reduce_map(s.map), make_residue_point(s),
                                               s.cfg.depth, s.cfg.degree_bound, opt.budget);
    for (const auto& row : orb.rows)
        r.rows.push_back({std::to_string(row.n), std::to_string(row.preimages),
                          std::to_string(row.orbits), std::to_string(row.field_degree),
                          row.complete ? "yes" : "no"});
    r.summary = orb.bounded ? "verdict=bounded" : "verdict=growing";
    return r;
}

Report run_backward_orbit(const Setup& s, const RunOptions& opt) {
    require_fields(s.cfg, true, true);
    Report r = base_report("backward-orbit", s.cfg);
    r.columns = {"i", "point", "on_variety"};
    VarietySpec v = make_variety(s);
    std::vector<ResiduePoly> gens;
    for (const auto& g : v.generators()) gens.push_back(reduce_poly(g));
    auto orbit = coherent_backward_orbit_search(reduce_map(s.map), make_residue_point(s), gens,
                                                s.cfg.depth, s.cfg.lookahead, s.cfg.degree_bound,
                                                opt.budget);
    if (!orbit)
        throw std::runtime_error("no coherent backward orbit of depth " +
                                 std::to_string(s.cfg.depth) + " within the degree bound");
    for (std::size_t i = 0; i < orbit->points.size(); ++i) {
        bool hit = std::find(orbit->hits.begin(), orbit->hits.end(), i) != orbit->hits.end();
        r.rows.push_back({std::to_string(i), point_text(orbit->points[i]), hit ? "yes" : "no"});
    }
    r.summary = "hits=" + std::to_string(orbit->hits.size()) +
                " field_degree=" + std::to_string(orbit->field->degree());
    return r;
}

Report run_gauss_norm(const Setup& s, const RunOptions&) {
    Report r = base_report("gauss-norm", s.cfg);
    r.columns = {"component", "gauss_val", "gamma_exp", "normalized"};
    for (unsigned i = 0; i < s.map.dim(); ++i) {
        const Polynomial& f = s.map.components()[i];
        auto g = gauss_norm(f);
        std::string gtext = g ? std::to_string(*g) : "inf";
        std::string gamma = "-";
        if (s.map.dim() == 1 && !f.is_zero()) {
            GammaValue gv = rank2_val(f);
            gamma = std::to_string(gv.gamma);
        }
        std::string norm = f.is_zero() ? "-" : normalize_generator(f).to_string();
        r.rows.push_back({std::to_string(i), gtext, gamma, norm});
    }
    r.summary = "components=" + std::to_string(s.map.dim());
    return r;
}

}  // namespace

Report run(const std::string& subcommand, const ExperimentConfig& cfg,
           const RunOptions& options) {
    Setup s = make_setup(cfg);
    if (subcommand == "check-lift") return run_check_lift(s, options);
    if (subcommand == "per-points") return run_per_points(s, options);
    if (subcommand == "lift") return run_lift(s, options);
    if (subcommand == "tate-voloch") return run_tate_voloch(s, options);
    if (subcommand == "manin-mumford") return run_manin_mumford(s, options);
    if (subcommand == "stability") return run_stability(s, options);
    if (subcommand == "backward-orbit") return run_backward_orbit(s, options);
    if (subcommand == "gauss-norm") return run_gauss_norm(s, options);
    throw std::invalid_argument("unknown subcommand: " + subcommand);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-adic arithmetic dynamics experiment runner"};
    app.name("padic-dynamo");
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t budget = 10'000'000;
    bool override_restricted = false;
    std::string chosen;

    for (const auto& name : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--out", out_path, "report output path (default stdout)");
        sub->add_option("--budget", budget, "enumeration cap in iterations");
        sub->add_flag("--override-restricted", override_restricted,
                      "accept maps failing the syntactic restrictedness check");
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::ifstream in(config_path);
    if (!in) {
        err << "cannot open config file: " << config_path << "\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    try {
        ExperimentConfig cfg = parse_config(buffer.str());
        RunOptions opt;
        opt.budget = budget;
        opt.override_restricted = override_restricted;
        Report report = run(chosen, cfg, opt);
        if (out_path.empty()) {
            out << report.render();
        } else {
            std::ofstream f(out_path);
            if (!f) {
                err << "cannot open output file: " << out_path << "\n";
                return 1;
            }
            f << report.render();
        }
        return 0;
    } catch (const config_error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace dynamo
