// tfmult: command-line front end for the experiment harness.
//
// Exit codes: 0 ok, 1 usage/config/I-O error, 2 numerical guard failure,
// 3 a --check tolerance was violated.

#include "tfm/errors.hpp"
#include "tfm/indices.hpp"
#include "tfm/symbols.hpp"
#include "tfm/xlab/experiments.hpp"
#include "tfm/xlab/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace tfm;
using nlohmann::json;

struct Args {
    int d = 1;
    std::size_t n = 0;   // 0: subcommand default
    double extent = 0.0; // 0: subcommand default
    std::string p = "2", q = "2";
    double delta = 0.0;
    double alpha = 3.0;
    int jmax = 3;
    std::uint64_t seed = 12345;
    std::string config;
    std::string out;
    int refine = 0;
    bool check = false;
    double slack = 0.0;

    std::string window = "gaussian";
    double window_width = 1.0;
    std::string regime = "large";
    std::string phase = "schrodinger_t";
    double t = 1.0;
    std::vector<double> times{0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<double> deltas;
    std::vector<int> J{4, 6, 8};
    int packets = 6;
    double bound = 3.3;
    std::vector<double> s_list{1, 2, 4, 8, 16, 32};
    double radius = 1.0;
    int divisions = 10;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_common(CLI::App* app, Args& a) {
    app->add_option("--d", a.d, "dimension (1 or 2)");
    app->add_option("--n", a.n, "grid points per axis");
    app->add_option("--extent", a.extent, "grid extent L");
    app->add_option("--p", a.p, "outer exponent p (number or inf)");
    app->add_option("--q", a.q, "exponent q (number or inf)");
    app->add_option("--delta", a.delta, "weight / smoothing exponent");
    app->add_option("--alpha", a.alpha, "phase order alpha");
    app->add_option("--jmax", a.jmax, "largest scale index");
    app->add_option("--seed", a.seed, "ensemble seed");
    app->add_option("--config", a.config, "JSON config file (keys mirror flag names)");
    app->add_option("--out", a.out, "CSV output path (default: stdout)");
    app->add_option("--refine", a.refine, "number of grid refinements")->check(CLI::Range(0, 4));
    app->add_flag("--check", a.check, "exit 3 when an acceptance check fails");
    app->add_option("--slack", a.slack, "added to every check tolerance");
    app->add_option("--window", a.window, "window kind: gaussian | band_limited");
    app->add_option("--window-width", a.window_width, "window width");
}

// Config values apply to options not given on the command line.
void apply_config(CLI::App* sub, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object())
        throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "config")
            throw UsageError("config files cannot nest");
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw UsageError("unknown config key '" + key + "' for " + sub->get_name());
        if (opt->count() > 0)
            continue;
        const auto as_text = [](const json& v) -> std::string {
            if (v.is_string())
                return v.get<std::string>();
            if (v.is_boolean())
                return v.get<bool>() ? "true" : "false";
            if (v.is_number())
                return v.dump();
            throw UsageError("config values must be strings, numbers, booleans or arrays of those");
        };
        if (value.is_array()) {
            for (const auto& v : value)
                opt->add_result(as_text(v));
        } else {
            opt->add_result(as_text(value));
        }
        try {
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError("config key '" + key + "': " + e.what());
        }
    }
}

gabor::WindowSpec window_of(const Args& a) { return {gabor::parse_window_kind(a.window), a.window_width}; }

GridSpec grid_of(const Args& a, std::size_t n0, double L0) {
    return make_grid(a.d, a.n ? a.n : n0, a.extent > 0.0 ? a.extent : L0);
}

gabor::SpaceParams space_of(const Args& a) {
    return {gabor::Exponent::parse(a.p), gabor::Exponent::parse(a.q), a.delta};
}

symbols::SymbolTable symbol_of(const Args& a, const GridSpec& fgrid) {
    if (a.phase == "random")
        return symbols::random_bounded_symbol(fgrid, a.seed, false);
    if (a.phase == "random_unimodular")
        return symbols::random_bounded_symbol(fgrid, a.seed, true);
    symbols::PhaseSpec ph;
    switch (symbols::parse_phase_family(a.phase)) {
    case symbols::PhaseFamily::power_abs: ph = symbols::PhaseSpec::power_abs(a.alpha); break;
    case symbols::PhaseFamily::schrodinger_t: ph = symbols::PhaseSpec::schrodinger(a.t); break;
    case symbols::PhaseFamily::bracket_power: ph = symbols::PhaseSpec::bracket_power(a.alpha); break;
    case symbols::PhaseFamily::fresnel_osc: ph = symbols::PhaseSpec::fresnel(); break;
    case symbols::PhaseFamily::custom_table: throw InvalidArgument("custom phase tables are not available from the CLI");
    }
    return symbols::unimodular_symbol(ph, a.delta, fgrid);
}

symbols::PhaseSpec phase_of(const Args& a) {
    switch (symbols::parse_phase_family(a.phase)) {
    case symbols::PhaseFamily::power_abs: return symbols::PhaseSpec::power_abs(a.alpha);
    case symbols::PhaseFamily::schrodinger_t: return symbols::PhaseSpec::schrodinger(a.t);
    case symbols::PhaseFamily::bracket_power: return symbols::PhaseSpec::bracket_power(a.alpha);
    case symbols::PhaseFamily::fresnel_osc: return symbols::PhaseSpec::fresnel();
    case symbols::PhaseFamily::custom_table: break;
    }
    throw InvalidArgument("custom phase tables are not available from the CLI");
}

using Runner = std::function<std::vector<xlab::ExperimentReport>(int level)>;

// Runs every refinement level, tags rows with the level and merges the reports.
std::vector<xlab::ExperimentReport> run_levels(const Args& a, const Runner& run, bool gate_drift) {
    std::vector<std::vector<xlab::ExperimentReport>> levels;
    for (int r = 0; r <= a.refine; ++r)
        levels.push_back(run(r));
    std::vector<xlab::ExperimentReport> merged = levels.front();
    if (a.refine == 0)
        return merged;
    for (std::size_t k = 0; k < merged.size(); ++k) {
        auto& m = merged[k];
        for (auto& row : m.rows)
            row.params["refine"] = 0;
        for (auto& c : m.checks)
            c.name += "@refine=0";
        for (int r = 1; r <= a.refine; ++r) {
            const auto& lv = levels[static_cast<std::size_t>(r)][k];
            const auto& prev = levels[static_cast<std::size_t>(r - 1)][k];
            for (auto row : lv.rows) {
                row.params["refine"] = r;
                m.rows.push_back(std::move(row));
            }
            for (auto c : lv.checks) {
                c.name += "@refine=" + std::to_string(r);
                m.checks.push_back(std::move(c));
            }
            for (const auto& w : lv.warnings)
                m.warnings.push_back(w);
            const double drift = xlab::refinement_drift(prev, lv);
            std::ostringstream os;
            os << "ensemble-max ratio drift " << drift << " between refine levels " << r - 1 << " and " << r;
            if (gate_drift)
                m.add_check("refinement_drift@" + std::to_string(r), drift <= 0.10 + a.slack, os.str() + " vs 0.1");
            else
                m.notes.push_back(os.str());
        }
    }
    return merged;
}

int execute(const std::string& cmd, const Args& a) {
    std::vector<xlab::ExperimentReport> reports;
    const auto w = window_of(a);
    const xlab::ScanOptions scan{w, a.slack};

    if (cmd == "norm") {
        reports = run_levels(
            a,
            [&](int r) {
                const auto g = refine(grid_of(a, 1024, 64.0), r);
                return std::vector{xlab::run_norm_table(xlab::default_ensemble(g, a.seed), space_of(a), scan)};
            },
            true);
    } else if (cmd == "multiplier") {
        reports = run_levels(
            a,
            [&](int r) {
                const auto g = refine(grid_of(a, 1024, 64.0), r);
                const auto sp = space_of(a);
                return std::vector{xlab::run_multiplier_scan(symbol_of(a, g.dual()), xlab::default_ensemble(g, a.seed),
                                                             {sp.p, sp.q, 0.0}, scan)};
            },
            true);
    } else if (cmd == "schrodinger-scan") {
        reports = run_levels(
            a,
            [&](int r) {
                const auto g = refine(grid_of(a, 1024, 64.0), r);
                const auto sp = space_of(a);
                return std::vector{xlab::run_schrodinger_scan(a.times, xlab::default_ensemble(g, a.seed),
                                                              {sp.p, sp.q, 0.0}, scan)};
            },
            true);
    } else if (cmd == "dilation-scan") {
        const auto pt = indices::IndexPoint::from_exponents(a.p, a.q);
        std::vector<indices::Regime> regimes;
        if (a.regime == "both")
            regimes = {indices::Regime::large_lambda, indices::Regime::small_lambda};
        else
            regimes = {indices::parse_regime(a.regime)};
        reports = run_levels(
            a,
            [&](int r) {
                const auto g = refine(grid_of(a, 1024, 64.0), r);
                const auto ens = xlab::default_ensemble(g, a.seed);
                std::vector<xlab::ExperimentReport> out;
                for (auto rg : regimes)
                    out.push_back(xlab::run_dilation_scan(pt, rg, a.jmax, ens, scan));
                return out;
            },
            false);
    } else if (cmd == "threshold-scan") {
        const auto pt = indices::IndexPoint::from_exponents(a.p, "1");
        std::vector<double> deltas = a.deltas;
        if (deltas.empty()) {
            const double thr = indices::loss_threshold(pt.inv_p, a.alpha, 1);
            deltas = thr > 0.0 ? std::vector<double>{0.0, 0.5 * thr, thr} : std::vector<double>{0.0};
        }
        reports = run_levels(
            a,
            [&](int r) {
                xlab::ThresholdOptions opt;
                opt.window = w;
                opt.q = gabor::Exponent::parse(a.q);
                opt.refine = r;
                opt.slack = a.slack;
                auto rep = xlab::run_threshold_scan(a.alpha, pt.inv_p, deltas, a.jmax, opt);
                rep.seed = a.seed;
                return std::vector{rep};
            },
            false);
    } else if (cmd == "dyadic-sum") {
        reports = run_levels(
            a,
            [&](int r) {
                const auto g = refine(grid_of(a, 1024, 64.0), r);
                xlab::DyadicSumOptions opt;
                opt.J_list = a.J;
                opt.window = w;
                opt.constant_bound = a.bound;
                opt.packets = a.packets;
                opt.slack = a.slack;
                opt.packet_grid = refine(make_grid(1, 16384, 64.0), r);
                return xlab::run_dyadic_sum_check(gabor::Exponent::parse(a.p), xlab::default_ensemble(g, a.seed), opt);
            },
            false);
    } else if (cmd == "exp-bound") {
        reports = run_levels(
            a,
            [&](int r) {
                xlab::ExpBoundOptions opt;
                opt.s_list = a.s_list;
                opt.grid = refine(grid_of(a, 2048, 32.0), r);
                opt.radius = a.radius;
                opt.window = w;
                opt.slack = a.slack;
                auto rep = xlab::run_exp_bound_scan(phase_of(a), opt);
                rep.seed = a.seed;
                return std::vector{rep};
            },
            false);
    } else if (cmd == "indices") {
        auto rep = xlab::run_indices_table(a.divisions, a.d);
        rep.seed = a.seed;
        rep.grid = make_grid(a.d, 16, 1.0);
        if (a.refine > 0)
            rep.notes.push_back("--refine has no effect on the exact index table");
        reports = {rep};
    }

    if (a.out.empty())
        std::cout << xlab::format_csv(xlab::to_csv(reports));
    else
        xlab::write_reports(reports, a.out);

    bool ok = true;
    for (const auto& rep : reports) {
        for (const auto& warn : rep.warnings)
            std::cerr << "warning [" << rep.experiment << "]: " << warn << "\n";
        for (const auto& note : rep.notes)
            std::cerr << "note [" << rep.experiment << "]: " << note << "\n";
        for (const auto& c : rep.checks) {
            std::cerr << (c.passed ? "PASS " : "FAIL ") << rep.experiment << "/" << c.name << ": " << c.detail
                      << "\n";
            ok = ok && c.passed;
        }
    }
    return (a.check && !ok) ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tfmult: modulation-space multiplier experiments"};
    app.require_subcommand(1);
    Args args;

    struct Sub {
        const char* name;
        const char* help;
    };
    const Sub subs[] = {
        {"norm", "ensemble L2 and modulation norms with Moyal/Plancherel checks"},
        {"multiplier", "ensemble ratios for one Fourier multiplier"},
        {"dilation-scan", "dilation exponents over lambda = 2^{+-j}"},
        {"threshold-scan", "growth of packet ratios against the smoothing loss"},
        {"schrodinger-scan", "uniformity in t of the Schroedinger propagator"},
        {"dyadic-sum", "dyadic piece sums in M^{p,1} and shell sums in M^{p,inf}"},
        {"exp-bound", "log M^1 norm of chi e^{i s mu} against s"},
        {"indices", "exact dilation exponent table"},
    };
    std::vector<CLI::App*> apps;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, args);
        apps.push_back(sub);
    }
    const auto get = [&](const char* name) { return app.get_subcommand(name); };
    get("multiplier")->add_option("--phase", args.phase,
                                  "power_abs | schrodinger_t | bracket_power | fresnel_osc | random | random_unimodular");
    get("multiplier")->add_option("--t", args.t, "Schroedinger time");
    get("dilation-scan")->add_option("--regime", args.regime, "large | small | both");
    get("schrodinger-scan")->add_option("--times", args.times, "propagation times")->delimiter(',');
    get("threshold-scan")->add_option("--deltas", args.deltas, "delta values (default 0, threshold/2, threshold)")->delimiter(',');
    get("dyadic-sum")->add_option("--J", args.J, "dyadic truncation levels")->delimiter(',');
    get("dyadic-sum")->add_option("--packets", args.packets, "number of shell packets");
    get("dyadic-sum")->add_option("--bound", args.bound, "frozen constant for the M^{p,1} sums");
    get("exp-bound")->add_option("--phase", args.phase, "power_abs | schrodinger_t | bracket_power | fresnel_osc");
    get("exp-bound")->add_option("--t", args.t, "Schroedinger time");
    get("exp-bound")->add_option("--s", args.s_list, "phase multipliers s")->delimiter(',');
    get("exp-bound")->add_option("--radius", args.radius, "bump radius");
    get("indices")->add_option("--divisions", args.divisions, "lattice divisions per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = nullptr;
    for (auto* s : apps)
        if (s->parsed())
            sub = s;

    try {
        if (!args.config.empty())
            apply_config(sub, args.config);
        return execute(sub->get_name(), args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 1;
    } catch (const GuardError& e) {
        std::cerr << "guard failure: " << e.what() << "\n";
        return 2;
    } catch (const QuadratureError& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
