#include "tfm/xlab/experiments.hpp"

#include "tfm/dyadic.hpp"
#include "tfm/errors.hpp"
#include "tfm/fourier.hpp"
#include "tfm/xlab/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace tfm::xlab {

using gabor::Exponent;
using gabor::SpaceParams;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

json space_json(const SpaceParams& s) { return {{"p", s.p.str()}, {"q", s.q.str()}, {"delta", s.delta}}; }

ExperimentReport make_report(std::string id, const EnsembleSpec& ens) {
    ExperimentReport r;
    r.experiment = std::move(id);
    r.grid = ens.grid;
    r.seed = ens.seed;
    return r;
}

// Stable order: member (first appearance), then series parameters, then scale.
void sort_rows(ExperimentReport& rep) {
    std::map<std::string, std::size_t> first;
    for (const auto& r : rep.rows)
        first.emplace(r.member, first.size());
    std::stable_sort(rep.rows.begin(), rep.rows.end(), [&](const ReportRow& a, const ReportRow& b) {
        const auto fa = first[a.member], fb = first[b.member];
        if (fa != fb)
            return fa < fb;
        const auto pa = a.params.dump(), pb = b.params.dump();
        if (pa != pb)
            return pa < pb;
        return a.scale < b.scale;
    });
}

SampledSignal scaled(const SampledSignal& f, double c) { return Complex(c, 0.0) * f; }

} // namespace

ExperimentReport run_norm_table(const EnsembleSpec& ens, const SpaceParams& params, const ScanOptions& opt) {
    const auto sigs = build_ensemble(ens);
    auto rep = make_report("norm", ens);
    rep.parameters = space_json(params);
    rep.parameters["window"] = opt.window.describe();

    const double gnorm = synthesize(window_generator(opt.window), ens.grid).l2_norm();
    const std::array<SpaceParams, 2> both{params, SpaceParams{2.0, 2.0, 0.0}};
    double moyal = 0.0, plancherel = 0.0;
    std::string moyal_arg, plancherel_arg;
    for (const auto& m : sigs) {
        const auto norms = gabor::modulation_norms(m.signal, opt.window, both);
        const double fl2 = m.signal.l2_norm();
        const double e1 = std::abs(norms[1] / (fl2 * gnorm) - 1.0);
        const double e2 = std::abs(forward_ft(m.signal).l2_norm() / fl2 - 1.0);
        if (e1 >= moyal) {
            moyal = e1;
            moyal_arg = m.id;
        }
        if (e2 >= plancherel) {
            plancherel = e2;
            plancherel_arg = m.id;
        }
        rep.add_row({m.id, json::object(), 0.0, fl2, norms[0]});
    }
    rep.add_check("moyal", moyal <= 1e-6 + opt.slack,
                  "max relative Moyal defect " + fmt(moyal) + " (" + moyal_arg + ") vs 1e-06");
    rep.add_check("plancherel", plancherel <= 1e-10 + opt.slack,
                  "max relative Plancherel defect " + fmt(plancherel) + " (" + plancherel_arg + ") vs 1e-10");
    return rep;
}

ExperimentReport run_multiplier_scan(const symbols::SymbolTable& sigma, const EnsembleSpec& ens,
                                     const SpaceParams& params, const ScanOptions& opt) {
    const auto sigs = build_ensemble(ens);
    auto rep = make_report("multiplier", ens);
    rep.parameters = space_json(params);
    rep.parameters["symbol"] = sigma.descriptor().label;
    rep.parameters["window"] = opt.window.describe();
    const SpaceParams plain{params.p, params.q, 0.0};
    const auto est = estimate_operator_ratio(sigma, sigs, params, plain, opt.window);
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        const double in = gabor::modulation_norm(sigs[i].signal, opt.window, params);
        rep.add_row({sigs[i].id, json::object(), 0.0, in, est.ratios[i] * in});
    }
    rep.notes.push_back("ensemble max ratio " + fmt(est.max_ratio) + " at " + est.argmax);
    rep.add_check("finite", std::isfinite(est.max_ratio), "ensemble max ratio " + fmt(est.max_ratio));
    return rep;
}

ExperimentReport run_schrodinger_scan(std::span<const double> times, const EnsembleSpec& ens,
                                      const SpaceParams& params, const ScanOptions& opt) {
    if (times.empty())
        throw InvalidArgument("schrodinger scan needs at least one time");
    for (double t : times)
        if (!(t > 0.0))
            throw InvalidArgument("schrodinger scan times must be positive");
    const auto sigs = build_ensemble(ens);
    auto rep = make_report("schrodinger_scan", ens);
    rep.parameters = space_json(params);
    rep.parameters["window"] = opt.window.describe();

    std::vector<double> in(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
        in[i] = gabor::modulation_norm(sigs[i].signal, opt.window, params);
    const SpaceParams plain{params.p, params.q, 0.0};
    std::vector<double> maxima;
    for (double t : times) {
        const auto sigma = symbols::unimodular_symbol(symbols::PhaseSpec::schrodinger(t), 0.0, ens.grid.dual());
        double mx = 0.0;
        for (std::size_t i = 0; i < sigs.size(); ++i) {
            const double out =
                gabor::modulation_norm(symbols::apply_multiplier(sigma, sigs[i].signal), opt.window, plain);
            rep.add_row({sigs[i].id, json{{"t", t}}, std::log2(t), in[i], out});
            mx = std::max(mx, out / in[i]);
        }
        maxima.push_back(mx);
    }
    sort_rows(rep);
    const double lo = *std::min_element(maxima.begin(), maxima.end());
    const double hi = *std::max_element(maxima.begin(), maxima.end());
    const double variation = (hi - lo) / lo;
    rep.add_check("uniform_in_t", variation <= 0.25 + opt.slack,
                  "ensemble-max ratio spans [" + fmt(lo) + ", " + fmt(hi) + "], variation " + fmt(variation) +
                      " vs 0.25");
    return rep;
}

std::vector<ExperimentReport> run_dilation_scans(std::span<const indices::IndexPoint> points, indices::Regime regime,
                                                 int j_max, const EnsembleSpec& ens, const ScanOptions& opt) {
    if (j_max < 3)
        throw InvalidArgument("dilation scan needs j_max >= 3");
    if (points.empty())
        throw InvalidArgument("dilation scan needs at least one index point");
    const int d = ens.grid.dim;
    const bool large = regime == indices::Regime::large_lambda;

    std::vector<SpaceParams> params;
    for (const auto& pt : points) {
        const auto exp = [](const indices::Rational& r) {
            return r == 0 ? Exponent::infinity() : Exponent(1.0 / indices::to_double(r));
        };
        params.push_back({exp(pt.inv_p), exp(pt.inv_q), 0.0});
    }

    std::vector<ExperimentReport> reps;
    for (std::size_t k = 0; k < points.size(); ++k) {
        auto rep = make_report("dilation_scan", ens);
        rep.parameters = space_json(params[k]);
        rep.parameters["regime"] = std::string(indices::to_string(regime));
        rep.parameters["window"] = opt.window.describe();
        reps.push_back(std::move(rep));
    }

    // slopes[k] holds (member, slope) for point k.
    std::vector<std::vector<std::pair<std::string, double>>> slopes(points.size());
    const auto lat0 = gabor::coarse_lattice(ens.grid, opt.window);
    for (const auto& m : ens.members) {
        std::vector<GridSpec> grids;
        try {
            check_fits(m.spec, ens.grid);
            for (int j = 1; j <= j_max; ++j) {
                const double f = std::ldexp(1.0, j);
                const GridSpec g = large ? make_grid(d, ens.grid.n << j, ens.grid.extent)
                                         : make_grid(d, ens.grid.n << j, ens.grid.extent * f);
                check_fits(m.spec, g, large ? f : 1.0 / f);
                grids.push_back(g);
            }
        } catch (const GuardError& e) {
            for (auto& r : reps)
                r.warnings.push_back("skipped member '" + m.id + "': " + e.what());
            continue;
        }
        const GeneratorSpec spec = normalized(m.spec, ens.grid);
        const auto in = gabor::modulation_norms(synthesize(spec, ens.grid), opt.window, params, lat0);
        std::vector<std::vector<std::pair<double, double>>> series(points.size());
        std::vector<std::vector<double>> outs(points.size());
        for (int j = 1; j <= j_max; ++j) {
            const double lam = large ? std::ldexp(1.0, j) : std::ldexp(1.0, -j);
            const GridSpec& g = grids[static_cast<std::size_t>(j - 1)];
            const auto out =
                gabor::modulation_norms(dilate(spec, lam, g), opt.window, params, gabor::coarse_lattice(g, opt.window));
            for (std::size_t k = 0; k < points.size(); ++k) {
                series[k].emplace_back(std::log2(lam), out[k] / in[k]);
                outs[k].push_back(out[k]);
            }
        }
        for (std::size_t k = 0; k < points.size(); ++k) {
            const auto reg = exponent_regression(series[k]);
            slopes[k].emplace_back(m.id, reg.slope);
            for (int j = 1; j <= j_max; ++j)
                reps[k].add_row({m.id, json::object(), series[k][static_cast<std::size_t>(j - 1)].first, in[k],
                                 outs[k][static_cast<std::size_t>(j - 1)], reg.slope, reg.max_residual});
        }
    }

    for (std::size_t k = 0; k < points.size(); ++k) {
        auto& rep = reps[k];
        sort_rows(rep);
        if (slopes[k].empty())
            throw GuardError("dilation scan: every ensemble member was skipped");
        const double mu = d * indices::to_double(indices::dilation_exponent(points[k], regime));
        rep.parameters["predicted_exponent"] = mu;
        const auto [lo, hi] = std::minmax_element(slopes[k].begin(), slopes[k].end(),
                                                  [](const auto& a, const auto& b) { return a.second < b.second; });
        if (large) {
            rep.add_check("slope_bound", hi->second <= mu + 0.1 + opt.slack,
                          "max slope " + fmt(hi->second) + " (" + hi->first + ") vs d*mu1 + 0.1 = " + fmt(mu + 0.1));
        } else {
            // lambda -> 0: a bound lambda^{d mu2} means log-ratio slopes no smaller than d mu2.
            rep.add_check("slope_bound", lo->second >= mu - 0.1 - opt.slack,
                          "min slope " + fmt(lo->second) + " (" + lo->first + ") vs d*mu2 - 0.1 = " + fmt(mu - 0.1));
            const bool literal = hi->second <= mu + 0.1;
            rep.notes.push_back(std::string("literal 'max slope <= d*mu2 + 0.1' reading: ") +
                                (literal ? "holds" : "does not hold") + " (max slope " + fmt(hi->second) + ")");
        }
        if (params[k].p == Exponent(2.0) && params[k].q == Exponent(2.0)) {
            for (const auto& [id, s] : slopes[k])
                if (id == "gaussian") {
                    const double want = -0.5 * d;
                    rep.add_check("gaussian_l2_scaling", std::abs(s - want) <= 0.02 + opt.slack,
                                  "gaussian slope " + fmt(s) + " vs " + fmt(want) + " +- 0.02");
                }
        }
    }
    return reps;
}

ExperimentReport run_dilation_scan(const indices::IndexPoint& pt, indices::Regime regime, int j_max,
                                   const EnsembleSpec& ens, const ScanOptions& opt) {
    return run_dilation_scans(std::span<const indices::IndexPoint>(&pt, 1), regime, j_max, ens, opt).front();
}

namespace {

double effective_width_exponent(double alpha, double e) { return e < 0.0 ? 0.5 * (alpha - 2.0) : e; }

GeneratorSpec threshold_packet(double alpha, int j, double e) {
    GeneratorSpec s;
    s.width = std::exp2(-static_cast<double>(j) * e);
    s.frequency = {std::ldexp(1.0, j), 0.0};
    (void)alpha;
    return s;
}

std::size_t nyquist_points(double extent, double need) {
    std::size_t n = 16;
    while (0.5 * static_cast<double>(n) / extent < need)
        n *= 2;
    return n;
}

} // namespace

GridSpec threshold_output_grid(double alpha, int j, double width_exponent, int refine) {
    const double e = effective_width_exponent(alpha, width_exponent);
    const double c = std::ldexp(1.0, j);
    const double s = std::exp2(-static_cast<double>(j) * e);
    const double r = 3.0 / s;
    const auto dmu = [alpha](double x) { return alpha * std::copysign(std::pow(std::abs(x), alpha - 1.0), x); };
    // Group-velocity spread of the propagated packet plus envelope and window margins.
    const double spread = (dmu(c + r) - dmu(c - r)) / (2.0 * std::numbers::pi) + 6.0 * s + 40.0;
    double L = 32.0;
    while (L < 1.3 * spread)
        L *= 2.0;
    L = std::ldexp(L, refine);
    return make_grid(1, nyquist_points(L, c + r + 3.0), L);
}

ExperimentReport run_threshold_scan(double alpha, const indices::Rational& inv_p, std::span<const double> deltas,
                                    int j_max, const ThresholdOptions& opt) {
    if (!(alpha > 2.0))
        throw InvalidArgument("threshold scan needs alpha > 2");
    if (j_max < 3)
        throw InvalidArgument("threshold scan needs j_max >= 3");
    if (deltas.empty())
        throw InvalidArgument("threshold scan needs at least one delta");
    const double e = effective_width_exponent(alpha, opt.width_exponent);
    const Exponent p = inv_p == 0 ? Exponent::infinity() : Exponent(1.0 / indices::to_double(inv_p));
    const double threshold = indices::loss_threshold(inv_p, alpha, 1);

    ExperimentReport rep;
    rep.experiment = "threshold_scan";
    rep.parameters = {{"alpha", alpha},         {"p", p.str()},
                      {"q", opt.q.str()},       {"width_exponent", e},
                      {"threshold", threshold}, {"window", opt.window.describe()},
                      {"refine", opt.refine}};

    std::vector<SpaceParams> den_params;
    for (double dl : deltas)
        den_params.push_back({p, opt.q, dl});
    const SpaceParams plain{p, opt.q, 0.0};
    const auto phase = symbols::PhaseSpec::power_abs(alpha);

    std::vector<std::vector<std::pair<double, double>>> series(deltas.size());
    std::vector<std::vector<std::pair<double, double>>> norms(deltas.size());
    for (int j = 1; j <= j_max; ++j) {
        const GeneratorSpec raw = threshold_packet(alpha, j, e);
        const double c = std::ldexp(1.0, j), r = 3.0 / raw.width;
        const double Ld = std::ldexp(32.0, opt.refine);
        const GridSpec gd = make_grid(1, nyquist_points(Ld, c + r + 3.0), Ld);
        const GridSpec gn = threshold_output_grid(alpha, j, e, opt.refine);
        if (j == 1)
            rep.grid = gd;
        const GeneratorSpec spec = normalized(raw, gd);

        const auto den =
            gabor::modulation_norms(synthesize(spec, gd), opt.window, den_params, gabor::coarse_lattice(gd, opt.window));
        const auto sigma = symbols::unimodular_symbol(phase, 0.0, gn.dual());
        const double num = gabor::modulation_norm(symbols::apply_multiplier(sigma, synthesize(spec, gn)), opt.window,
                                                  plain, gabor::coarse_lattice(gn, opt.window));
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            series[k].emplace_back(j, num / den[k]);
            norms[k].emplace_back(den[k], num);
        }
    }

    std::vector<std::pair<double, double>> slope_by_delta;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
        const auto reg = exponent_regression(series[k]);
        slope_by_delta.emplace_back(deltas[k], reg.slope);
        for (int j = 1; j <= j_max; ++j) {
            const auto [in, out] = norms[k][static_cast<std::size_t>(j - 1)];
            rep.add_row({"packet", json{{"delta", deltas[k]}}, static_cast<double>(j), in, out, reg.slope,
                         reg.max_residual});
        }
    }
    sort_rows(rep);

    std::sort(slope_by_delta.begin(), slope_by_delta.end());
    bool bounded = true, monotone = true;
    std::ostringstream bd, mono;
    for (const auto& [dl, s] : slope_by_delta)
        if (dl >= threshold - 1e-12) {
            bounded = bounded && s <= 0.05 + opt.slack;
            bd << " delta=" << fmt(dl) << ":" << fmt(s);
        }
    for (std::size_t k = 1; k < slope_by_delta.size(); ++k)
        if (slope_by_delta[k].second > slope_by_delta[k - 1].second + 0.05 + opt.slack) {
            monotone = false;
            mono << " delta " << fmt(slope_by_delta[k].first) << " rises above delta "
                 << fmt(slope_by_delta[k - 1].first);
        }
    if (!bd.str().empty())
        rep.add_check("bounded_at_threshold", bounded, "slopes at or above threshold " + fmt(threshold) + ":" +
                                                           bd.str() + " vs 0.05");
    rep.add_check("monotone_in_delta", monotone, monotone ? "slope non-increasing in delta within 0.05" : mono.str());
    for (const auto& [dl, s] : slope_by_delta)
        rep.notes.push_back("delta=" + fmt(dl) + " slope=" + fmt(s));
    return rep;
}

std::vector<ExperimentReport> run_dyadic_sum_check(Exponent p, const EnsembleSpec& ens, const DyadicSumOptions& opt) {
    if (opt.J_list.empty())
        throw InvalidArgument("dyadic sum needs at least one J");
    for (int J : opt.J_list)
        if (J < 1)
            throw InvalidArgument("dyadic sum J values must be >= 1");
    if (opt.packets < 1)
        throw InvalidArgument("dyadic sum needs at least one packet");
    std::vector<ExperimentReport> out;

    // (a) sum over dyadic pieces in M^{p,1}
    {
        const auto sigs = build_ensemble(ens);
        auto rep = make_report("dyadic_sum_mp1", ens);
        rep.parameters = {{"p", p.str()}, {"q", "1"}, {"window", opt.window.describe()}};
        const int Jmax = *std::max_element(opt.J_list.begin(), opt.J_list.end());
        const auto lat = gabor::coarse_lattice(ens.grid, opt.window);
        const SpaceParams sp{p, 1.0, 0.0};
        std::vector<symbols::SymbolTable> chis;
        for (int j = 1; j <= Jmax; ++j)
            chis.push_back(dyadic::chi_symbol(j, ens.grid.dual()));
        std::map<int, std::pair<double, std::string>> best;
        for (const auto& m : sigs) {
            const double den = gabor::modulation_norm(m.signal, opt.window, sp, lat);
            std::vector<double> prefix{0.0};
            for (const auto& chi : chis)
                prefix.push_back(prefix.back() +
                                 gabor::modulation_norm(symbols::apply_multiplier(chi, m.signal), opt.window, sp, lat));
            for (int J : opt.J_list) {
                const double num = prefix[static_cast<std::size_t>(J)];
                rep.add_row({m.id, json::object(), static_cast<double>(J), den, num});
                auto& b = best[J];
                if (num / den > b.first)
                    b = {num / den, m.id};
            }
        }
        sort_rows(rep);
        double sup = 0.0;
        std::ostringstream os;
        for (const auto& [J, b] : best) {
            sup = std::max(sup, b.first);
            os << " J=" << J << ":" << fmt(b.first) << "(" << b.second << ")";
        }
        rep.parameters["constant_bound"] = opt.constant_bound;
        rep.add_check("uniform_constant", sup <= opt.constant_bound + opt.slack,
                      "ensemble-max ratios" + os.str() + " vs " + fmt(opt.constant_bound));
        out.push_back(std::move(rep));
    }

    // (b) M^{p,inf} norm of sums of unit shell packets, band-limited window
    {
        const GridSpec& g = opt.packet_grid;
        const gabor::WindowSpec bl{gabor::WindowKind::band_limited, 1.0};
        const auto lat = gabor::coarse_lattice(g, bl);
        const SpaceParams sp{p, Exponent::infinity(), 0.0};
        ExperimentReport rep;
        rep.experiment = "dyadic_sum_mpinf";
        rep.grid = g;
        rep.seed = ens.seed;
        rep.parameters = {{"p", p.str()}, {"q", "inf"}, {"window", bl.describe()}};
        SampledSignal sum = SampledSignal::zeros(g);
        double worst = 0.0;
        for (int k = 1; k <= opt.packets; ++k) {
            GeneratorSpec s;
            s.kind = GeneratorKind::wave_packet;
            s.shell = k;
            try {
                check_fits(s, g);
            } catch (const GuardError& e) {
                throw GuardError("packet k=" + std::to_string(k) + ": " + e.what());
            }
            const SampledSignal f = synthesize(s, g);
            const double nk = gabor::modulation_norm(f, bl, sp, lat);
            sum = sum + scaled(f, 1.0 / nk);
            const double ns = gabor::modulation_norm(sum, bl, sp, lat);
            rep.add_row({"packets", json::object(), static_cast<double>(k), 1.0, ns});
            worst = std::max(worst, ns);
        }
        const double bound = 4.0 * (1.0 + 1e-2);
        rep.add_check("four_term_bound", worst <= bound + opt.slack,
                      "max ratio " + fmt(worst) + " vs " + fmt(bound));
        out.push_back(std::move(rep));
    }
    return out;
}

ExperimentReport run_exp_bound_scan(const symbols::PhaseSpec& phase, const ExpBoundOptions& opt) {
    if (opt.s_list.size() < 2)
        throw InvalidArgument("exp-bound scan needs at least two s values");
    const GridSpec& g = opt.grid;
    ExperimentReport rep;
    rep.experiment = "exp_bound";
    rep.grid = g;
    rep.parameters = {{"phase", phase.describe()},
                      {"p", "1"},
                      {"q", "1"},
                      {"radius", opt.radius},
                      {"window", opt.window.describe()}};

    const int d = g.dim;
    const double r = opt.radius;
    const SampledSignal chi = tabulate([d, r](const Point& t) { return Complex(symbols::bump(t, d, r), 0.0); }, g);
    const auto mu = symbols::phase_at(phase, g);
    const SpaceParams m1{1.0, 1.0, 0.0};
    const double base = gabor::modulation_norm(chi, opt.window, m1);

    std::vector<double> xs, ys, outs;
    for (double s : opt.s_list) {
        std::vector<Complex> v(chi.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = chi[i] * std::polar(1.0, s * mu[i]);
        const double nrm = gabor::modulation_norm(SampledSignal(g, std::move(v)), opt.window, m1);
        xs.push_back(s);
        ys.push_back(std::log(nrm));
        outs.push_back(nrm);
    }
    const AffineFit fit = affine_fit(xs, ys);
    rep.add_row({"bump", json::object(), 0.0, base, base});
    for (std::size_t i = 0; i < xs.size(); ++i)
        rep.add_row({"bump", json::object(), xs[i], base, outs[i], fit.slope, fit.relative_residual});
    sort_rows(rep);
    rep.parameters["fit_intercept"] = fit.intercept;
    rep.add_check("affine_envelope", fit.relative_residual <= opt.tolerance + opt.slack,
                  "relative residual " + fmt(fit.relative_residual) + " vs " + fmt(opt.tolerance) + " (slope " +
                      fmt(fit.slope) + ")");
    return rep;
}

ExperimentReport run_indices_table(int divisions, int d) {
    if (divisions < 1)
        throw InvalidArgument("indices table needs at least one division");
    if (d < 1)
        throw InvalidArgument("dimension must be positive");
    ExperimentReport rep;
    rep.experiment = "indices";
    rep.parameters = {{"d", d}, {"divisions", divisions}};
    for (auto regime : {indices::Regime::large_lambda, indices::Regime::small_lambda})
        for (int b = 0; b <= divisions; ++b)
            for (int a = 0; a <= divisions; ++a) {
                const indices::IndexPoint pt(indices::make_rational(a, divisions),
                                             indices::make_rational(b, divisions));
                const double mu = d * indices::to_double(indices::dilation_exponent(pt, regime));
                rep.add_row({std::string(indices::to_string(regime)),
                             json{{"inv_q", indices::to_string(pt.inv_q)}},
                             indices::to_double(pt.inv_p), 1.0, std::exp2(mu), mu});
            }
    rep.add_check("consistent", true, "every lattice point has matching branch values");
    return rep;
}

double refinement_drift(const ExperimentReport& coarse, const ExperimentReport& fine) {
    using Key = std::pair<std::string, double>;
    const auto maxima = [](const ExperimentReport& r) {
        std::map<Key, double> m;
        for (const auto& row : r.rows) {
            auto& v = m[{row.params.dump(), row.scale}];
            v = std::max(v, row.ratio());
        }
        return m;
    };
    const auto a = maxima(coarse), b = maxima(fine);
    double drift = 0.0;
    for (const auto& [k, v] : a) {
        const auto it = b.find(k);
        if (it == b.end() || !(v > 0.0))
            continue;
        drift = std::max(drift, std::abs(it->second - v) / v);
    }
    return drift;
}

} // namespace tfm::xlab
