#include "tfm/errors.hpp"
#include "tfm/fourier.hpp"
#include "tfm/symbols.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tfm::symbols {

namespace {

void require_frequency(const GridSpec& g) {
    if (g.side != Side::frequency)
        throw InvalidArgument("symbols live on frequency-side grids, got " + g.describe());
}

// 64-node Gauss-Legendre rule mapped to [0, 1].
struct UnitRule {
    std::vector<double> nodes, weights;
};

const UnitRule& gauss_legendre_64() {
    static const UnitRule rule = [] {
        constexpr int n = 64;
        UnitRule r;
        for (double z : boost::math::legendre_p_zeros<double>(n)) {
            const double dp = boost::math::legendre_p_prime(n, z);
            const double w = 2.0 / ((1.0 - z * z) * dp * dp);
            r.nodes.push_back(0.5 * (1.0 + z));
            r.weights.push_back(0.5 * w);
            if (z != 0.0) {
                r.nodes.push_back(0.5 * (1.0 - z));
                r.weights.push_back(0.5 * w);
            }
        }
        return r;
    }();
    return rule;
}

} // namespace

SymbolTable::SymbolTable(GridSpec grid, std::vector<Complex> values, SymbolDescriptor descriptor)
    : grid_(grid), values_(std::move(values)), descriptor_(std::move(descriptor)) {
    require_frequency(grid_);
    if (values_.size() != grid_.size())
        throw InvalidArgument("symbol table size does not match its grid");
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidArgument("symbol table has non-finite values");
        if (std::abs(v) > descriptor_.sup_bound * (1.0 + 1e-12) + 1e-300)
            throw InvalidArgument("symbol value exceeds the recorded sup bound of '" + descriptor_.label + "'");
    }
}

double SymbolTable::sup() const {
    double m = 0.0;
    for (const auto& v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

SymbolTable make_symbol(const GridSpec& grid, const PointFunction& fn, std::string label) {
    require_frequency(grid);
    std::vector<Complex> v(grid.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = fn(grid.point(i));
        sup = std::max(sup, std::abs(v[i]));
    }
    return {grid, std::move(v), SymbolDescriptor{std::move(label), 0.0, std::nullopt, sup}};
}

SymbolTable constant_symbol(const GridSpec& grid, Complex c) {
    return make_symbol(grid, [c](const Point&) { return c; }, "constant");
}

SymbolTable unimodular_symbol(const PhaseSpec& phase, double delta, const GridSpec& grid) {
    require_frequency(grid);
    const auto mu = phase_eval(phase, grid);
    std::vector<Complex> v(grid.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point xi = grid.point(i);
        const double r2 = grid.dim == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
        const double w = delta == 0.0 ? 1.0 : std::pow(1.0 + r2, -0.5 * delta);
        v[i] = std::polar(w, mu[i]);
        sup = std::max(sup, w);
    }
    return {grid, std::move(v), SymbolDescriptor{phase.describe(), delta, std::nullopt, sup}};
}

SymbolTable multiply(const SymbolTable& a, const SymbolTable& b) {
    if (!(a.grid() == b.grid()))
        throw InvalidArgument("cannot multiply symbols on different grids");
    std::vector<Complex> v(a.values().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a[i] * b[i];
    SymbolDescriptor d{a.descriptor().label + "*" + b.descriptor().label,
                       a.descriptor().delta + b.descriptor().delta, std::nullopt,
                       a.descriptor().sup_bound * b.descriptor().sup_bound};
    return {a.grid(), std::move(v), std::move(d)};
}

SymbolTable random_bounded_symbol(const GridSpec& grid, std::uint64_t seed, bool unimodular) {
    require_frequency(grid);
    std::mt19937_64 rng(seed);
    // Explicit bit-to-double map keeps the stream identical across standard libraries.
    const auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Complex> v(grid.size());
    for (auto& s : v) {
        const double phase = 2.0 * std::numbers::pi * uniform();
        const double mod = unimodular ? 1.0 : uniform();
        s = std::polar(mod, phase);
    }
    return {grid, std::move(v),
            SymbolDescriptor{"random(seed=" + std::to_string(seed) + ")", 0.0, std::nullopt, 1.0}};
}

SampledSignal apply_multiplier(const SymbolTable& sigma, const SampledSignal& f) {
    if (f.grid().side != Side::physical)
        throw InvalidArgument("apply_multiplier expects a physical-side signal");
    if (!sigma.grid().same_lattice(f.grid()))
        throw InvalidArgument("symbol grid " + sigma.grid().describe() + " does not match signal grid " +
                              f.grid().describe());
    const SampledSignal F = forward_ft(f);
    std::vector<Complex> prod(F.size());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = sigma[i] * F[i];
    return inverse_ft(SampledSignal(F.grid(), std::move(prod)));
}

SampledSignal bessel_potential(const SampledSignal& f, double t) {
    const GridSpec fg = f.grid().dual();
    const int d = fg.dim;
    const auto sym = make_symbol(
        fg,
        [t, d](const Point& xi) {
            const double r2 = d == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
            return Complex(std::pow(1.0 + r2, 0.5 * t), 0.0);
        },
        "bessel");
    return apply_multiplier(sym, f);
}

SampledSignal averaged_dilate(const PointFunction& f, const SampledSignal& chi, const Point& x0) {
    const auto& g = chi.grid();
    // chi(x - x0) by an exact circular shift; rejects off-grid x0.
    const SampledSignal shifted = translate_modulate(chi, x0, {0.0, 0.0});
    const auto& rule = gauss_legendre_64();
    std::vector<Complex> out(g.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Complex c = shifted[i];
        if (c == Complex(0.0))
            continue;
        const Point x = g.point(i);
        const Point u{x[0] - x0[0], x[1] - x0[1]};
        Complex acc = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double t = rule.nodes[k];
            acc += rule.weights[k] * (1.0 - t) * f({t * u[0] + x0[0], t * u[1] + x0[1]});
        }
        out[i] = c * acc;
    }
    return {g, std::move(out)};
}

double bump(const Point& t, int dim, double radius) {
    const double r2 = (dim == 1 ? t[0] * t[0] : t[0] * t[0] + t[1] * t[1]) / (radius * radius);
    if (r2 >= 1.0)
        return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r2));
}

} // namespace tfm::symbols
