#include "tfm/dyadic.hpp"

#include "tfm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tfm::dyadic {

namespace {

double radius(const Point& xi, int dim) {
    return std::sqrt(xi[0] * xi[0] + (dim == 2 ? xi[1] * xi[1] : 0.0));
}

void require_frequency(const GridSpec& g) {
    if (g.side != Side::frequency)
        throw InvalidArgument("dyadic tabulations live on frequency-side grids");
}

} // namespace

double smoothstep(double u) {
    if (u <= 0.0)
        return 0.0;
    if (u >= 1.0)
        return 1.0;
    // u^5 sum_{k=0}^{4} C(4+k, k) (1-u)^k
    const double v = 1.0 - u;
    const double poly = 1.0 + v * (5.0 + v * (15.0 + v * (35.0 + v * 70.0)));
    const double u2 = u * u;
    return u2 * u2 * u * poly;
}

double psi0_profile(double r) {
    if (r <= 1.0)
        return 1.0;
    if (r >= 2.0)
        return 0.0;
    return 1.0 - smoothstep(r - 1.0);
}

double psi_profile(double r) { return psi0_profile(r) - psi0_profile(2.0 * r); }

double chi_profile(double r) {
    if (r <= 0.25 || r >= 4.0)
        return 0.0;
    if (r < 0.5)
        return smoothstep((r - 0.25) / 0.25);
    if (r <= 2.0)
        return 1.0;
    return 1.0 - smoothstep((r - 2.0) / 2.0);
}

double psi_j(int j, double r) { return j == 0 ? psi0_profile(r) : psi_profile(std::ldexp(r, -j)); }

double chi_j(int j, double r) { return chi_profile(std::ldexp(r, -j)); }

DyadicDecomposition lp_family(int J, const GridSpec& grid) {
    require_frequency(grid);
    if (J < 0)
        throw InvalidArgument("top scale J must be non-negative");
    if (std::ldexp(1.0, J + 1) > grid.nyquist()) {
        std::ostringstream os;
        os << "top scale J=" << J << " needs Nyquist >= " << std::ldexp(1.0, J + 1) << ", grid has "
           << grid.nyquist();
        throw GuardError(os.str());
    }
    DyadicDecomposition dec{J, grid, {}, {}};
    for (int j = 0; j <= J; ++j) {
        std::vector<double> p(grid.size()), c(grid.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double r = radius(grid.point(i), grid.dim);
            p[i] = psi_j(j, r);
            c[i] = chi_j(j, r);
        }
        dec.psi.push_back(std::move(p));
        dec.chi.push_back(std::move(c));
    }
    return dec;
}

double lambda_scale(double alpha, int j) {
    if (!(alpha >= 2.0))
        throw InvalidArgument("lambda_scale requires alpha >= 2");
    if (j < 0)
        throw InvalidArgument("lambda_scale requires j >= 0");
    return std::exp2(-(alpha - 2.0) * j / 2.0);
}

symbols::SymbolTable dyadic_piece_symbol(int j, const symbols::PhaseSpec& phase, double delta,
                                         const DyadicDecomposition& dec) {
    if (j < 0 || j > dec.J)
        throw InvalidArgument("dyadic index outside 0..J");
    const auto& g = dec.grid;
    const auto mu = symbols::phase_eval(phase, g);
    std::vector<Complex> v(g.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = radius(g.point(i), g.dim);
        const double m = dec.psi[j][i] * (delta == 0.0 ? 1.0 : std::pow(1.0 + r * r, -0.5 * delta));
        v[i] = std::polar(m, mu[i]);
        sup = std::max(sup, std::abs(m));
    }
    return {g, std::move(v), symbols::SymbolDescriptor{"sigma_j(" + phase.describe() + ")", delta, j, sup}};
}

symbols::SymbolTable chi_symbol(int j, const GridSpec& grid) {
    require_frequency(grid);
    auto s = symbols::make_symbol(
        grid, [j, d = grid.dim](const Point& xi) { return Complex(chi_j(j, radius(xi, d)), 0.0); }, "chi_j");
    return s;
}

double required_nyquist(int j, double alpha) { return std::ldexp(1.0, j + 1) / lambda_scale(alpha, j); }

GridSpec rescaled_grid(int j, double alpha, int dim, double extent) {
    const double need = 2.0 * required_nyquist(j, alpha);
    std::size_t n = 16;
    while (0.5 * static_cast<double>(n) / extent < need)
        n *= 2;
    return make_grid(dim, n, extent, Side::frequency);
}

RescaledFactors rescaled_factors(int j, double alpha, const symbols::PhaseSpec& phase, double delta,
                                 const GridSpec& grid) {
    require_frequency(grid);
    const double lambda = lambda_scale(alpha, j);
    const double need = required_nyquist(j, alpha);
    if (grid.nyquist() < need) {
        std::ostringstream os;
        os << "grid " << grid.describe() << " does not cover supp psi_" << j << "(lambda_j .): needs Nyquist >= "
           << need << " (e.g. n >= " << std::ceil(2.0 * need * grid.extent) << " at extent " << grid.extent << ")";
        throw GuardError(os.str());
    }
    const auto mu = symbols::phase_eval_dilated(phase, grid, lambda);
    std::vector<Complex> a(grid.size()), b(grid.size());
    double bsup = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = lambda * radius(grid.point(i), grid.dim);
        a[i] = std::polar(1.0, chi_j(j, r) * mu[i]);
        const double bm = psi_j(j, r) * (delta == 0.0 ? 1.0 : std::pow(1.0 + r * r, -0.5 * delta));
        b[i] = bm;
        bsup = std::max(bsup, bm);
    }
    return {lambda,
            symbols::SymbolTable(grid, std::move(a), {"A_j", 0.0, j, 1.0}),
            symbols::SymbolTable(grid, std::move(b), {"B_j", delta, j, bsup})};
}

LeibnizSurrogates leibniz_surrogates(int j, double alpha, const symbols::PhaseSpec& phase,
                                     const GridSpec& grid) {
    require_frequency(grid);
    if (grid.dim != 1)
        throw InvalidArgument("Leibniz surrogates are tabulated in d = 1");
    const double lambda = lambda_scale(alpha, j);
    const auto mu = symbols::phase_eval_dilated(phase, grid, lambda);
    std::vector<double> chi(grid.size()), prod(grid.size());
    for (std::size_t i = 0; i < chi.size(); ++i) {
        chi[i] = chi_j(j, lambda * std::abs(grid.coordinate(i)));
        prod[i] = chi[i] * mu[i];
    }
    const double h = grid.spacing();
    const auto d1 = [h](const std::vector<double>& f, std::size_t i) {
        return (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    };
    const auto d2 = [h](const std::vector<double>& f, std::size_t i) {
        return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
    };
    LeibnizSurrogates s;
    for (std::size_t i = 2; i + 2 < grid.n; ++i) {
        s.chi2_mu = std::max(s.chi2_mu, std::abs(d2(chi, i) * mu[i]));
        s.chi1_mu1 = std::max(s.chi1_mu1, std::abs(d1(chi, i) * d1(mu, i)));
        s.chi_mu2 = std::max(s.chi_mu2, std::abs(chi[i] * d2(mu, i)));
        s.curvature = std::max(s.curvature, std::abs(d2(prod, i)));
    }
    return s;
}

} // namespace tfm::dyadic
