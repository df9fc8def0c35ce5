#include "tfm/errors.hpp"
#include "tfm/symbols.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace tfm::symbols {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Fourth-order central differences along direction e with step h.
double d2_along(const PhaseSpec& mu, const Point& x, const Point& e, int dim, double h) {
    const auto at = [&](double s) { return phase_value(mu, {x[0] + s * e[0], x[1] + s * e[1]}, dim); };
    return (-at(-2 * h) + 16.0 * at(-h) - 30.0 * at(0.0) + 16.0 * at(h) - at(2 * h)) / (12.0 * h * h);
}

double mixed_d12(const PhaseSpec& mu, const Point& x, double h) {
    const auto cross = [&](double s) {
        const auto at = [&](double a, double b) { return phase_value(mu, {x[0] + a, x[1] + b}, 2); };
        return (at(s, s) - at(s, -s) - at(-s, s) + at(-s, -s)) / (4.0 * s * s);
    };
    // Richardson on the second-order cross stencil.
    return (4.0 * cross(h) - cross(2.0 * h)) / 3.0;
}

} // namespace

double taylor_integral_remainder(const PhaseSpec& phase, const Point& x, int dim, double h) {
    const auto integrand = [&](double t) {
        const Point tx{t * x[0], t * x[1]};
        double v = d2_along(phase, tx, {1.0, 0.0}, dim, h) * x[0] * x[0];
        if (dim == 2) {
            v += d2_along(phase, tx, {0.0, 1.0}, dim, h) * x[1] * x[1];
            v += 2.0 * mixed_d12(phase, tx, h) * x[0] * x[1];
        }
        return (1.0 - t) * v;
    };
    double err = 0.0, l1 = 0.0;
    const double val = gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 12, 1e-12, &err, &l1);
    if (err > 1e-9 * std::max(1.0, l1))
        throw QuadratureError("Taylor remainder quadrature did not converge (error estimate " +
                              std::to_string(err) + ")");
    return val;
}

TaylorSplit taylor_split(const PhaseSpec& phase, double radius, const GridSpec& grid) {
    if (!(radius > 0.0))
        throw InvalidArgument("taylor_split needs a positive ball radius");
    const auto mu = phase_at(phase, grid);
    const std::size_t n = grid.n, c = n / 2;
    const double h = grid.spacing();
    const auto idx = [&](std::size_t i, std::size_t j) { return grid.dim == 1 ? i : i * n + j; };
    const auto first = [&](auto at) { // five-point first derivative at the origin node
        return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h);
    };
    const double mu0 = mu[idx(c, c)];
    Point grad{first([&](int k) { return mu[idx(c + k, c)]; }), 0.0};
    if (grid.dim == 2)
        grad[1] = first([&](int k) { return mu[idx(c, c + k)]; });

    TaylorSplit out;
    out.affine.resize(mu.size());
    out.remainder.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const Point x = grid.point(i);
        out.affine[i] = mu0 + grad[0] * x[0] + (grid.dim == 2 ? grad[1] * x[1] : 0.0);
        out.remainder[i] = mu[i] - out.affine[i];
    }
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const Point x = grid.point(i);
        const double r = std::sqrt(x[0] * x[0] + (grid.dim == 2 ? x[1] * x[1] : 0.0));
        if (r > radius)
            continue;
        const double psi2 = taylor_integral_remainder(phase, x, grid.dim, h);
        out.integral_mismatch = std::max(out.integral_mismatch, std::abs(psi2 - out.remainder[i]));
    }
    return out;
}

} // namespace tfm::symbols
