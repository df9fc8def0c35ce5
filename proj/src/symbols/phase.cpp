#include "tfm/errors.hpp"
#include "tfm/symbols.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tfm::symbols {

namespace {

using boost::math::quadrature::gauss_kronrod;

double norm2(const Point& p, int dim) { return dim == 1 ? p[0] * p[0] : p[0] * p[0] + p[1] * p[1]; }

void require_alpha(const PhaseSpec& s) {
    if ((s.family == PhaseFamily::power_abs || s.family == PhaseFamily::bracket_power) && !(s.alpha >= 2.0))
        throw InvalidArgument("phase family " + std::string(to_string(s.family)) + " requires alpha >= 2");
}

// Closed-form families at one point (unscaled).
double closed_value(const PhaseSpec& s, const Point& xi, int dim) {
    const double r2 = norm2(xi, dim);
    switch (s.family) {
    case PhaseFamily::power_abs: return std::pow(r2, 0.5 * s.alpha);
    case PhaseFamily::schrodinger_t: return r2;
    case PhaseFamily::bracket_power: return std::pow(1.0 + r2, 0.5 * s.alpha);
    default: break;
    }
    throw InternalError("closed_value on a non closed-form phase");
}

double table_value(const PhaseTable& t, double x) {
    const auto& g = t.grid;
    if (g.dim != 1)
        throw InvalidArgument("custom phase tables are interpolated in d = 1 only");
    const double u = x / g.spacing() + 0.5 * static_cast<double>(g.n);
    if (u < -1e-9 || u > static_cast<double>(g.n - 1) + 1e-9)
        throw InvalidArgument("point outside the custom phase table");
    const double uc = std::clamp(u, 0.0, static_cast<double>(g.n - 1));
    const auto i = std::min(static_cast<std::size_t>(uc), g.n - 2);
    const double w = uc - static_cast<double>(i);
    return (1.0 - w) * t.values[i] + w * t.values[i + 1];
}

// fresnel values at coordinates c_i = (i - n/2) * step, using evenness.
std::vector<double> fresnel_on_centered(std::size_t n, double step) {
    const auto nodes = fresnel_nodes(std::abs(step), n / 2 + 1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = i >= n / 2 ? i - n / 2 : n / 2 - i;
        out[i] = nodes.value[k];
    }
    return out;
}

std::vector<double> phase_on_scaled(const PhaseSpec& spec, const GridSpec& grid, double lambda) {
    require_alpha(spec);
    std::vector<double> out(grid.size());
    switch (spec.family) {
    case PhaseFamily::fresnel_osc: {
        if (grid.dim != 1)
            throw InvalidArgument("fresnel_osc phase is defined for d = 1 only");
        out = fresnel_on_centered(grid.n, lambda * grid.spacing());
        break;
    }
    case PhaseFamily::custom_table: {
        if (!spec.table)
            throw InvalidArgument("custom_table phase without a table");
        if (lambda == 1.0 && spec.table->grid.same_lattice(grid) && spec.table->grid.side == grid.side) {
            out = spec.table->values;
        } else {
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] = table_value(*spec.table, lambda * grid.point(i)[0]);
        }
        break;
    }
    default:
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Point p = grid.point(i);
            out[i] = closed_value(spec, {lambda * p[0], lambda * p[1]}, grid.dim);
        }
    }
    for (auto& v : out)
        v *= spec.scale;
    return out;
}

} // namespace

std::string_view to_string(PhaseFamily f) {
    switch (f) {
    case PhaseFamily::power_abs: return "power_abs";
    case PhaseFamily::schrodinger_t: return "schrodinger_t";
    case PhaseFamily::bracket_power: return "bracket_power";
    case PhaseFamily::fresnel_osc: return "fresnel_osc";
    case PhaseFamily::custom_table: return "custom_table";
    }
    return "?";
}

PhaseFamily parse_phase_family(std::string_view s) {
    for (auto f : {PhaseFamily::power_abs, PhaseFamily::schrodinger_t, PhaseFamily::bracket_power,
                   PhaseFamily::fresnel_osc, PhaseFamily::custom_table})
        if (to_string(f) == s)
            return f;
    throw InvalidArgument("unknown phase family '" + std::string(s) + "'");
}

PhaseSpec PhaseSpec::power_abs(double alpha, double c) {
    PhaseSpec s{PhaseFamily::power_abs, alpha, c, nullptr};
    require_alpha(s);
    return s;
}
PhaseSpec PhaseSpec::schrodinger(double t) { return {PhaseFamily::schrodinger_t, 2.0, t, nullptr}; }
PhaseSpec PhaseSpec::bracket_power(double alpha) {
    PhaseSpec s{PhaseFamily::bracket_power, alpha, 1.0, nullptr};
    require_alpha(s);
    return s;
}
PhaseSpec PhaseSpec::fresnel() { return {PhaseFamily::fresnel_osc, 2.0, 1.0, nullptr}; }
PhaseSpec PhaseSpec::custom(GridSpec grid, std::vector<double> values) {
    if (values.size() != grid.size())
        throw InvalidArgument("custom phase table size mismatch");
    for (double v : values)
        if (!std::isfinite(v))
            throw InvalidArgument("custom phase table has non-finite values");
    return {PhaseFamily::custom_table, 2.0, 1.0,
            std::make_shared<const PhaseTable>(PhaseTable{grid, std::move(values)})};
}

PhaseSpec PhaseSpec::scaled(double s) const {
    PhaseSpec out = *this;
    out.scale *= s;
    return out;
}

std::string PhaseSpec::describe() const {
    std::ostringstream os;
    os << to_string(family);
    if (family == PhaseFamily::power_abs || family == PhaseFamily::bracket_power)
        os << "(alpha=" << alpha << ")";
    if (scale != 1.0)
        os << "*" << scale;
    return os.str();
}

FresnelNodes fresnel_nodes(double h, std::size_t count) {
    FresnelNodes out;
    out.value.assign(count, 0.0);
    out.slope.assign(count, 0.0);
    const auto c2 = [](double s) { return std::cos(s * s); };
    for (std::size_t k = 0; k + 1 < count; ++k) {
        const double a = static_cast<double>(k) * h, b = static_cast<double>(k + 1) * h;
        const auto lin = [&](double s) { return (b - s) * c2(s); };
        // A single 15-point panel is normally exact to rounding on one step; Boost's adaptive
        // estimate misbehaves on very short panels, so subdivide only when the panel disagrees.
        // Rounding of s^2 alone perturbs cos(s^2) by ~ eps b^2, which the Kronrod-Gauss
        // difference reports as error; accept anything at that floor.
        const double tol = 1e-13 + 16.0 * std::numeric_limits<double>::epsilon() * b * b * h;
        double e1 = 0.0, e2 = 0.0;
        double i1 = gauss_kronrod<double, 15>::integrate(c2, a, b, 0, 1e-14, &e1);
        double i2 = gauss_kronrod<double, 15>::integrate(lin, a, b, 0, 1e-14, &e2);
        if (e1 > tol)
            i1 = gauss_kronrod<double, 15>::integrate(c2, a, b, 12, 1e-14, &e1);
        if (e2 > tol)
            i2 = gauss_kronrod<double, 15>::integrate(lin, a, b, 12, 1e-14, &e2);
        if (e1 > tol || e2 > tol)
            throw QuadratureError("fresnel_osc quadrature did not converge on [" + std::to_string(a) +
                                  ", " + std::to_string(b) + "]");
        // m'(b) = m'(a) + int_a^b cos s^2;  m(b) = m(a) + (b-a) m'(a) + int_a^b (b-s) cos s^2
        out.slope[k + 1] = out.slope[k] + i1;
        out.value[k + 1] = out.value[k] + h * out.slope[k] + i2;
    }
    return out;
}

std::vector<double> phase_at(const PhaseSpec& spec, const GridSpec& grid) {
    return phase_on_scaled(spec, grid, 1.0);
}

std::vector<double> phase_eval(const PhaseSpec& spec, const GridSpec& grid) {
    if (grid.side != Side::frequency)
        throw InvalidArgument("phase_eval expects a frequency-side grid");
    return phase_on_scaled(spec, grid, 1.0);
}

std::vector<double> phase_eval_dilated(const PhaseSpec& spec, const GridSpec& grid, double lambda) {
    if (grid.side != Side::frequency)
        throw InvalidArgument("phase_eval_dilated expects a frequency-side grid");
    return phase_on_scaled(spec, grid, lambda);
}

double phase_value(const PhaseSpec& spec, const Point& xi, int dim) {
    require_alpha(spec);
    switch (spec.family) {
    case PhaseFamily::fresnel_osc: {
        if (dim != 1)
            throw InvalidArgument("fresnel_osc phase is defined for d = 1 only");
        const double x = std::abs(xi[0]);
        if (x == 0.0)
            return 0.0;
        // Keep each subinterval well below one oscillation of cos(s^2).
        const double h0 = std::min(0.125, 0.5 / x);
        const auto steps = static_cast<std::size_t>(std::ceil(x / h0));
        return spec.scale * fresnel_nodes(x / static_cast<double>(steps), steps + 1).value.back();
    }
    case PhaseFamily::custom_table:
        if (!spec.table)
            throw InvalidArgument("custom_table phase without a table");
        return spec.scale * table_value(*spec.table, xi[0]);
    default:
        return spec.scale * closed_value(spec, xi, dim);
    }
}

double second_derivative_growth(const PhaseSpec& spec, const GridSpec& grid, double alpha) {
    const auto mu = phase_at(spec, grid);
    const double h = grid.spacing();
    const std::size_t n = grid.n;
    const auto d2 = [h](double m2, double m1, double c, double p1, double p2) {
        return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
    };
    double sup = 0.0;
    if (grid.dim == 1) {
        for (std::size_t i = 2; i + 2 < n; ++i) {
            const double v = d2(mu[i - 2], mu[i - 1], mu[i], mu[i + 1], mu[i + 2]);
            sup = std::max(sup, std::abs(v) * std::pow(1.0 + std::pow(grid.coordinate(i), 2), 0.5 * (2.0 - alpha)));
        }
        return sup;
    }
    const auto at = [&](std::size_t i, std::size_t j) { return mu[i * n + j]; };
    for (std::size_t i = 2; i + 2 < n; ++i)
        for (std::size_t j = 2; j + 2 < n; ++j) {
            const double d11 = d2(at(i - 2, j), at(i - 1, j), at(i, j), at(i + 1, j), at(i + 2, j));
            const double d22 = d2(at(i, j - 2), at(i, j - 1), at(i, j), at(i, j + 1), at(i, j + 2));
            const double d12 = (at(i + 1, j + 1) - at(i + 1, j - 1) - at(i - 1, j + 1) + at(i - 1, j - 1)) / (4.0 * h * h);
            const double r2 = std::pow(grid.coordinate(i), 2) + std::pow(grid.coordinate(j), 2);
            const double w = std::pow(1.0 + r2, 0.5 * (2.0 - alpha));
            sup = std::max({sup, w * std::abs(d11), w * std::abs(d22), w * std::abs(d12)});
        }
    return sup;
}

} // namespace tfm::symbols
