#include "tfm/generators.hpp"

#include "tfm/errors.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace tfm {

namespace {

constexpr double pi = std::numbers::pi;
// e^{-pi r^2} = 1e-12
const double gauss_radius = std::sqrt(12.0 * std::log(10.0) / pi);

double norm2(const Point& p, int dim) { return dim == 1 ? p[0] * p[0] : p[0] * p[0] + p[1] * p[1]; }
double max_abs(const Point& p, int dim) {
    return dim == 1 ? std::abs(p[0]) : std::max(std::abs(p[0]), std::abs(p[1]));
}

double gaussian_profile(const Point& u, double s, int dim) {
    const double c = std::pow(2.0, 0.25 * dim) * std::pow(s, -0.5 * dim);
    return c * std::exp(-pi * norm2(u, dim) / (s * s));
}

// 2^{-m} sum_k C(m,k) sinc(u + k - m/2) with m even, sinc(x) = sin(pi x)/(pi x).
// For m even sin(pi(u + k - m/2)) = (-1)^{k - m/2} sin(pi u).
double bl_core(double u) {
    constexpr int m = band_limited_order;
    const double su = std::sin(pi * u);
    double acc = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double x = u + k - m / 2;
        const double c = boost::math::binomial_coefficient<double>(m, k);
        double term;
        if (std::abs(x) < 1e-8) {
            term = 1.0 - (pi * x) * (pi * x) / 6.0;
        } else {
            const double sign = ((k - m / 2) % 2 == 0) ? 1.0 : -1.0;
            term = sign * su / (pi * x);
        }
        acc += c * term;
    }
    return std::ldexp(acc, -m);
}

// 1-D factor with spectrum cos^m(pi xi/(2h)) on |xi| <= h, unit L2 norm.
double bl_axis(double t, double h) {
    constexpr int m = band_limited_order;
    const double c2m = boost::math::binomial_coefficient<double>(2 * m, m);
    const double nrm = std::sqrt(2.0 * h * c2m * std::ldexp(1.0, -2 * m));
    return 2.0 * h * bl_core(2.0 * h * t) / nrm;
}

double bl_half_width(int dim) { return dim == 1 ? 0.5 : 0.5 / std::sqrt(2.0); }

// |bl_core(u)| <= 2^{-m} m! / (pi |u|^{m+1}) asymptotically; radius where this
// drops below 1e-12.
double bl_core_radius() {
    constexpr int m = band_limited_order;
    double fact = 1.0;
    for (int i = 2; i <= m; ++i)
        fact *= i;
    const double c = std::ldexp(fact, -m) / pi;
    return std::pow(c / 1e-12, 1.0 / (m + 1)) + m / 2.0;
}

double box_axis(double u, double w, double e) {
    const double r = std::sqrt(pi) / e;
    return 0.5 * (std::erf(r * (u + w)) - std::erf(r * (u - w)));
}

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }
double dot(const Point& a, const Point& b, int dim) {
    return dim == 1 ? a[0] * b[0] : a[0] * b[0] + a[1] * b[1];
}

void validate(const GeneratorSpec& s, int dim) {
    if (dim != 1 && dim != 2)
        throw InvalidArgument("generator dimension must be 1 or 2");
    if (!(s.width > 0.0) || !std::isfinite(s.width))
        throw InvalidArgument("generator width must be positive");
    if (s.kind == GeneratorKind::wave_packet && (s.shell < 0 || s.shell > 40))
        throw InvalidArgument("wave packet shell index out of range");
}

} // namespace

std::string_view to_string(GeneratorKind k) {
    switch (k) {
    case GeneratorKind::gaussian: return "gaussian";
    case GeneratorKind::chirp: return "chirp";
    case GeneratorKind::smoothed_box: return "smoothed_box";
    case GeneratorKind::wave_packet: return "wave_packet";
    case GeneratorKind::band_limited_window: return "band_limited_window";
    }
    return "?";
}

GeneratorKind parse_generator_kind(std::string_view s) {
    for (auto k : {GeneratorKind::gaussian, GeneratorKind::chirp, GeneratorKind::smoothed_box,
                   GeneratorKind::wave_packet, GeneratorKind::band_limited_window})
        if (to_string(k) == s)
            return k;
    throw InvalidArgument("unknown generator kind '" + std::string(s) + "'");
}

Point wave_packet_frequency(int k, int dim) {
    (void)dim;
    return {k == 0 ? 0.0 : std::ldexp(1.0, k), 0.0};
}

double wave_packet_width(int k, double width) {
    return k == 0 ? width : width * std::ldexp(1.0, 2 - k);
}

Complex evaluate(const GeneratorSpec& s, const Point& t, int dim) {
    const Point u = sub(t, s.center);
    const auto carrier = [&](const Point& xi) { return std::polar(1.0, 2.0 * pi * dot(xi, t, dim)); };
    switch (s.kind) {
    case GeneratorKind::gaussian:
        return s.amplitude * gaussian_profile(u, s.width, dim) * carrier(s.frequency);
    case GeneratorKind::chirp:
        return s.amplitude * gaussian_profile(u, s.width, dim) *
               std::polar(1.0, pi * s.chirp_rate * norm2(u, dim)) * carrier(s.frequency);
    case GeneratorKind::smoothed_box: {
        double v = box_axis(u[0], s.width, 0.5 * s.width);
        if (dim == 2)
            v *= box_axis(u[1], s.width, 0.5 * s.width);
        return s.amplitude * v * carrier(s.frequency);
    }
    case GeneratorKind::wave_packet: {
        const double w = wave_packet_width(s.shell, s.width);
        return s.amplitude * gaussian_profile(u, w, dim) * carrier(wave_packet_frequency(s.shell, dim));
    }
    case GeneratorKind::band_limited_window: {
        const double h = bl_half_width(dim);
        const double sc = 1.0 / std::sqrt(s.width);
        double v = sc * bl_axis(u[0] / s.width, h);
        if (dim == 2)
            v *= sc * bl_axis(u[1] / s.width, h);
        return s.amplitude * v * carrier(s.frequency);
    }
    }
    return 0.0;
}

PointFunction closed_form(const GeneratorSpec& spec, int dim) {
    validate(spec, dim);
    return [spec, dim](const Point& t) { return evaluate(spec, t, dim); };
}

Footprint footprint(const GeneratorSpec& s, int dim) {
    validate(s, dim);
    const double x0 = max_abs(s.center, dim);
    const double xi0 = max_abs(s.frequency, dim);
    switch (s.kind) {
    case GeneratorKind::gaussian:
        return {x0 + gauss_radius * s.width, xi0 + gauss_radius / s.width};
    case GeneratorKind::chirp: {
        // |FT| of e^{pi i c t^2 - pi t^2/s^2} is a gaussian of variance-width sqrt(1/s^2 + c^2 s^2).
        const double w = s.width;
        return {x0 + gauss_radius * w,
                xi0 + gauss_radius * std::sqrt(1.0 / (w * w) + s.chirp_rate * s.chirp_rate * w * w)};
    }
    case GeneratorKind::smoothed_box:
        return {x0 + s.width + gauss_radius * 0.5 * s.width, xi0 + gauss_radius / (0.5 * s.width)};
    case GeneratorKind::wave_packet: {
        const double w = wave_packet_width(s.shell, s.width);
        return {x0 + gauss_radius * w,
                max_abs(wave_packet_frequency(s.shell, dim), dim) + gauss_radius / w};
    }
    case GeneratorKind::band_limited_window: {
        const double h = bl_half_width(dim);
        return {x0 + s.width * bl_core_radius() / (2.0 * h), xi0 + h / s.width};
    }
    }
    return {};
}

void check_fits(const GeneratorSpec& spec, const GridSpec& grid, double lambda) {
    if (grid.side != Side::physical)
        throw InvalidArgument("generators are sampled on physical-side grids");
    const Footprint fp = footprint(spec, grid.dim);
    const double a = std::abs(lambda);
    const double freq = fp.frequency * a;
    const double space = fp.spatial / a;
    if (freq > grid.nyquist()) {
        std::ostringstream os;
        os << to_string(spec.kind) << " generator reaches frequency " << freq
           << " beyond the Nyquist limit " << grid.nyquist() << " of " << grid.describe();
        throw GuardError(os.str());
    }
    if (space > grid.half_width()) {
        std::ostringstream os;
        os << to_string(spec.kind) << " generator extends to |t| = " << space
           << " beyond the half-extent " << grid.half_width() << " of " << grid.describe();
        throw GuardError(os.str());
    }
}

SampledSignal tabulate(const PointFunction& fn, const GridSpec& grid) {
    std::vector<Complex> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = fn(grid.point(i));
    return {grid, std::move(out)};
}

SampledSignal synthesize(const GeneratorSpec& spec, const GridSpec& grid) {
    check_fits(spec, grid);
    return tabulate(closed_form(spec, grid.dim), grid);
}

SampledSignal dilate(const GeneratorSpec& spec, double lambda, const GridSpec& grid) {
    if (lambda == 0.0 || !std::isfinite(lambda))
        throw InvalidArgument("dilation factor must be finite and nonzero");
    check_fits(spec, grid, lambda);
    const int dim = grid.dim;
    std::vector<Complex> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Point t = grid.point(i);
        out[i] = evaluate(spec, {lambda * t[0], lambda * t[1]}, dim);
    }
    return {grid, std::move(out)};
}

} // namespace tfm
