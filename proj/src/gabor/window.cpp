#include "tfm/errors.hpp"
#include "tfm/gabor.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace tfm::gabor {

std::string Exponent::str() const {
    if (infinite_)
        return "inf";
    std::ostringstream os;
    os.precision(17);
    os << value_;
    return os.str();
}

Exponent Exponent::parse(std::string_view s) {
    if (s == "inf" || s == "infinity" || s == "Inf")
        return infinity();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument("cannot parse exponent '" + std::string(s) + "'");
    return Exponent(v);
}

std::string SpaceParams::describe() const {
    std::ostringstream os;
    os << "(p=" << p.str() << ", q=" << q.str() << ", delta=" << delta << ")";
    return os.str();
}

double weight_eval(const Point& xi, int dim, double s) {
    const double r2 = dim == 1 ? xi[0] * xi[0] : xi[0] * xi[0] + xi[1] * xi[1];
    if (s == 0.0)
        return 1.0;
    return std::pow(1.0 + r2, 0.5 * s);
}

std::string WindowSpec::describe() const {
    std::ostringstream os;
    os << (kind == WindowKind::gaussian ? "gaussian" : "band_limited") << "(width=" << width << ")";
    return os.str();
}

WindowKind parse_window_kind(std::string_view s) {
    if (s == "gaussian")
        return WindowKind::gaussian;
    if (s == "band_limited")
        return WindowKind::band_limited;
    throw InvalidArgument("unknown window kind '" + std::string(s) + "'");
}

GeneratorSpec window_generator(const WindowSpec& w) {
    GeneratorSpec g;
    g.kind = w.kind == WindowKind::gaussian ? GeneratorKind::gaussian
                                            : GeneratorKind::band_limited_window;
    g.width = w.width;
    return g;
}

double window_radius(const WindowSpec& w, int dim) {
    return footprint(window_generator(w), dim).spatial;
}

StftLattice coarse_lattice(const GridSpec& grid, const WindowSpec& w) {
    const double h = grid.spacing();
    // Segment spans twice the window diameter so b resolves the window spectrum comfortably.
    const double need = 4.0 * window_radius(w, grid.dim) / h;
    std::size_t m = 4;
    while (static_cast<double>(m) < need && m < grid.n)
        m *= 2;
    std::size_t xs = 1;
    while (static_cast<double>(2 * xs) * h <= w.width / 8.0 && 2 * xs <= grid.n)
        xs *= 2;
    return {xs, grid.n / m};
}

StftLattice lattice_from_steps(const GridSpec& grid, double a, double b) {
    const double h = grid.spacing();
    const double dual = 1.0 / (static_cast<double>(grid.n) * h);
    const double sa = a / h, sb = b / dual;
    if (std::abs(sa - std::round(sa)) > 1e-9 * sa || std::abs(sb - std::round(sb)) > 1e-9 * sb ||
        std::round(sa) < 1 || std::round(sb) < 1)
        throw InvalidArgument("lattice steps must be positive integer multiples of the grid spacings");
    return {static_cast<std::size_t>(std::round(sa)), static_cast<std::size_t>(std::round(sb))};
}

double partition_bump(double xi) {
    const auto B = [](double t) {
        const double u = 1.0 - t * t;
        return u > 0.0 ? u * u * u : 0.0;
    };
    const double f = std::floor(xi);
    // Only the two integers bracketing xi carry weight.
    const double den = B(xi - f) + B(xi - f - 1.0);
    return B(xi) / den;
}

double partition_phi(const Point& xi, int dim) {
    double v = partition_bump(xi[0]);
    if (dim == 2)
        v *= partition_bump(xi[1]);
    return v;
}

} // namespace tfm::gabor
