#include "tfm/grid.hpp"

#include "tfm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tfm {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_lattice(const SampledSignal& a, const SampledSignal& b) {
    if (!(a.grid() == b.grid()))
        throw InvalidArgument("signals live on different grids: " + a.grid().describe() +
                              " vs " + b.grid().describe());
}

} // namespace

double GridSpec::cell() const {
    const double h = spacing();
    return dim == 1 ? h : h * h;
}

Point GridSpec::point(std::size_t flat) const {
    if (dim == 1)
        return {coordinate(flat), 0.0};
    return {coordinate(flat / n), coordinate(flat % n)};
}

GridSpec GridSpec::dual() const {
    GridSpec g = *this;
    g.side = side == Side::physical ? Side::frequency : Side::physical;
    return g;
}

bool GridSpec::same_lattice(const GridSpec& other) const {
    return dim == other.dim && n == other.n && extent == other.extent;
}

std::string GridSpec::describe() const {
    std::ostringstream os;
    os << "grid(d=" << dim << ", n=" << n << ", L=" << extent << ", "
       << (side == Side::physical ? "physical" : "frequency") << ")";
    return os.str();
}

GridSpec make_grid(int d, std::size_t n, double extent, Side side) {
    if (d != 1 && d != 2)
        throw InvalidArgument("grid dimension must be 1 or 2, got " + std::to_string(d));
    if (!is_pow2(n) || n < 16)
        throw InvalidArgument("samples per axis must be a power of two >= 16, got " +
                              std::to_string(n));
    if (!(extent > 0.0) || !std::isfinite(extent))
        throw InvalidArgument("grid extent must be positive and finite");
    return GridSpec{d, n, extent, side};
}

GridSpec refine(const GridSpec& g, int k) {
    if (k < 0)
        throw InvalidArgument("refinement level must be non-negative");
    const std::size_t f = std::size_t{1} << k;
    return make_grid(g.dim, g.n * f, g.extent * static_cast<double>(f), g.side);
}

SampledSignal::SampledSignal(GridSpec grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
    if (samples_.size() != grid_.size())
        throw InvalidArgument("sample count " + std::to_string(samples_.size()) +
                              " does not match " + grid_.describe());
    for (const auto& v : samples_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw InvalidArgument("non-finite sample");
}

SampledSignal SampledSignal::zeros(const GridSpec& grid) {
    return SampledSignal(grid, std::vector<Complex>(grid.size()));
}

double SampledSignal::l2_norm() const {
    double s = 0.0;
    for (const auto& v : samples_)
        s += std::norm(v);
    return std::sqrt(s * grid_.cell());
}

double SampledSignal::max_abs() const {
    double m = 0.0;
    for (const auto& v : samples_)
        m = std::max(m, std::abs(v));
    return m;
}

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b) {
    require_same_lattice(a, b);
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] + b[i];
    return {a.grid(), std::move(out)};
}

SampledSignal operator-(const SampledSignal& a, const SampledSignal& b) {
    require_same_lattice(a, b);
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] - b[i];
    return {a.grid(), std::move(out)};
}

SampledSignal operator*(Complex c, const SampledSignal& f) {
    std::vector<Complex> out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = c * f[i];
    return {f.grid(), std::move(out)};
}

SampledSignal pointwise_product(const SampledSignal& a, const SampledSignal& b) {
    require_same_lattice(a, b);
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = a[i] * b[i];
    return {a.grid(), std::move(out)};
}

double max_abs_difference(const SampledSignal& a, const SampledSignal& b) {
    require_same_lattice(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace tfm
