#pragma once

#include "tfm/errors.hpp"
#include "tfm/generators.hpp"
#include "tfm/grid.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfm::gabor {

// Exponent in [1, infinity]; infinity is a distinct state, not a big float.
class Exponent {
public:
    constexpr Exponent(double v) : value_(v), infinite_(false) { // NOLINT: implicit by design
        if (!(v >= 1.0) || v != v || v > 1e300)
            throw InvalidArgument("exponent must lie in [1, inf)");
    }
    static constexpr Exponent infinity() { return Exponent(); }

    constexpr bool is_infinite() const { return infinite_; }
    // Only meaningful for finite exponents.
    constexpr double value() const { return value_; }
    constexpr double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

    std::string str() const;
    static Exponent parse(std::string_view s);

    friend constexpr bool operator==(const Exponent& a, const Exponent& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    constexpr Exponent() : value_(0.0), infinite_(true) {}
    double value_;
    bool infinite_;
};

inline constexpr Exponent inf = Exponent::infinity();

// M^{p,q}_delta (weight <xi>^delta on the frequency variable) or, for the
// amalgam estimators, W(FL^p, L^q) with delta unused.
struct SpaceParams {
    Exponent p = 2.0;
    Exponent q = 2.0;
    double delta = 0.0;
    std::string describe() const;
};

// <xi>^s = (1 + |xi|^2)^{s/2}
double weight_eval(const Point& xi, int dim, double s);

enum class WindowKind { gaussian, band_limited };

struct WindowSpec {
    WindowKind kind = WindowKind::gaussian;
    double width = 1.0;
    std::string describe() const;
};

WindowKind parse_window_kind(std::string_view s);
GeneratorSpec window_generator(const WindowSpec& w);
// Radius (per axis) beyond which the window is negligible (~1e-12).
double window_radius(const WindowSpec& w, int dim);

// Time-frequency lattice as integer strides of the grid: a = x_stride * spacing,
// b = xi_stride / (n * spacing). xi_stride > 1 means the windowed pieces are
// transformed over a segment of n / xi_stride samples around each position.
struct StftLattice {
    std::size_t x_stride = 1;
    std::size_t xi_stride = 1;
};

// Coarser lattice for large grids: segment = smallest power of two covering
// twice the window radius, x step ~ width / 8.
StftLattice coarse_lattice(const GridSpec& grid, const WindowSpec& w);

// Lattice from real steps; a and b must be integer multiples of the grid spacings.
StftLattice lattice_from_steps(const GridSpec& grid, double a, double b);

struct StftMatrix {
    GridSpec grid;
    WindowSpec window;
    StftLattice lattice;
    std::size_t x_count = 0;  // per axis
    std::size_t xi_count = 0; // per axis
    double a = 0.0;
    double b = 0.0;
    std::vector<Complex> values; // [position][bin], both row-major over axes

    std::size_t positions() const;
    std::size_t bins() const;
    Complex at(std::size_t pos, std::size_t bin) const { return values[pos * bins() + bin]; }
    Point x_point(std::size_t pos) const;
    Point xi_point(std::size_t bin) const;
};

// V_g f(x_m, xi_k) = dx^d sum_y f(y) conj(g(y - x_m)) e^{-2 pi i xi_k.y}
StftMatrix stft(const SampledSignal& f, const WindowSpec& w, StftLattice lattice = {});
StftMatrix stft(const SampledSignal& f, const WindowSpec& w, double a, double b);

// (sum_xi (sum_x |V|^p <xi>^{delta p} a^d)^{q/p} b^d)^{1/q}, sup for infinite exponents.
double mixed_norm(const StftMatrix& V, const SpaceParams& params);

// Streaming versions: the STFT is never stored; several parameter sets
// share one pass over the lattice.
double modulation_norm(const SampledSignal& f, const WindowSpec& w, const SpaceParams& params,
                       StftLattice lattice = {});
std::vector<double> modulation_norms(const SampledSignal& f, const WindowSpec& w,
                                     std::span<const SpaceParams> params, StftLattice lattice = {});

// W(FL^p, L^q): local FL^p norms of g(. - x) f, then L^q over x. Works on
// either side of the grid (the variable is the grid's own coordinate).
double amalgam_norm(const SampledSignal& f, const WindowSpec& w, Exponent p, Exponent q,
                    StftLattice lattice = {});
// The local norms themselves, one per lattice position.
std::vector<double> amalgam_profile(const SampledSignal& f, const WindowSpec& w, Exponent p,
                                    StftLattice lattice = {});

// Uniform frequency partition: phi(xi) = B(xi) / sum_m B(xi - m), B(xi) = (1 - xi^2)^3_+,
// tensorized in d = 2. sum_m phi(xi - m) = 1 by construction.
double partition_bump(double xi);
double partition_phi(const Point& xi, int dim);

// (sum_m ||phi(D - m) f||_{L^p}^q)^{1/q}
double block_modulation_norm(const SampledSignal& f, Exponent p, Exponent q);

} // namespace tfm::gabor
