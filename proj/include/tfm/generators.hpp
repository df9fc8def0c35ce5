#pragma once

#include "tfm/grid.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace tfm {

enum class GeneratorKind { gaussian, chirp, smoothed_box, wave_packet, band_limited_window };

std::string_view to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(std::string_view s);

// Closed-form test functions. Every kind is L2-normalized analytically except
// smoothed_box; `amplitude` multiplies the result (ensembles use it to
// normalize numerically while keeping exact point evaluation).
//
//   gaussian             G_s(t - x0) e^{2 pi i xi0.t},  G_s(t) = 2^{d/4} s^{-d/2} e^{-pi|t|^2/s^2}
//   chirp                e^{pi i c |t - x0|^2} times the gaussian above
//   smoothed_box         prod_a (erf(sqrt(pi)(u+w)/e) - erf(sqrt(pi)(u-w)/e))/2,  w = s, e = s/2
//   wave_packet          gaussian at frequency 2^k e_1 with width s 2^{2-k} (k = 0: width s, at 0)
//   band_limited_window  tensor product whose transform is cos^m(pi xi_a / 2h) on |xi_a| <= h/s,
//                        h = 1/(2 sqrt d), so the spectrum sits in the ball of radius 1/(2s)
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::gaussian;
    Point center{0.0, 0.0};
    Point frequency{0.0, 0.0};
    double width = 1.0;
    double chirp_rate = 0.0;
    int shell = 0;
    double amplitude = 1.0;
};

// Order of the cosine power in the band-limited window's spectrum. Chosen so
// spatial leakage outside the periodic box is below 1e-12 on desk grids.
inline constexpr int band_limited_order = 12;

using PointFunction = std::function<Complex(const Point&)>;

Complex evaluate(const GeneratorSpec& spec, const Point& t, int dim);
PointFunction closed_form(const GeneratorSpec& spec, int dim);

// Per-axis radii (around the origin, centers included) outside of which the
// generator and its spectrum are below ~1e-12 of their peak.
struct Footprint {
    double spatial = 0.0;
    double frequency = 0.0;
};
Footprint footprint(const GeneratorSpec& spec, int dim);

// Throws GuardError if the footprint does not fit `grid` (physical side).
void check_fits(const GeneratorSpec& spec, const GridSpec& grid, double lambda = 1.0);

SampledSignal synthesize(const GeneratorSpec& spec, const GridSpec& grid);

// U_lambda f(t) = f(lambda t), evaluated from the closed form.
SampledSignal dilate(const GeneratorSpec& spec, double lambda, const GridSpec& grid);

// Samples an arbitrary closed-form function at the grid's own coordinates.
SampledSignal tabulate(const PointFunction& fn, const GridSpec& grid);

// Shift of wave_packet members: the actual center frequency/width used.
Point wave_packet_frequency(int k, int dim);
double wave_packet_width(int k, double width);

} // namespace tfm
