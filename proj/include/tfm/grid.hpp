#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tfm {

using Complex = std::complex<double>;

// Coordinates in R^d, d <= 2. The second component is ignored when d == 1.
using Point = std::array<double, 2>;

enum class Side { physical, frequency };

// Uniform tensor grid covering [-L/2, L/2)^d on the physical side.
// The frequency side of the same (d, n, L) has spacing 1/L and covers
// [-n/(2L), n/(2L))^d. Samples are row-major, axis 0 slowest.
struct GridSpec {
    int dim = 1;
    std::size_t n = 0;
    double extent = 0.0;
    Side side = Side::physical;

    double dx() const { return extent / static_cast<double>(n); }
    double dxi() const { return 1.0 / extent; }
    double spacing() const { return side == Side::physical ? dx() : dxi(); }
    // Riemann-sum weight of one sample (spacing^d).
    double cell() const;
    std::size_t size() const { return dim == 1 ? n : n * n; }
    // Half-width of the covered box on this grid's own side.
    double half_width() const { return 0.5 * static_cast<double>(n) * spacing(); }
    double nyquist() const { return 0.5 * static_cast<double>(n) / extent; }

    double coordinate(std::size_t i) const {
        return (static_cast<double>(i) - 0.5 * static_cast<double>(n)) * spacing();
    }
    Point point(std::size_t flat) const;

    GridSpec dual() const;
    // Same lattice (d, n, L) regardless of side.
    bool same_lattice(const GridSpec& other) const;
    std::string describe() const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

GridSpec make_grid(int d, std::size_t n, double extent, Side side = Side::physical);

// Grid with n and L both scaled by 2^k (refinement keeps Δx and grows L).
GridSpec refine(const GridSpec& g, int k);

// Immutable sampled function on a grid.
class SampledSignal {
public:
    SampledSignal(GridSpec grid, std::vector<Complex> samples);

    static SampledSignal zeros(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const Complex> samples() const { return samples_; }
    const std::vector<Complex>& data() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    Complex operator[](std::size_t i) const { return samples_[i]; }

    // (cell * sum |f|^2)^{1/2}
    double l2_norm() const;
    double max_abs() const;

private:
    GridSpec grid_;
    std::vector<Complex> samples_;
};

// Elementwise helpers used all over the experiments.
SampledSignal operator+(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator-(const SampledSignal& a, const SampledSignal& b);
SampledSignal operator*(Complex c, const SampledSignal& f);
SampledSignal pointwise_product(const SampledSignal& a, const SampledSignal& b);
double max_abs_difference(const SampledSignal& a, const SampledSignal& b);

} // namespace tfm
