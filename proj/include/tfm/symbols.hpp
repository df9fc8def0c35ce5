#pragma once

#include "tfm/generators.hpp"
#include "tfm/grid.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tfm::symbols {

enum class PhaseFamily { power_abs, schrodinger_t, bracket_power, fresnel_osc, custom_table };

std::string_view to_string(PhaseFamily f);
PhaseFamily parse_phase_family(std::string_view s);

// Values of a tabulated phase; evaluation off the nodes interpolates
// linearly (d = 1 only).
struct PhaseTable {
    GridSpec grid;
    std::vector<double> values;
};

// mu(xi), scaled by `scale`:
//   power_abs      scale * |xi|^alpha
//   schrodinger_t  scale * |xi|^2          (scale plays the role of t)
//   bracket_power  scale * <xi>^alpha
//   fresnel_osc    scale * m(xi), m'' = cos(xi^2), m(0) = m'(0) = 0   (d = 1)
//   custom_table   scale * table
struct PhaseSpec {
    PhaseFamily family = PhaseFamily::power_abs;
    double alpha = 2.0;
    double scale = 1.0;
    std::shared_ptr<const PhaseTable> table;

    static PhaseSpec power_abs(double alpha, double c = 1.0);
    static PhaseSpec schrodinger(double t);
    static PhaseSpec bracket_power(double alpha);
    static PhaseSpec fresnel();
    static PhaseSpec custom(GridSpec grid, std::vector<double> values);

    PhaseSpec scaled(double s) const;
    std::string describe() const;
};

// mu at the coordinates of the given grid (any side). fresnel_osc uses the
// cumulative node-to-node quadrature.
std::vector<double> phase_at(const PhaseSpec& spec, const GridSpec& grid);
// Same as phase_at, for frequency-side grids only.
std::vector<double> phase_eval(const PhaseSpec& spec, const GridSpec& grid);
// mu(lambda * xi) at the nodes of a frequency grid.
std::vector<double> phase_eval_dilated(const PhaseSpec& spec, const GridSpec& grid, double lambda);
// mu at a single point (fresnel_osc integrates from 0, cost grows like xi^2).
double phase_value(const PhaseSpec& spec, const Point& xi, int dim);

// Second antiderivative of cos(s^2) from 0, and its first derivative, on the
// uniform nodes 0, h, 2h, ..., (count-1)h.
struct FresnelNodes {
    std::vector<double> value;
    std::vector<double> slope;
};
FresnelNodes fresnel_nodes(double h, std::size_t count);

// sup over nodes of <xi>^{2-alpha} |d^2 mu| by five-point differences;
// bounded for the power families with matching alpha.
double second_derivative_growth(const PhaseSpec& spec, const GridSpec& grid, double alpha);

struct SymbolDescriptor {
    std::string label;
    double delta = 0.0;
    std::optional<int> dyadic_index;
    double sup_bound = 1.0;
};

class SymbolTable {
public:
    SymbolTable(GridSpec grid, std::vector<Complex> values, SymbolDescriptor descriptor);

    const GridSpec& grid() const { return grid_; }
    const std::vector<Complex>& values() const { return values_; }
    const SymbolDescriptor& descriptor() const { return descriptor_; }
    Complex operator[](std::size_t i) const { return values_[i]; }
    double sup() const;

private:
    GridSpec grid_;
    std::vector<Complex> values_;
    SymbolDescriptor descriptor_;
};

// Symbol from a closed form on a frequency grid; sup bound measured.
SymbolTable make_symbol(const GridSpec& grid, const PointFunction& fn, std::string label);
SymbolTable constant_symbol(const GridSpec& grid, Complex c);
// e^{i mu(xi)} <xi>^{-delta}
SymbolTable unimodular_symbol(const PhaseSpec& phase, double delta, const GridSpec& grid);
// Pointwise product, descriptor bounds multiply.
SymbolTable multiply(const SymbolTable& a, const SymbolTable& b);
// i.i.d. uniform phases; moduli uniform in [0, 1] or exactly 1.
SymbolTable random_bounded_symbol(const GridSpec& grid, std::uint64_t seed, bool unimodular = false);

// inverse_ft(sigma * forward_ft(f))
SampledSignal apply_multiplier(const SymbolTable& sigma, const SampledSignal& f);
// <D>^t f
SampledSignal bessel_potential(const SampledSignal& f, double t);

// mu = psi1 + psi2 with psi1 the first-order Taylor polynomial at 0.
struct TaylorSplit {
    std::vector<double> affine;
    std::vector<double> remainder;
    // max over nodes with |xi| <= R of |integral form - remainder|
    double integral_mismatch = 0.0;
};
TaylorSplit taylor_split(const PhaseSpec& phase, double radius, const GridSpec& grid);
// sum_{|g|=2} (2/g!) int_0^1 (1-t) d^g mu(t x) dt x^g, derivatives by
// five-point differences with step h, t-integral by adaptive Gauss-Kronrod.
double taylor_integral_remainder(const PhaseSpec& phase, const Point& x, int dim, double h);

// g_{x0}(x) = chi(x - x0) int_0^1 (1 - t) f(t(x - x0) + x0) dt with 64-node
// Gauss-Legendre; x0 must be on the grid.
SampledSignal averaged_dilate(const PointFunction& f, const SampledSignal& chi, const Point& x0);

// Smooth compactly supported bump exp(1 - 1/(1 - |t/r|^2)), 1 at the origin.
double bump(const Point& t, int dim, double radius);

} // namespace tfm::symbols
