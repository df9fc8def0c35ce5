#pragma once

#include "tfm/grid.hpp"
#include "tfm/symbols.hpp"

#include <vector>

namespace tfm::dyadic {

// C^4 smoothstep: 0 for u <= 0, 1 for u >= 1, nine-degree polynomial between.
double smoothstep(double u);

// Radial profiles, r = |xi|.
double psi0_profile(double r); // 1 on r <= 1, 0 on r >= 2
double psi_profile(double r);  // psi0(r) - psi0(2r), supported in [1/2, 2]
double chi_profile(double r);  // 1 on [1/2, 2], 0 outside [1/4, 4]
// psi_0 = psi0, psi_j(r) = psi(2^{-j} r); chi_j(r) = chi(2^{-j} r).
double psi_j(int j, double r);
double chi_j(int j, double r);

struct DyadicDecomposition {
    int J = 0;
    GridSpec grid;
    std::vector<std::vector<double>> psi; // j = 0..J
    std::vector<std::vector<double>> chi; // j = 0..J
};

// Requires 2^{J+1} <= Nyquist of the (frequency-side) grid.
DyadicDecomposition lp_family(int J, const GridSpec& grid);

// 2^{-(alpha-2) j / 2}
double lambda_scale(double alpha, int j);

// sigma_j = e^{i mu} psi_j <xi>^{-delta}
symbols::SymbolTable dyadic_piece_symbol(int j, const symbols::PhaseSpec& phase, double delta,
                                         const DyadicDecomposition& dec);
// chi_j as a multiplier (Lemma-4.3-type sums).
symbols::SymbolTable chi_symbol(int j, const GridSpec& grid);

struct RescaledFactors {
    double lambda = 1.0;
    symbols::SymbolTable a_symbol; // e^{i chi_j(lambda xi) mu(lambda xi)}
    symbols::SymbolTable b_symbol; // psi_j(lambda xi) <lambda xi>^{-delta}
};

// Nyquist a frequency grid needs so that psi_j(lambda_j .) is fully resolved.
double required_nyquist(int j, double alpha);
// Dedicated grid for scale j: Nyquist >= 2 * required_nyquist (safety factor 2), spacing 1/extent.
GridSpec rescaled_grid(int j, double alpha, int dim, double extent = 32.0);

RescaledFactors rescaled_factors(int j, double alpha, const symbols::PhaseSpec& phase, double delta,
                                 const GridSpec& grid);

// Finite-difference sup surrogates of the Leibniz terms for the rescaled
// phase chi_j(lambda xi) mu(lambda xi); differences are taken in xi, so the
// lambda^2 factor is built in.
struct LeibnizSurrogates {
    double chi2_mu = 0.0;    // sup |(chi_j)'' mu|
    double chi1_mu1 = 0.0;   // sup |(chi_j)' mu'|
    double chi_mu2 = 0.0;    // sup |chi_j mu''|
    double curvature = 0.0;  // sup |(chi_j mu)''|
};
LeibnizSurrogates leibniz_surrogates(int j, double alpha, const symbols::PhaseSpec& phase,
                                     const GridSpec& grid);

} // namespace tfm::dyadic
