#pragma once

#include "tfm/gabor.hpp"
#include "tfm/symbols.hpp"
#include "tfm/xlab/ensemble.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tfm::xlab {

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// OLS of log2(value) on scale_log2. Needs >= 3 points with positive values.
Regression exponent_regression(std::span<const std::pair<double, double>> series);

struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double relative_residual = 0.0; // ||y - fit||_2 / ||y||_2
    double max_residual = 0.0;
};

AffineFit affine_fit(std::span<const double> x, std::span<const double> y);

struct RatioEstimate {
    double max_ratio = 0.0;
    std::string argmax;
    std::vector<double> ratios; // per member, ensemble order
};

// Ensemble maximum of ||sigma(D) f||_out / ||f||_in: a lower bound on the operator norm.
RatioEstimate estimate_operator_ratio(const symbols::SymbolTable& sigma, std::span<const EnsembleSignal> ensemble,
                                      const gabor::SpaceParams& in, const gabor::SpaceParams& out,
                                      const gabor::WindowSpec& w, gabor::StftLattice lattice = {});

} // namespace tfm::xlab
