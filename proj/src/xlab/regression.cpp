#include "tfm/xlab/estimate.hpp"

#include "tfm/errors.hpp"

#include <cmath>

namespace tfm::xlab {

AffineFit affine_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size())
        throw InvalidArgument("affine_fit: x and y differ in length");
    if (n < 2)
        throw InvalidArgument("affine_fit: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        throw InvalidArgument("affine_fit: abscissae are all equal");
    AffineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0, yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
        yy += y[i] * y[i];
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
    }
    fit.relative_residual = yy > 0.0 ? std::sqrt(ss / yy) : std::sqrt(ss);
    return fit;
}

Regression exponent_regression(std::span<const std::pair<double, double>> series) {
    if (series.size() < 3)
        throw InvalidArgument("exponent_regression needs at least 3 points");
    std::vector<double> x, y;
    for (const auto& [s, v] : series) {
        if (!(v > 0.0) || !std::isfinite(v) || !std::isfinite(s))
            throw InvalidArgument("exponent_regression needs finite positive values");
        x.push_back(s);
        y.push_back(std::log2(v));
    }
    const AffineFit f = affine_fit(x, y);
    return {f.slope, f.intercept, f.max_residual};
}

RatioEstimate estimate_operator_ratio(const symbols::SymbolTable& sigma, std::span<const EnsembleSignal> ensemble,
                                      const gabor::SpaceParams& in, const gabor::SpaceParams& out,
                                      const gabor::WindowSpec& w, gabor::StftLattice lattice) {
    if (ensemble.empty())
        throw InvalidArgument("estimate_operator_ratio: empty ensemble");
    RatioEstimate r;
    for (const auto& m : ensemble) {
        const double den = gabor::modulation_norm(m.signal, w, in, lattice);
        if (!(den > 0.0))
            throw InvalidArgument("member '" + m.id + "' has zero input norm");
        const double num = gabor::modulation_norm(symbols::apply_multiplier(sigma, m.signal), w, out, lattice);
        const double ratio = num / den;
        r.ratios.push_back(ratio);
        if (ratio > r.max_ratio || r.argmax.empty()) {
            r.max_ratio = ratio;
            r.argmax = m.id;
        }
    }
    return r;
}

} // namespace tfm::xlab
