#pragma once

// Row-at-a-time STFT evaluation shared by the matrix builder and the
// streaming norm estimators.

#include "tfm/gabor.hpp"

#include <span>
#include <vector>

namespace tfm::gabor::detail {

class StftKernel {
public:
    StftKernel(const SampledSignal& f, const WindowSpec& w, StftLattice lattice);

    int dim() const { return dim_; }
    std::size_t x_count() const { return mx_; }
    std::size_t xi_count() const { return m_; }
    std::size_t positions() const { return dim_ == 1 ? mx_ : mx_ * mx_; }
    std::size_t bins() const { return dim_ == 1 ? m_ : m_ * m_; }
    double a() const { return a_; }
    double b() const { return b_; }
    // Riemann weights a^d and b^d.
    double a_cell() const { return dim_ == 1 ? a_ : a_ * a_; }
    double b_cell() const { return dim_ == 1 ? b_ : b_ * b_; }

    Point x_point(std::size_t pos) const;
    Point xi_point(std::size_t bin) const;

    // Fills `out` (size bins()) with V(x_pos, .). Without the phase factor
    // e^{-2 pi i xi.x_pos} the moduli are still exact.
    void row(std::size_t pos, std::span<Complex> out, bool with_phase) const;

private:
    const SampledSignal& f_;
    int dim_;
    std::size_t n_, m_, mx_, stride_;
    double h_, a_, b_;
    std::vector<double> window_; // m^d samples centered at 0
};

// Rows are processed in fixed-size chunks; chunk results are merged in chunk
// order so reductions do not depend on the number of workers.
inline constexpr std::size_t chunk_rows = 16;

} // namespace tfm::gabor::detail
