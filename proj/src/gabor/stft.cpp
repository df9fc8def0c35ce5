#include "kernel.hpp"

#include "tfm/errors.hpp"
#include "tfm/fourier.hpp"
#include "tfm/parallel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tfm::gabor {

namespace detail {

StftKernel::StftKernel(const SampledSignal& f, const WindowSpec& w, StftLattice lattice)
    : f_(f), dim_(f.grid().dim), n_(f.grid().n), h_(f.grid().spacing()) {
    const auto pow2 = [](std::size_t v) { return v != 0 && (v & (v - 1)) == 0; };
    if (!pow2(lattice.x_stride) || !pow2(lattice.xi_stride))
        throw InvalidArgument("lattice strides must be powers of two");
    if (lattice.x_stride > n_ || lattice.xi_stride > n_ / 4)
        throw InvalidArgument("lattice is coarser than the grid extent");
    stride_ = lattice.x_stride;
    mx_ = n_ / stride_;
    m_ = n_ / lattice.xi_stride;
    a_ = h_ * static_cast<double>(stride_);
    b_ = 1.0 / (static_cast<double>(m_) * h_);

    const double seg_half = 0.5 * static_cast<double>(m_) * h_;
    const double r = window_radius(w, dim_);
    if (r > seg_half) {
        std::ostringstream os;
        os << "window " << w.describe() << " (radius " << r << ") does not fit the segment of half-width "
           << seg_half << "; wraparound would exceed tolerance";
        throw GuardError(os.str());
    }
    const auto g = window_generator(w);
    const std::size_t total = dim_ == 1 ? m_ : m_ * m_;
    window_.resize(total);
    const auto c = [&](std::size_t i) { return (static_cast<double>(i) - 0.5 * static_cast<double>(m_)) * h_; };
    for (std::size_t i = 0; i < total; ++i) {
        const Point t = dim_ == 1 ? Point{c(i), 0.0} : Point{c(i / m_), c(i % m_)};
        window_[i] = std::real(evaluate(g, t, dim_)); // both window kinds are real
    }
}

Point StftKernel::x_point(std::size_t pos) const {
    const auto c = [&](std::size_t i) {
        return (static_cast<double>(i * stride_) - 0.5 * static_cast<double>(n_)) * h_;
    };
    return dim_ == 1 ? Point{c(pos), 0.0} : Point{c(pos / mx_), c(pos % mx_)};
}

Point StftKernel::xi_point(std::size_t bin) const {
    const auto c = [&](std::size_t i) { return (static_cast<double>(i) - 0.5 * static_cast<double>(m_)) * b_; };
    return dim_ == 1 ? Point{c(bin), 0.0} : Point{c(bin / m_), c(bin % m_)};
}

void StftKernel::row(std::size_t pos, std::span<Complex> out, bool with_phase) const {
    const auto& s = f_.data();
    const std::size_t half = m_ / 2;
    const double cell = dim_ == 1 ? h_ : h_ * h_;
    if (dim_ == 1) {
        const std::size_t c = pos * stride_;
        for (std::size_t r = 0; r < m_; ++r)
            out[r] = s[(c + n_ + r - half) % n_] * window_[r];
    } else {
        const std::size_t c0 = (pos / mx_) * stride_, c1 = (pos % mx_) * stride_;
        for (std::size_t r0 = 0; r0 < m_; ++r0) {
            const std::size_t i0 = (c0 + n_ + r0 - half) % n_;
            for (std::size_t r1 = 0; r1 < m_; ++r1) {
                const std::size_t i1 = (c1 + n_ + r1 - half) % n_;
                out[r0 * m_ + r1] = s[i0 * n_ + i1] * window_[r0 * m_ + r1];
            }
        }
    }
    tfm::detail::centered_dft(out, dim_, m_, -1);
    if (with_phase) {
        const Point x = x_point(pos);
        for (std::size_t k = 0; k < out.size(); ++k) {
            const Point xi = xi_point(k);
            const double ph = dim_ == 1 ? xi[0] * x[0] : xi[0] * x[0] + xi[1] * x[1];
            out[k] *= cell * std::polar(1.0, -2.0 * std::numbers::pi * ph);
        }
    } else {
        for (auto& v : out)
            v *= cell;
    }
}

} // namespace detail

std::size_t StftMatrix::positions() const { return grid.dim == 1 ? x_count : x_count * x_count; }
std::size_t StftMatrix::bins() const { return grid.dim == 1 ? xi_count : xi_count * xi_count; }

Point StftMatrix::x_point(std::size_t pos) const {
    const auto c = [&](std::size_t i) {
        return (static_cast<double>(i) - 0.5 * static_cast<double>(x_count)) * a;
    };
    return grid.dim == 1 ? Point{c(pos), 0.0} : Point{c(pos / x_count), c(pos % x_count)};
}

Point StftMatrix::xi_point(std::size_t bin) const {
    const auto c = [&](std::size_t i) {
        return (static_cast<double>(i) - 0.5 * static_cast<double>(xi_count)) * b;
    };
    return grid.dim == 1 ? Point{c(bin), 0.0} : Point{c(bin / xi_count), c(bin % xi_count)};
}

StftMatrix stft(const SampledSignal& f, const WindowSpec& w, StftLattice lattice) {
    if (f.grid().side != Side::physical)
        throw InvalidArgument("stft expects a physical-side signal");
    const detail::StftKernel k(f, w, lattice);
    StftMatrix V{f.grid(), w, lattice, k.x_count(), k.xi_count(), k.a(), k.b(), {}};
    const std::size_t bins = k.bins();
    V.values.resize(k.positions() * bins);
    parallel_for(k.positions(), [&](std::size_t pos) {
        k.row(pos, std::span<Complex>(V.values.data() + pos * bins, bins), true);
    });
    return V;
}

StftMatrix stft(const SampledSignal& f, const WindowSpec& w, double a, double b) {
    return stft(f, w, lattice_from_steps(f.grid(), a, b));
}

} // namespace tfm::gabor
