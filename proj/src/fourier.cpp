#include "tfm/fourier.hpp"

#include "tfm/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace tfm {

namespace detail {

namespace {

// FFTW planning is not thread-safe; execution on new arrays is. Plans are
// created once per (dim, m, sign) and kept for the life of the process.
class PlanCache {
public:
    fftw_plan get(int dim, std::size_t m, int sign) {
        const auto key = std::make_tuple(dim, m, sign);
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;
        const std::size_t total = dim == 1 ? m : m * m;
        auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        const int n = static_cast<int>(m);
        const int dir = sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan p = dim == 1 ? fftw_plan_dft_1d(n, buf, buf, dir, flags)
                               : fftw_plan_dft_2d(n, n, buf, buf, dir, flags);
        fftw_free(buf);
        if (!p)
            throw InternalError("FFTW failed to create a plan");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& plans() {
    static PlanCache cache;
    return cache;
}

// (-1)^(sum of indices): shifts the DFT to centered index ranges. With m/2
// even the residual global phase exp(-i pi m/2) is 1.
void checkerboard(std::span<Complex> data, int dim, std::size_t m) {
    if (dim == 1) {
        for (std::size_t j = 1; j < m; j += 2)
            data[j] = -data[j];
        return;
    }
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = (r & 1) ? 0 : 1; c < m; c += 2)
            data[r * m + c] = -data[r * m + c];
}

} // namespace

void centered_dft(std::span<Complex> data, int dim, std::size_t m, int sign) {
    if (m < 4 || (m & (m - 1)) != 0)
        throw InvalidArgument("centered DFT length must be a power of two >= 4");
    if (data.size() != (dim == 1 ? m : m * m))
        throw InvalidArgument("centered DFT buffer has wrong size");
    checkerboard(data, dim, m);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans().get(dim, m, sign), p, p);
    checkerboard(data, dim, m);
}

} // namespace detail

namespace {

SampledSignal transform(const SampledSignal& f, int sign, double scale) {
    const auto& g = f.grid();
    std::vector<Complex> buf(f.data());
    detail::centered_dft(buf, g.dim, g.n, sign);
    for (auto& v : buf)
        v *= scale;
    return {g.dual(), std::move(buf)};
}

} // namespace

SampledSignal forward_ft(const SampledSignal& f) {
    if (f.grid().side != Side::physical)
        throw InvalidArgument("forward_ft expects a physical-side signal");
    return transform(f, -1, f.grid().cell());
}

SampledSignal inverse_ft(const SampledSignal& F) {
    if (F.grid().side != Side::frequency)
        throw InvalidArgument("inverse_ft expects a frequency-side signal");
    return transform(F, +1, F.grid().cell());
}

SampledSignal translate_modulate(const SampledSignal& f, const Point& x0, const Point& xi0) {
    const auto& g = f.grid();
    const double h = g.spacing();
    const auto n = static_cast<long long>(g.n);
    long long shift[2] = {0, 0};
    for (int a = 0; a < g.dim; ++a) {
        const double s = x0[a] / h;
        const double r = std::round(s);
        if (std::abs(s - r) > 1e-9 * std::max(1.0, std::abs(s)))
            throw InvalidArgument("translation " + std::to_string(x0[a]) +
                                  " is not a multiple of the grid spacing");
        shift[a] = ((static_cast<long long>(r) % n) + n) % n;
    }
    const auto wrap = [n](long long i) { return static_cast<std::size_t>(((i % n) + n) % n); };
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<Complex> out(f.size());
    if (g.dim == 1) {
        for (std::size_t i = 0; i < g.n; ++i) {
            const double t = g.coordinate(i);
            out[i] = std::polar(1.0, two_pi * xi0[0] * t) *
                     f[wrap(static_cast<long long>(i) - shift[0])];
        }
    } else {
        for (std::size_t i = 0; i < g.n; ++i)
            for (std::size_t j = 0; j < g.n; ++j) {
                const double ph = xi0[0] * g.coordinate(i) + xi0[1] * g.coordinate(j);
                const std::size_t src = wrap(static_cast<long long>(i) - shift[0]) * g.n +
                                        wrap(static_cast<long long>(j) - shift[1]);
                out[i * g.n + j] = std::polar(1.0, two_pi * ph) * f[src];
            }
    }
    return {g, std::move(out)};
}

} // namespace tfm
