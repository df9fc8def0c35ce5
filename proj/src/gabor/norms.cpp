#include "kernel.hpp"

#include "tfm/errors.hpp"
#include "tfm/fourier.hpp"
#include "tfm/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace tfm::gabor {

namespace {

// |v|^p from |v|^2, with the common exponents special-cased.
double power_from_norm(double n2, double p) {
    if (p == 2.0)
        return n2;
    if (p == 1.0)
        return std::sqrt(n2);
    return std::pow(n2, 0.5 * p);
}

double lp_finish(double sum, double p) { return p == 1.0 ? sum : std::pow(sum, 1.0 / p); }

// One accumulator per distinct inner exponent.
struct InnerAccumulator {
    Exponent p;
    std::vector<double> acc;
};

std::vector<InnerAccumulator> make_accumulators(std::span<const SpaceParams> params, std::size_t bins) {
    std::vector<InnerAccumulator> accs;
    for (const auto& sp : params) {
        const bool seen = std::any_of(accs.begin(), accs.end(), [&](const auto& a) { return a.p == sp.p; });
        if (!seen)
            accs.push_back({sp.p, std::vector<double>(bins, 0.0)});
    }
    return accs;
}

void accumulate_row(std::span<const Complex> row, std::vector<InnerAccumulator>& accs) {
    for (auto& a : accs) {
        if (a.p.is_infinite()) {
            for (std::size_t k = 0; k < row.size(); ++k)
                a.acc[k] = std::max(a.acc[k], std::norm(row[k]));
        } else {
            const double p = a.p.value();
            for (std::size_t k = 0; k < row.size(); ++k)
                a.acc[k] += power_from_norm(std::norm(row[k]), p);
        }
    }
}

// Outer L^q over the frequency lattice of the inner norms.
double finish_mixed(const InnerAccumulator& acc, const SpaceParams& sp, double a_cell, double b_cell,
                    const std::function<Point(std::size_t)>& xi_point, int dim) {
    double outer = 0.0;
    for (std::size_t k = 0; k < acc.acc.size(); ++k) {
        // The weight <xi>^{delta p} sits inside the x-integral; it factors out.
        const double inner = (acc.p.is_infinite() ? std::sqrt(acc.acc[k])
                                                  : lp_finish(acc.acc[k] * a_cell, acc.p.value())) *
                             weight_eval(xi_point(k), dim, sp.delta);
        if (sp.q.is_infinite())
            outer = std::max(outer, inner);
        else
            outer += power_from_norm(inner * inner, sp.q.value());
    }
    return sp.q.is_infinite() ? outer : lp_finish(outer * b_cell, sp.q.value());
}

const InnerAccumulator& find(const std::vector<InnerAccumulator>& accs, const Exponent& p) {
    return *std::find_if(accs.begin(), accs.end(), [&](const auto& a) { return a.p == p; });
}

} // namespace

double mixed_norm(const StftMatrix& V, const SpaceParams& params) {
    if (V.values.empty())
        throw InvalidArgument("mixed_norm of an empty STFT matrix");
    const std::size_t bins = V.bins();
    const SpaceParams one[] = {params};
    auto accs = make_accumulators(one, bins);
    for (std::size_t pos = 0; pos < V.positions(); ++pos)
        accumulate_row(std::span<const Complex>(V.values.data() + pos * bins, bins), accs);
    const int d = V.grid.dim;
    const double ac = d == 1 ? V.a : V.a * V.a, bc = d == 1 ? V.b : V.b * V.b;
    return finish_mixed(accs.front(), params, ac, bc, [&](std::size_t k) { return V.xi_point(k); }, d);
}

std::vector<double> modulation_norms(const SampledSignal& f, const WindowSpec& w,
                                     std::span<const SpaceParams> params, StftLattice lattice) {
    if (f.grid().side != Side::physical)
        throw InvalidArgument("modulation norms expect a physical-side signal");
    if (params.empty())
        return {};
    const detail::StftKernel k(f, w, lattice);
    const std::size_t bins = k.bins(), rows = k.positions();
    const std::size_t chunks = (rows + detail::chunk_rows - 1) / detail::chunk_rows;
    auto total = make_accumulators(params, bins);

    const std::size_t batch = std::max<std::size_t>(1, worker_count());
    for (std::size_t c0 = 0; c0 < chunks; c0 += batch) {
        const std::size_t nb = std::min(batch, chunks - c0);
        std::vector<std::vector<InnerAccumulator>> partial(nb);
        parallel_for(nb, [&](std::size_t i) {
            auto accs = make_accumulators(params, bins);
            std::vector<Complex> row(bins);
            const std::size_t begin = (c0 + i) * detail::chunk_rows;
            const std::size_t end = std::min(rows, begin + detail::chunk_rows);
            for (std::size_t pos = begin; pos < end; ++pos) {
                k.row(pos, row, false);
                accumulate_row(row, accs);
            }
            partial[i] = std::move(accs);
        });
        for (const auto& part : partial)
            for (std::size_t j = 0; j < total.size(); ++j) {
                auto& dst = total[j].acc;
                const auto& src = part[j].acc;
                if (total[j].p.is_infinite())
                    for (std::size_t b = 0; b < bins; ++b)
                        dst[b] = std::max(dst[b], src[b]);
                else
                    for (std::size_t b = 0; b < bins; ++b)
                        dst[b] += src[b];
            }
    }

    std::vector<double> out;
    out.reserve(params.size());
    for (const auto& sp : params)
        out.push_back(finish_mixed(find(total, sp.p), sp, k.a_cell(), k.b_cell(),
                                   [&](std::size_t b) { return k.xi_point(b); }, k.dim()));
    return out;
}

double modulation_norm(const SampledSignal& f, const WindowSpec& w, const SpaceParams& params,
                       StftLattice lattice) {
    const SpaceParams one[] = {params};
    return modulation_norms(f, w, one, lattice).front();
}

std::vector<double> amalgam_profile(const SampledSignal& f, const WindowSpec& w, Exponent p,
                                    StftLattice lattice) {
    const detail::StftKernel k(f, w, lattice);
    const std::size_t bins = k.bins(), rows = k.positions();
    std::vector<double> local(rows);
    const std::size_t chunks = (rows + detail::chunk_rows - 1) / detail::chunk_rows;
    parallel_for(chunks, [&](std::size_t c) {
        std::vector<Complex> row(bins);
        const std::size_t end = std::min(rows, (c + 1) * detail::chunk_rows);
        for (std::size_t pos = c * detail::chunk_rows; pos < end; ++pos) {
            k.row(pos, row, false);
            double s = 0.0;
            if (p.is_infinite()) {
                for (const auto& v : row)
                    s = std::max(s, std::norm(v));
                local[pos] = std::sqrt(s);
            } else {
                for (const auto& v : row)
                    s += power_from_norm(std::norm(v), p.value());
                local[pos] = lp_finish(s * k.b_cell(), p.value());
            }
        }
    });
    return local;
}

double amalgam_norm(const SampledSignal& f, const WindowSpec& w, Exponent p, Exponent q,
                    StftLattice lattice) {
    const detail::StftKernel k(f, w, lattice);
    const auto local = amalgam_profile(f, w, p, lattice);
    if (q.is_infinite())
        return *std::max_element(local.begin(), local.end());
    double s = 0.0;
    for (double v : local)
        s += power_from_norm(v * v, q.value());
    return lp_finish(s * k.a_cell(), q.value());
}

double block_modulation_norm(const SampledSignal& f, Exponent p, Exponent q) {
    const auto& g = f.grid();
    if (g.side != Side::physical)
        throw InvalidArgument("block_modulation_norm expects a physical-side signal");
    const SampledSignal F = forward_ft(f);
    const GridSpec fg = F.grid();
    const long lo = static_cast<long>(std::floor(fg.coordinate(0))) - 1;
    const long hi = static_cast<long>(std::ceil(fg.coordinate(g.n - 1))) + 1;
    const int d = g.dim;

    // Enumerate integer shifts m in the box [lo, hi]^d.
    std::vector<Point> shifts;
    for (long m0 = lo; m0 <= hi; ++m0) {
        if (d == 1) {
            shifts.push_back({static_cast<double>(m0), 0.0});
            continue;
        }
        for (long m1 = lo; m1 <= hi; ++m1)
            shifts.push_back({static_cast<double>(m0), static_cast<double>(m1)});
    }

    std::vector<double> piece_norm(shifts.size(), -1.0);
    parallel_for(shifts.size(), [&](std::size_t s) {
        const Point m = shifts[s];
        std::vector<Complex> cut(F.size());
        bool any = false;
        for (std::size_t i = 0; i < cut.size(); ++i) {
            const Point xi = fg.point(i);
            const double phi = partition_phi({xi[0] - m[0], xi[1] - m[1]}, d);
            if (phi != 0.0) {
                cut[i] = phi * F[i];
                any = true;
            }
        }
        if (!any)
            return;
        const SampledSignal piece = inverse_ft(SampledSignal(fg, std::move(cut)));
        double acc = 0.0;
        for (const auto& v : piece.samples())
            acc = p.is_infinite() ? std::max(acc, std::norm(v)) : acc + power_from_norm(std::norm(v), p.value());
        piece_norm[s] = p.is_infinite() ? std::sqrt(acc) : lp_finish(acc * g.cell(), p.value());
    });

    double total = 0.0;
    for (double v : piece_norm) {
        if (v < 0.0)
            continue;
        if (q.is_infinite())
            total = std::max(total, v);
        else
            total += power_from_norm(v * v, q.value());
    }
    return q.is_infinite() ? total : lp_finish(total, q.value());
}

} // namespace tfm::gabor
