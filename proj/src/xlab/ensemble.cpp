#include "tfm/xlab/ensemble.hpp"

#include "tfm/errors.hpp"

#include <cmath>
#include <random>

namespace tfm::xlab {

namespace {

bool fits(const GeneratorSpec& s, const GridSpec& g) {
    try {
        check_fits(s, g);
        return true;
    } catch (const GuardError&) {
        return false;
    }
}

GeneratorSpec packet(int k) {
    GeneratorSpec s;
    s.kind = GeneratorKind::wave_packet;
    s.shell = k; // the generator places the carrier at 2^k and scales the envelope
    return s;
}

} // namespace

int max_wave_packet_shell(const GridSpec& grid) {
    int k = 0;
    while (k < 30 && fits(packet(k + 1), grid))
        ++k;
    return k;
}

EnsembleSpec default_ensemble(const GridSpec& grid, std::uint64_t seed, int max_shell) {
    EnsembleSpec e;
    e.grid = grid;
    e.seed = seed;
    const int d = grid.dim;

    GeneratorSpec g;
    e.members.push_back({"gaussian", g});

    GeneratorSpec chirp;
    chirp.kind = GeneratorKind::chirp;
    chirp.chirp_rate = 1.0;
    e.members.push_back({"chirp", chirp});

    GeneratorSpec box;
    box.kind = GeneratorKind::smoothed_box;
    e.members.push_back({"smoothed_box", box});

    // Seeded time-frequency shifts, rounded to 1/8 so they print cleanly.
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng](double lo, double hi) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::round((lo + (hi - lo) * u) * 8.0) / 8.0;
    };
    const double xr = grid.extent / 8.0, fr = grid.nyquist() / 4.0;
    for (int m = 1; m <= 2; ++m) {
        GeneratorSpec s;
        for (int a = 0; a < d; ++a) {
            s.center[a] = uniform(-xr, xr);
            s.frequency[a] = uniform(-fr, fr);
        }
        e.members.push_back({"modulated_gaussian_" + std::to_string(m), s});
    }

    GeneratorSpec bl;
    bl.kind = GeneratorKind::band_limited_window;
    if (fits(bl, grid))
        e.members.push_back({"band_limited_window", bl});

    int K = max_wave_packet_shell(grid);
    if (max_shell >= 0)
        K = std::min(K, max_shell);
    for (int k = 1; k <= K; ++k)
        e.members.push_back({"wave_packet_" + std::to_string(k), packet(k)});
    return e;
}

GeneratorSpec normalized(GeneratorSpec spec, const GridSpec& grid) {
    spec.amplitude = 1.0;
    const double nrm = synthesize(spec, grid).l2_norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw InvalidArgument("generator has zero norm on this grid");
    spec.amplitude = 1.0 / nrm;
    return spec;
}

std::vector<EnsembleSignal> build_ensemble(const EnsembleSpec& spec) {
    if (spec.members.size() < 5)
        throw InvalidArgument("an ensemble needs at least 5 members");
    std::vector<EnsembleSignal> out;
    out.reserve(spec.members.size());
    for (const auto& m : spec.members) {
        try {
            check_fits(m.spec, spec.grid);
        } catch (const GuardError& e) {
            throw GuardError("ensemble member '" + m.id + "': " + e.what());
        }
        GeneratorSpec s = normalized(m.spec, spec.grid);
        out.push_back({m.id, s, synthesize(s, spec.grid)});
    }
    return out;
}

} // namespace tfm::xlab
