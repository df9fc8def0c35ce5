#pragma once

#include "tfm/generators.hpp"
#include "tfm/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tfm::xlab {

struct Member {
    std::string id;
    GeneratorSpec spec;
};

struct EnsembleSpec {
    std::vector<Member> members;
    GridSpec grid;
    std::uint64_t seed = 0;
};

// Largest k >= 1 whose wave packet fits the grid (0 if none does).
int max_wave_packet_shell(const GridSpec& grid);

// gaussian, chirp, smoothed_box, two seeded modulated gaussians,
// the band-limited window and wave packets k = 1..K.
EnsembleSpec default_ensemble(const GridSpec& grid, std::uint64_t seed, int max_shell = -1);

struct EnsembleSignal {
    std::string id;
    GeneratorSpec spec; // amplitude set so the sampled signal has unit L2 norm
    SampledSignal signal;
};

std::vector<EnsembleSignal> build_ensemble(const EnsembleSpec& spec);

// Amplitude that gives `spec` unit discrete L2 norm on `grid`.
GeneratorSpec normalized(GeneratorSpec spec, const GridSpec& grid);

} // namespace tfm::xlab
