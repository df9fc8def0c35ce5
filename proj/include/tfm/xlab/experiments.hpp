#pragma once

#include "tfm/gabor.hpp"
#include "tfm/indices.hpp"
#include "tfm/symbols.hpp"
#include "tfm/xlab/ensemble.hpp"
#include "tfm/xlab/report.hpp"

#include <span>
#include <vector>

namespace tfm::xlab {

struct ScanOptions {
    gabor::WindowSpec window{};
    double slack = 0.0; // added to every check tolerance; negative values tighten
};

// Per member: L2 norm in, M^{p,q}_delta norm out, with Moyal/Plancherel checks.
ExperimentReport run_norm_table(const EnsembleSpec& ens, const gabor::SpaceParams& params,
                                const ScanOptions& opt = {});

// Ensemble ratios for one symbol, M^{p,q} -> M^{p,q}.
ExperimentReport run_multiplier_scan(const symbols::SymbolTable& sigma, const EnsembleSpec& ens,
                                     const gabor::SpaceParams& params, const ScanOptions& opt = {});

// Max ratio of the Schroedinger propagator e^{it|xi|^2} over the times given.
ExperimentReport run_schrodinger_scan(std::span<const double> times, const EnsembleSpec& ens,
                                      const gabor::SpaceParams& params, const ScanOptions& opt = {});

// lambda = 2^{+-j}, j = 1..j_max. Several index points share one pass over the ensemble.
std::vector<ExperimentReport> run_dilation_scans(std::span<const indices::IndexPoint> points, indices::Regime regime,
                                                 int j_max, const EnsembleSpec& ens, const ScanOptions& opt = {});
ExperimentReport run_dilation_scan(const indices::IndexPoint& pt, indices::Regime regime, int j_max,
                                   const EnsembleSpec& ens, const ScanOptions& opt = {});

struct ThresholdOptions {
    gabor::WindowSpec window{};
    gabor::Exponent q = 1.0;
    double width_exponent = -1.0; // envelope width 2^{-j e}; negative selects (alpha - 2)/2
    int refine = 0;               // doubles n and L per level
    double slack = 0.0;
};

// Packets at centre frequency 2^j against e^{i|xi|^alpha}; d = 1.
ExperimentReport run_threshold_scan(double alpha, const indices::Rational& inv_p, std::span<const double> deltas,
                                    int j_max, const ThresholdOptions& opt = {});

// Grid used for the j-th threshold packet and its image (exposed for tests).
GridSpec threshold_output_grid(double alpha, int j, double width_exponent, int refine = 0);

struct DyadicSumOptions {
    std::vector<int> J_list{4, 6, 8};
    gabor::WindowSpec window{};
    double constant_bound = 3.3; // frozen: measured ensemble sup 3.0 plus 10%
    GridSpec packet_grid = make_grid(1, 16384, 64.0);
    int packets = 6;
    double slack = 0.0;
};

// [0]: sum over j of ||chi_j(D) f||_{M^{p,1}}; [1]: M^{p,inf} norm of shell-packet sums.
std::vector<ExperimentReport> run_dyadic_sum_check(gabor::Exponent p, const EnsembleSpec& ens,
                                                   const DyadicSumOptions& opt = {});

struct ExpBoundOptions {
    std::vector<double> s_list{1, 2, 4, 8, 16, 32};
    GridSpec grid = make_grid(1, 2048, 32.0);
    double radius = 1.0; // bump support
    gabor::WindowSpec window{};
    double tolerance = 0.05;
    double slack = 0.0;
};

// ln ||chi e^{i s mu}||_{M^1} against s, with an affine fit.
ExperimentReport run_exp_bound_scan(const symbols::PhaseSpec& phase, const ExpBoundOptions& opt = {});

// Dilation exponents on a (divisions+1)^2 lattice of (1/p, 1/q).
ExperimentReport run_indices_table(int divisions, int d);

// Largest relative change of the ensemble-max ratio between matching rows.
double refinement_drift(const ExperimentReport& coarse, const ExperimentReport& fine);

} // namespace tfm::xlab
