#pragma once

#include <cstdint>
#include <vector>

#include "mcis/sdp.hpp"
#include "mcis/threshold.hpp"

namespace mcis {

struct RoundingOutcome {
    std::vector<uint8_t> cut;  // side per vertex (1..n of the graph)
    double cut_weight = 0.0;   // weight of the recorded best cut
    long trials = 0;
    double best_weight = 0.0;
    double mean_weight = 0.0;
    uint64_t seed = 0;
};

/// One THRESH- trial: draw a standard Gaussian vector g, put vertex i in S
/// iff g . v_i_perp >= quantile(t(b_i)), where v_i_perp is the normalized
/// component of v_i perpendicular to v_0. Vertices with no perpendicular part
/// join S iff t(b_i) <= 1/2 (deterministic rule).
std::vector<uint8_t> thresh_minus_round(const SdpSolution& s, const ThresholdFunction& t,
                                        uint64_t seed);

/// Repeated trials with per-trial substreams of the seed; keeps the best cut
/// (ties break toward the lower trial index).
RoundingOutcome round_many(const WeightedGraph& g, const SdpSolution& s,
                           const ThresholdFunction& t, long trials, uint64_t seed);

/// Expected cut weight of the scheme: sum_e w_e * s(b_i, b_j).
double analytic_expected_cut(const WeightedGraph& g, const SdpSolution& s,
                             const ThresholdFunction& t, double tol = 1e-12);

/// Affine certificate p * (sum_e w_e (b_i + b_j)/2) + q with (p, q) from
/// pq_constants(b0). For feasible solutions the bias mean equals
/// 1 - sdp_objective, so this lower-bounds the rounding expectation whenever
/// the interval certificate holds for b0.
double certified_bound(const WeightedGraph& g, const SdpSolution& s, double b0);

}  // namespace mcis
