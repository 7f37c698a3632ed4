#include "mcis/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mcis/rng.hpp"

namespace mcis {

namespace {

double cut_weight_of(const WeightedGraph& g, const std::vector<uint8_t>& side) {
    double w = 0.0;
    for (const auto& e : g.edges)
        if (side[e.i] != side[e.j]) w += e.w;
    return w;
}

}  // namespace

std::vector<uint8_t> thresh_minus_round(const SdpSolution& s, const ThresholdFunction& t,
                                        uint64_t seed) {
    const int n = s.n();
    CounterRng rng(seed);
    std::vector<double> gvec(s.dim);
    for (double& x : gvec) x = rng.next_gaussian();
    std::vector<uint8_t> side(n, 0);
    for (int i = 0; i < n; ++i) {
        double b = std::clamp(s.biases[i], -1.0, 1.0);
        double tv = t(b);
        // Perpendicular part of v_i relative to v_0 (= e0 by construction,
        // but use the stored v_0 so imported solutions round correctly too).
        double perp2 = 0.0, dot = 0.0;
        for (int d = 0; d < s.dim; ++d) {
            double pd = s.vectors[i + 1][d] - b * s.vectors[0][d];
            perp2 += pd * pd;
            dot += pd * gvec[d];
        }
        double norm = std::sqrt(perp2);
        if (norm <= 1e-12) {
            side[i] = tv <= 0.5 ? 1 : 0;
            continue;
        }
        double z = dot / norm;
        double thr = tv <= 0.0   ? -std::numeric_limits<double>::infinity()
                     : tv >= 1.0 ? std::numeric_limits<double>::infinity()
                                 : std_normal_quantile(std::clamp(tv, 1e-300, 1.0 - 1e-16));
        side[i] = z >= thr ? 1 : 0;
    }
    return side;
}

RoundingOutcome round_many(const WeightedGraph& g, const SdpSolution& s,
                           const ThresholdFunction& t, long trials, uint64_t seed) {
    if (s.n() != g.n) throw DimensionMismatch("round_many: solution does not cover graph");
    RoundingOutcome out;
    out.trials = trials;
    out.seed = seed;
    out.best_weight = -1.0;
    double sum = 0.0;
    for (long k = 0; k < trials; ++k) {
        auto side = thresh_minus_round(s, t, CounterRng::substream(seed, static_cast<uint64_t>(k)).seed);
        double w = cut_weight_of(g, side);
        sum += w;
        if (w > out.best_weight) {
            out.best_weight = w;
            out.cut = side;
        }
    }
    out.mean_weight = trials > 0 ? sum / static_cast<double>(trials) : 0.0;
    out.cut_weight = out.cut.empty() ? 0.0 : cut_weight_of(g, out.cut);
    return out;
}

double analytic_expected_cut(const WeightedGraph& g, const SdpSolution& s,
                             const ThresholdFunction& t, double tol) {
    if (s.n() != g.n)
        throw DimensionMismatch("analytic_expected_cut: solution does not cover graph");
    double acc = 0.0;
    for (const auto& e : g.edges) {
        double bi = std::clamp(s.biases[e.i], -1.0, 1.0);
        double bj = std::clamp(s.biases[e.j], -1.0, 1.0);
        acc += e.w * edge_soundness(t, bi, bj, tol);
    }
    return acc;
}

double certified_bound(const WeightedGraph& g, const SdpSolution& s, double b0) {
    auto [p, q] = pq_constants(b0);
    double bias_mean = 0.0;
    for (const auto& e : g.edges)
        bias_mean += e.w * 0.5 * (s.biases[e.i] + s.biases[e.j]);
    return p * bias_mean + q;
}

}  // namespace mcis
