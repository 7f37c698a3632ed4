#pragma once

#include <iosfwd>
#include <vector>

#include "mcis/graph.hpp"

namespace mcis {

/// Solution of the independence-constrained Max-Cut relaxation: unit vectors
/// v_0 .. v_n with v_0 pinned to the first basis direction, satisfying
/// (v_0 - v_i).(v_0 - v_j) = 0 per edge within the feasibility tolerance.
struct SdpSolution {
    int dim = 0;
    std::vector<std::vector<double>> vectors;  // n+1 rows, index 0 is v_0
    std::vector<double> biases;                // b_i = v_i . v_0 for i = 1..n

    int n() const { return static_cast<int>(vectors.size()) - 1; }
    void refresh_biases();
};

struct SolverConfig {
    double feas_tol = 1e-7;
    double obj_tol = 1e-5;
    int max_outer = 60;
    int max_inner = 400;
    uint64_t seed = 0;
    std::vector<int> warm_start_set;  // independent set override; empty = use
                                      // g.planted, else a greedy one
};

struct FeasibilityReport {
    double max_norm_violation = 0.0;   // | ||v_i||^2 - 1 |
    double max_edge_violation = 0.0;   // | (v0-vi).(v0-vj) |
    double max_bij_violation = 0.0;    // | v_i.v_j - (-1 + b_i + b_j) |
    double min_bias_sum = 0.0;         // min over edges of b_i + b_j
};

/// Low-rank augmented-Lagrangian solver over the factored Gram matrix with
/// unit-norm retraction. The integral assignment built from an independent
/// set (v_i = -v_0 on the set, v_0 off it) is always evaluated as a warm-start
/// candidate, so the returned objective is at least its incident weight minus
/// obj_tol. Deterministic for a fixed seed.
SdpSolution solve_sdp(const WeightedGraph& g, const SolverConfig& cfg = {});

/// Weighted mean of (1 - v_i.v_j)/2 over edges.
double sdp_objective(const WeightedGraph& g, const SdpSolution& s);

FeasibilityReport feasibility_report(const WeightedGraph& g, const SdpSolution& s);

/// Exactly feasible solution with v_i = -v_0 on the given independent set and
/// v_i = v_0 elsewhere; objective equals the set's incident weight.
SdpSolution integral_solution(const WeightedGraph& g, const std::vector<int>& iset);

/// Gram-matrix convex combination with the trivial all-v0 solution, with the
/// blend weight solved in closed form so the objective lands in
/// [target_obj, target_obj + 1e-9]. Throws TargetAbove if target_obj exceeds
/// the current objective.
SdpSolution blend_solution(const SdpSolution& s, const WeightedGraph& g, double target_obj);

/// Structured-text solution export: "dim", n+1 vector rows, "biases", n values.
void save_solution(const SdpSolution& s, std::ostream& out);
SdpSolution load_solution(std::istream& in);

}  // namespace mcis
