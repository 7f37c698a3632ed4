#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "mcis/distributions.hpp"

namespace mcis {

/// Vertex of a gadget graph: (part id, string over Omega encoded base-|Omega|).
struct GadgetVertex {
    int part = 0;
    uint32_t string = 0;
    auto operator<=>(const GadgetVertex&) const = default;
};

/// A finite weighted gadget graph. Vertices are (part, string) labels in
/// part-major, then lexicographic string order; weights sum to 1. Pairs with
/// both endpoints equal carry the product-measure's diagonal mass; they are
/// never cut and break independence when positive.
struct GadgetGraph {
    int parts = 1;
    int r = 0;            // string dimension
    int domain_size = 2;  // |Omega|
    std::vector<GadgetVertex> vertices;
    std::map<std::pair<int, int>, double> edge_weights;  // unordered (i <= j) vertex-index pairs

    int vertex_index(const GadgetVertex& v) const;
    double total_weight() const;
    void add_weight(int i, int j, double w);
};

/// Total vertex -> side assignment.
struct CutAssignment {
    std::vector<uint8_t> member;
};

/// Single part, 2^r vertices, pair law = r-fold product of the rho-correlated
/// table from make_rho_correlated. r <= 12.
GadgetGraph build_noisy_cube(Correlation rho, int r);

/// Three parts x 2^r vertices; a uniform pair of distinct parts carries a
/// rho-correlated pair across. Each part is internally edgeless. r <= 8.
GadgetGraph build_tripartite_cube(Correlation rho, int r);

/// Two parts; with weight alpha a rho-correlated pair across V1 x V2, with
/// weight 1-alpha within V2 x V2. V1 is an independent set of incident
/// weight alpha. r <= 8.
GadgetGraph build_known_iset_gadget(Correlation rho, double alpha, int r);

/// Single part over (Omega^2)^r with pair law (mu_1(rho) (x) mu_{2,alpha})^r.
/// Symbols are (x, y) bit pairs encoded as 2x + y. The set {y-dictator = 1}
/// is independent with incident weight alpha. r <= 5.
GadgetGraph build_hidden_iset_gadget(Correlation rho, double alpha, int r);

/// Exact maximum cut by exhaustive enumeration; ties break toward the
/// lexicographically smallest assignment. Total vertex count <= 24.
std::pair<CutAssignment, double> brute_force_max_cut(const GadgetGraph& g);

/// Weight of bichromatic edges under a total assignment.
double cut_value(const GadgetGraph& g, const CutAssignment& a);

/// (is_independent, incident weight): w(S, S^c) plus 2 w(S, S); the second
/// term vanishes exactly when S is independent.
std::pair<bool, double> independent_set_check(const GadgetGraph& g,
                                              const std::vector<int>& s);

/// Influence of coordinate j on a function over Omega^r under the uniform
/// measure: expected conditional variance along coordinate j.
double influence(const std::vector<double>& f, int domain_size, int r, int j);

/// Noise operator T_rho on f over {0,1}^r: (T_rho f)(x) = E[f(y)] over
/// rho-correlated y, applied coordinatewise. r <= 12.
std::vector<double> noise_operator(const std::vector<double>& f, Correlation rho, int r);

/// Maximum cut over assignments whose per-part indicator functions all have
/// max-coordinate influence <= tau. Exhaustive filter; vertex count <= 20.
double quasirandom_max_cut(const GadgetGraph& g, double tau);

}  // namespace mcis
