#include "mcis/gadget.hpp"

#include <algorithm>
#include <cmath>

namespace mcis {

namespace {

// Kahan summation keeps the sum-to-one and exact-marginal claims tight.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

uint32_t ipow(uint32_t base, int e) {
    uint32_t v = 1;
    while (e-- > 0) v *= base;
    return v;
}

int digit(uint32_t s, int i, int base) {
    while (i-- > 0) s /= base;
    return static_cast<int>(s % base);
}

// Probability of the ordered string pair (x, y) under the r-fold product of d.
double pair_weight(const PairDistribution& d, uint32_t x, uint32_t y, int r) {
    double w = 1.0;
    for (int i = 0; i < r; ++i) {
        w *= d(digit(x, i, d.domain_size), digit(y, i, d.domain_size));
        if (w == 0.0) return 0.0;
    }
    return w;
}

void fill_vertices(GadgetGraph& g) {
    uint32_t n = ipow(g.domain_size, g.r);
    g.vertices.clear();
    for (int p = 0; p < g.parts; ++p)
        for (uint32_t s = 0; s < n; ++s) g.vertices.push_back({p, s});
}

}  // namespace

int GadgetGraph::vertex_index(const GadgetVertex& v) const {
    uint32_t n = ipow(domain_size, r);
    return v.part * static_cast<int>(n) + static_cast<int>(v.string);
}

double GadgetGraph::total_weight() const {
    KahanSum k;
    for (const auto& [e, w] : edge_weights) k.add(w);
    return k.s;
}

void GadgetGraph::add_weight(int i, int j, double w) {
    if (w == 0.0) return;
    if (j < i) std::swap(i, j);
    edge_weights[{i, j}] += w;
}

GadgetGraph build_noisy_cube(Correlation rho, int r) {
    if (r < 1 || r > 12) throw BudgetExceeded("build_noisy_cube: r must be in [1, 12]");
    GadgetGraph g;
    g.parts = 1;
    g.r = r;
    g.domain_size = 2;
    fill_vertices(g);
    PairDistribution d = make_rho_correlated(rho);
    uint32_t n = 1u << r;
    for (uint32_t x = 0; x < n; ++x)
        for (uint32_t y = x; y < n; ++y) {
            double w = pair_weight(d, x, y, r);
            if (x != y) w *= 2.0;  // fold ordered pairs onto unordered edges
            g.add_weight(static_cast<int>(x), static_cast<int>(y), w);
        }
    return g;
}

GadgetGraph build_tripartite_cube(Correlation rho, int r) {
    if (r < 1 || r > 8) throw BudgetExceeded("build_tripartite_cube: r must be in [1, 8]");
    GadgetGraph g;
    g.parts = 3;
    g.r = r;
    g.domain_size = 2;
    fill_vertices(g);
    PairDistribution d = make_rho_correlated(rho);
    uint32_t n = 1u << r;
    // Uniform ordered pair (i, j), i != j: each of the 6 choices has mass 1/6,
    // so each unordered part pair {i, j} carries 1/3 of the string law.
    for (int pi = 0; pi < 3; ++pi)
        for (int pj = pi + 1; pj < 3; ++pj)
            for (uint32_t x = 0; x < n; ++x)
                for (uint32_t y = 0; y < n; ++y) {
                    double w = pair_weight(d, x, y, r) / 3.0;
                    int vi = pi * static_cast<int>(n) + static_cast<int>(x);
                    int vj = pj * static_cast<int>(n) + static_cast<int>(y);
                    g.add_weight(vi, vj, w);
                }
    return g;
}

GadgetGraph build_known_iset_gadget(Correlation rho, double alpha, int r) {
    if (r < 1 || r > 8) throw BudgetExceeded("build_known_iset_gadget: r must be in [1, 8]");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainViolation("build_known_iset_gadget: alpha outside [0, 1]");
    GadgetGraph g;
    g.parts = 2;
    g.r = r;
    g.domain_size = 2;
    fill_vertices(g);
    PairDistribution d = make_rho_correlated(rho);
    uint32_t n = 1u << r;
    for (uint32_t x = 0; x < n; ++x)
        for (uint32_t y = 0; y < n; ++y) {
            double w = pair_weight(d, x, y, r);
            // weight alpha across V1 x V2
            g.add_weight(static_cast<int>(x), static_cast<int>(n + y), alpha * w);
            // weight 1 - alpha inside V2 x V2 (ordered pairs folded)
            if (y >= x) {
                double wv2 = (1.0 - alpha) * w * (x == y ? 1.0 : 2.0);
                g.add_weight(static_cast<int>(n + x), static_cast<int>(n + y), wv2);
            }
        }
    return g;
}

GadgetGraph build_hidden_iset_gadget(Correlation rho, double alpha, int r) {
    if (r < 1 || r > 5) throw BudgetExceeded("build_hidden_iset_gadget: r must be in [1, 5]");
    GadgetGraph g;
    g.parts = 1;
    g.r = r;
    g.domain_size = 4;  // symbol (x, y) encoded as 2x + y
    fill_vertices(g);
    PairDistribution d = tensor_distribution(make_rho_correlated(rho), make_mu2_alpha(alpha));
    uint32_t n = ipow(4, r);
    for (uint32_t x = 0; x < n; ++x)
        for (uint32_t y = x; y < n; ++y) {
            double w = pair_weight(d, x, y, r);
            if (x != y) w *= 2.0;
            g.add_weight(static_cast<int>(x), static_cast<int>(y), w);
        }
    return g;
}

std::pair<CutAssignment, double> brute_force_max_cut(const GadgetGraph& g) {
    size_t n = g.vertices.size();
    if (n > 24) throw BudgetExceeded("brute_force_max_cut: more than 24 vertices");
    // Vertex 0's side is fixed by cut symmetry; halves the enumeration and
    // keeps the lexicographic tie-break.
    uint32_t best_mask = 0;
    double best = -1.0;
    std::vector<std::tuple<int, int, double>> edges;
    edges.reserve(g.edge_weights.size());
    for (const auto& [e, w] : g.edge_weights)
        if (e.first != e.second) edges.emplace_back(e.first, e.second, w);
    auto lex_less = [n](uint32_t a, uint32_t b) {
        for (size_t i = 0; i < n; ++i) {
            unsigned ba = (a >> i) & 1u, bb = (b >> i) & 1u;
            if (ba != bb) return ba < bb;
        }
        return false;
    };
    for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
        uint32_t full = mask << 1;  // vertex 0 stays on side 0
        KahanSum k;
        for (const auto& [i, j, w] : edges)
            if (((full >> i) ^ (full >> j)) & 1u) k.add(w);
        if (k.s > best + 1e-15 ||
            (k.s > best - 1e-15 && lex_less(full, best_mask))) {
            best = std::max(best, k.s);
            best_mask = full;
        }
    }
    CutAssignment a;
    a.member.resize(n);
    for (size_t i = 0; i < n; ++i) a.member[i] = (best_mask >> i) & 1u;
    return {a, best};
}

double cut_value(const GadgetGraph& g, const CutAssignment& a) {
    if (a.member.size() != g.vertices.size())
        throw MissingAssignment("cut_value: assignment does not cover all vertices");
    KahanSum k;
    for (const auto& [e, w] : g.edge_weights)
        if (a.member[e.first] != a.member[e.second]) k.add(w);
    return k.s;
}

std::pair<bool, double> independent_set_check(const GadgetGraph& g,
                                              const std::vector<int>& s) {
    std::vector<uint8_t> in(g.vertices.size(), 0);
    for (int v : s) in.at(static_cast<size_t>(v)) = 1;
    KahanSum crossing, internal;
    for (const auto& [e, w] : g.edge_weights) {
        int cnt = in[e.first] + in[e.second];
        if (e.first == e.second) cnt = in[e.first] ? 2 : 0;
        if (cnt == 1) crossing.add(w);
        if (cnt == 2) internal.add(w);
    }
    bool independent = internal.s == 0.0;
    return {independent, crossing.s + 2.0 * internal.s};
}

double influence(const std::vector<double>& f, int domain_size, int r, int j) {
    size_t n = ipow(domain_size, r);
    if (f.size() != n) throw DimensionMismatch("influence: table size mismatch");
    if (j < 0 || j >= r) throw DomainViolation("influence: coordinate out of range");
    uint32_t stride = ipow(domain_size, j);
    double total = 0.0;
    size_t outer = n / domain_size;
    for (size_t o = 0; o < outer; ++o) {
        // Index with coordinate j removed, re-expanded around the stride.
        size_t lowmask = o % stride;
        size_t high = o / stride;
        size_t base = high * stride * domain_size + lowmask;
        double mean = 0.0, sq = 0.0;
        for (int v = 0; v < domain_size; ++v) {
            double fv = f[base + static_cast<size_t>(v) * stride];
            mean += fv;
            sq += fv * fv;
        }
        mean /= domain_size;
        total += sq / domain_size - mean * mean;
    }
    return total / static_cast<double>(outer);
}

std::vector<double> noise_operator(const std::vector<double>& f, Correlation rho, int r) {
    if (r < 0 || r > 12) throw BudgetExceeded("noise_operator: r must be in [0, 12]");
    size_t n = size_t{1} << r;
    if (f.size() != n) throw DimensionMismatch("noise_operator: table size mismatch");
    double keep = (1.0 + rho.value) / 2.0;
    double flip = (1.0 - rho.value) / 2.0;
    std::vector<double> cur = f, next(n);
    for (int j = 0; j < r; ++j) {
        size_t stride = size_t{1} << j;
        for (size_t x = 0; x < n; ++x) {
            size_t y = x ^ stride;
            next[x] = keep * cur[x] + flip * cur[y];
        }
        std::swap(cur, next);
    }
    return cur;
}

double quasirandom_max_cut(const GadgetGraph& g, double tau) {
    size_t n = g.vertices.size();
    if (n > 20) throw BudgetExceeded("quasirandom_max_cut: more than 20 vertices");
    size_t per_part = ipow(g.domain_size, g.r);
    double best = 0.0;  // the all-zeros cut is always admissible (influences 0)
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (int p = 0; p < g.parts && ok; ++p) {
            std::vector<double> f(per_part);
            for (size_t s = 0; s < per_part; ++s)
                f[s] = (mask >> (p * per_part + s)) & 1u;
            for (int j = 0; j < g.r && ok; ++j)
                if (influence(f, g.domain_size, g.r, j) > tau + 1e-15) ok = false;
        }
        if (!ok) continue;
        CutAssignment a;
        a.member.resize(n);
        for (size_t i = 0; i < n; ++i) a.member[i] = (mask >> i) & 1u;
        best = std::max(best, cut_value(g, a));
    }
    return best;
}

}  // namespace mcis
