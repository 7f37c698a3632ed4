#include "mcis/sdp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mcis/rng.hpp"

namespace mcis {

namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

int solver_rank(int n) {
    int k = static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
    return std::min(n + 1, std::max(3, k));
}

// Maximal independent set, greedy by incident weight. Used as the warm-start
// candidate when the input declares nothing.
std::vector<int> greedy_independent_set(const WeightedGraph& g) {
    std::vector<double> deg(g.n, 0.0);
    for (const auto& e : g.edges) {
        deg[e.i] += e.w;
        deg[e.j] += e.w;
    }
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& e : g.edges) {
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    std::vector<uint8_t> taken(g.n, 0), blocked(g.n, 0);
    std::vector<int> iset;
    for (int v : order) {
        if (blocked[v]) continue;
        taken[v] = 1;
        iset.push_back(v);
        for (int u : adj[v]) blocked[u] = 1;
    }
    std::sort(iset.begin(), iset.end());
    return iset;
}

struct AlState {
    Matrix v;  // (n+1) x k, row 0 = v0 = e0
    std::vector<double> lambda;
    double sigma = 1.0;
};

double constraint(const Matrix& v, const Edge& e) {
    // (v0 - vi).(v0 - vj) = 1 - b_i - b_j + vi.vj
    return 1.0 - v(e.i + 1, 0) - v(e.j + 1, 0) + v.row(e.i + 1).dot(v.row(e.j + 1));
}

double objective_of(const WeightedGraph& g, const Matrix& v) {
    double s = 0.0;
    for (const auto& e : g.edges)
        s += e.w * 0.5 * (1.0 - v.row(e.i + 1).dot(v.row(e.j + 1)));
    return s;
}

double lagrangian(const WeightedGraph& g, const AlState& st) {
    double val = objective_of(g, st.v);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        double c = constraint(st.v, g.edges[e]);
        val -= st.lambda[e] * c + 0.5 * st.sigma * c * c;
    }
    return val;
}

// Riemannian gradient of the augmented Lagrangian on the product of spheres.
Matrix al_gradient(const WeightedGraph& g, const AlState& st) {
    const Matrix& v = st.v;
    Matrix grad = Matrix::Zero(v.rows(), v.cols());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        double c = constraint(v, ed);
        double mult = st.lambda[e] + st.sigma * c;
        // d/dv_i of objective term: -(w/2) v_j; of constraint: -(v0 - v_j).
        for (int sgn = 0; sgn < 2; ++sgn) {
            int a = sgn == 0 ? ed.i : ed.j;
            int b = sgn == 0 ? ed.j : ed.i;
            grad.row(a + 1) += -0.5 * ed.w * v.row(b + 1);
            grad.row(a + 1) += mult * (v.row(0) - v.row(b + 1));
        }
    }
    grad.row(0).setZero();  // v0 pinned
    for (int i = 1; i < v.rows(); ++i) {
        double radial = grad.row(i).dot(v.row(i));
        grad.row(i) -= radial * v.row(i);
    }
    return grad;
}

void retract(Matrix& v) {
    for (int i = 1; i < v.rows(); ++i) {
        double nrm = v.row(i).norm();
        if (nrm > 0.0) v.row(i) /= nrm;
    }
}

double max_violation(const WeightedGraph& g, const Matrix& v) {
    double m = 0.0;
    for (const auto& e : g.edges) m = std::max(m, std::abs(constraint(v, e)));
    return m;
}

// Projected-gradient ascent with backtracking; returns final gradient norm.
double inner_maximize(const WeightedGraph& g, AlState& st, int iters) {
    double step = 1.0 / (1.0 + st.sigma);
    double cur = lagrangian(g, st);
    for (int it = 0; it < iters; ++it) {
        Matrix grad = al_gradient(g, st);
        double gn = grad.norm();
        if (gn < 1e-12) return gn;
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            Matrix trial = st.v + step * grad;
            retract(trial);
            AlState probe = st;
            probe.v = trial;
            double val = lagrangian(g, probe);
            if (val > cur + 1e-14 * std::abs(cur)) {
                st.v = std::move(trial);
                cur = val;
                step *= 1.6;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return grad.norm();
    }
    return al_gradient(g, st).norm();
}

Matrix integral_matrix(const WeightedGraph& g, const std::vector<int>& iset, int k) {
    Matrix v = Matrix::Zero(g.n + 1, k);
    v.col(0).setOnes();
    for (int x : iset) v(x + 1, 0) = -1.0;
    return v;
}

SdpSolution from_matrix(const Matrix& v) {
    SdpSolution s;
    s.dim = static_cast<int>(v.cols());
    s.vectors.resize(v.rows());
    for (int i = 0; i < v.rows(); ++i) {
        s.vectors[i].assign(s.dim, 0.0);
        for (int d = 0; d < s.dim; ++d) s.vectors[i][d] = v(i, d);
    }
    s.refresh_biases();
    return s;
}

Matrix to_matrix(const SdpSolution& s) {
    Matrix v(static_cast<int>(s.vectors.size()), s.dim);
    for (size_t i = 0; i < s.vectors.size(); ++i)
        for (int d = 0; d < s.dim; ++d) v(static_cast<int>(i), d) = s.vectors[i][d];
    return v;
}

}  // namespace

void SdpSolution::refresh_biases() {
    biases.assign(vectors.size() - 1, 0.0);
    for (size_t i = 1; i < vectors.size(); ++i) {
        double b = 0.0;
        for (int d = 0; d < dim; ++d) b += vectors[i][d] * vectors[0][d];
        biases[i - 1] = b;
    }
}

SdpSolution integral_solution(const WeightedGraph& g, const std::vector<int>& iset) {
    return from_matrix(integral_matrix(g, iset, solver_rank(g.n)));
}

SdpSolution solve_sdp(const WeightedGraph& g, const SolverConfig& cfg) {
    if (g.n <= 0 || g.edges.empty()) throw Error("solve_sdp: empty graph");
    const int k = solver_rank(g.n);
    std::vector<int> iset = cfg.warm_start_set;
    if (iset.empty()) iset = !g.planted.empty() ? g.planted : greedy_independent_set(g);

    Matrix warm = integral_matrix(g, iset, k);
    double warm_obj = objective_of(g, warm);

    // Two starts: the integral candidate with a small tangent jitter, and a
    // bias-leaning random start. Best feasible result wins.
    CounterRng rng(cfg.seed);
    std::vector<Matrix> starts;
    {
        Matrix j = warm;
        for (int i = 1; i <= g.n; ++i)
            for (int d = 1; d < k; ++d) j(i, d) = 0.05 * rng.next_gaussian();
        retract(j);
        starts.push_back(std::move(j));
    }
    {
        Matrix rnd(g.n + 1, k);
        rnd.setZero();
        rnd.col(0).setOnes();
        for (int i = 1; i <= g.n; ++i)
            for (int d = 0; d < k; ++d) rnd(i, d) = rng.next_gaussian();
        retract(rnd);
        starts.push_back(std::move(rnd));
    }

    Matrix best = warm;
    double best_obj = warm_obj;
    for (const Matrix& start : starts) {
        AlState st;
        st.v = start;
        st.lambda.assign(g.edges.size(), 0.0);
        st.sigma = 4.0;
        double prev_viol = max_violation(g, st.v);
        for (int outer = 0; outer < cfg.max_outer; ++outer) {
            inner_maximize(g, st, cfg.max_inner);
            double viol = max_violation(g, st.v);
            for (size_t e = 0; e < g.edges.size(); ++e)
                st.lambda[e] += st.sigma * constraint(st.v, g.edges[e]);
            if (viol > 0.25 * prev_viol) st.sigma = std::min(st.sigma * 4.0, 1e9);
            prev_viol = viol;
            if (viol <= 0.1 * cfg.feas_tol && outer >= 3) break;
        }
        double viol = max_violation(g, st.v);
        double obj = objective_of(g, st.v);
        if (viol <= cfg.feas_tol && obj > best_obj) {
            best = st.v;
            best_obj = obj;
        }
    }
    return from_matrix(best);
}

double sdp_objective(const WeightedGraph& g, const SdpSolution& s) {
    if (s.n() != g.n) throw DimensionMismatch("sdp_objective: solution does not cover graph");
    double acc = 0.0;
    for (const auto& e : g.edges) {
        double dot = 0.0;
        for (int d = 0; d < s.dim; ++d) dot += s.vectors[e.i + 1][d] * s.vectors[e.j + 1][d];
        acc += e.w * 0.5 * (1.0 - dot);
    }
    return acc;
}

FeasibilityReport feasibility_report(const WeightedGraph& g, const SdpSolution& s) {
    FeasibilityReport rep;
    rep.min_bias_sum = g.edges.empty() ? 0.0 : 1e300;
    for (const auto& row : s.vectors) {
        double nrm2 = 0.0;
        for (double x : row) nrm2 += x * x;
        rep.max_norm_violation = std::max(rep.max_norm_violation, std::abs(nrm2 - 1.0));
    }
    for (const auto& e : g.edges) {
        double dot = 0.0;
        for (int d = 0; d < s.dim; ++d) dot += s.vectors[e.i + 1][d] * s.vectors[e.j + 1][d];
        double bi = s.biases[e.i], bj = s.biases[e.j];
        rep.max_edge_violation =
            std::max(rep.max_edge_violation, std::abs(1.0 - bi - bj + dot));
        rep.max_bij_violation =
            std::max(rep.max_bij_violation, std::abs(dot - (-1.0 + bi + bj)));
        rep.min_bias_sum = std::min(rep.min_bias_sum, bi + bj);
    }
    return rep;
}

SdpSolution blend_solution(const SdpSolution& s, const WeightedGraph& g, double target_obj) {
    double obj = sdp_objective(g, s);
    if (target_obj < 0.0) throw DomainViolation("blend_solution: negative target");
    if (target_obj > obj + 1e-12)
        throw TargetAbove("blend_solution: target exceeds current objective");
    if (obj <= 0.0 || target_obj >= obj) return s;
    // Constraints and objective are linear in the Gram matrix; the convex
    // combination lam*Gram(s) + (1-lam)*Gram(all-v0) is realized exactly by
    // appending one coordinate: w_i = [sqrt(lam) v_i, sqrt(1-lam)]. The small
    // bump keeps the measured objective on the high side of the target.
    double lam = std::min(1.0, (target_obj + 3e-14) / obj);
    double sl = std::sqrt(lam), sc = std::sqrt(1.0 - lam);
    Matrix v = to_matrix(s);
    Matrix w(v.rows(), v.cols() + 1);
    w.leftCols(v.cols()) = sl * v;
    w.col(v.cols()).setConstant(sc);
    // Rotate so the first row (v0) lands on e0: Householder reflection.
    Vector u = w.row(0).transpose();
    double nrm = u.norm();
    if (nrm > 0.0) u /= nrm;
    Vector e0 = Vector::Zero(w.cols());
    e0(0) = 1.0;
    Vector h = u - e0;
    double hn = h.norm();
    if (hn > 1e-14) {
        h /= hn;
        w -= 2.0 * (w * h) * h.transpose();
    }
    retract(w);       // absorb round-off on the unit norms
    w(0, 0) = 1.0;    // v0 exactly e0
    for (int d = 1; d < w.cols(); ++d) w(0, d) = 0.0;
    return from_matrix(w);
}

void save_solution(const SdpSolution& s, std::ostream& out) {
    out.precision(17);
    out << "dim " << s.dim << '\n';
    out << "vectors\n";
    for (const auto& row : s.vectors) {
        for (int d = 0; d < s.dim; ++d) out << (d ? " " : "") << row[d];
        out << '\n';
    }
    out << "biases\n";
    for (double b : s.biases) out << b << '\n';
}

SdpSolution load_solution(std::istream& in) {
    std::string tag;
    SdpSolution s;
    if (!(in >> tag >> s.dim) || tag != "dim" || s.dim <= 0)
        throw ParseError("expected 'dim <k>'", 1);
    if (!(in >> tag) || tag != "vectors") throw ParseError("expected 'vectors'", 2);
    std::vector<std::vector<double>> rows;
    // Rows accumulate until the 'biases' tag; count fixes n.
    std::vector<double> flat;
    while (true) {
        std::string tok;
        if (!(in >> tok)) throw ParseError("missing 'biases' section", 0);
        if (tok == "biases") break;
        flat.push_back(std::stod(tok));
    }
    if (flat.size() % s.dim != 0)
        throw ParseError("vector data not a multiple of dim", 0);
    size_t nrows = flat.size() / s.dim;
    if (nrows < 2) throw ParseError("need at least v0 and one vertex", 0);
    for (size_t i = 0; i < nrows; ++i)
        rows.emplace_back(flat.begin() + i * s.dim, flat.begin() + (i + 1) * s.dim);
    s.vectors = std::move(rows);
    s.biases.resize(nrows - 1);
    for (auto& b : s.biases)
        if (!(in >> b)) throw ParseError("missing bias values", 0);
    return s;
}

}  // namespace mcis
