#include "mcis/certificate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace mcis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1-b)/(1+b), decreasing; +inf end at b = -1. Endpoint evaluations run in
// full interval arithmetic (1+b is exact by Sterbenz for b in [-1, -1/2]).
Interval bias_ratio(const Interval& b) {
    auto g_at = [](double x) {
        return (Interval(1.0) - Interval(x)) / (Interval(1.0) + Interval(x));
    };
    double hi = b.lo <= -1.0 ? kInf : g_at(b.lo).hi;
    double lo = b.hi >= 1.0 ? 0.0 : std::max(0.0, g_at(b.hi).lo);
    return {lo, hi};
}

// Quantile enclosure tolerating t touching 0 or 1 (infinite ends).
Interval quantile_enclosure(const Interval& t) {
    double lo, hi;
    if (t.lo <= 1e-300) {
        lo = -kInf;
    } else {
        double a = std::min(t.lo, 1.0 - 1e-16);  // clamping down keeps a lower bound
        lo = i_phi_inv(Interval(a)).lo;
    }
    if (t.hi >= 1.0 - 1e-16) {
        hi = kInf;
    } else {
        double b = std::max(t.hi, 1e-300);
        hi = i_phi_inv(Interval(b)).hi;
    }
    return {lo, hi};
}

struct WorkBox {
    Box2 box;
    int depth = 0;
};

bool inside(const Box2& b, double lo, double hi) {
    return b.bi.lo >= lo && b.bi.hi <= hi && b.bj.lo >= lo && b.bj.hi <= hi;
}

bool overlaps_open_square(const Box2& b, double lo, double hi) {
    return b.bi.lo < hi && b.bi.hi > lo && b.bj.lo < hi && b.bj.hi > lo;
}

}  // namespace

Interval i_rho(const Interval& bi, const Interval& bj) {
    Interval gi = bias_ratio(bi), gj = bias_ratio(bj);
    Interval prod = gi * gj;
    double lo = prod.hi >= kInf ? -1.0 : -i_sqrt(Interval(prod.hi)).hi;
    double hi = -i_sqrt(Interval(std::max(prod.lo, 0.0))).lo;
    Interval rho{std::max(lo, -1.0), std::min(hi, 0.0)};
    // The "0 otherwise" branch applies where a denominator vanishes.
    if (bi.lo <= -1.0 || bj.lo <= -1.0) rho = hull(rho, Interval(0.0));
    return rho;
}

PqIntervals i_pq_constants(const Interval& b0) {
    PqIntervals out;
    out.rho00 = i_rho(b0, b0);
    out.s0 = i_arccos(out.rho00) / pi_interval();
    // sin(pi s0) = sqrt(1 - rho00^2) because s0 in (0, 1).
    Interval sin_pis0 = i_sqrt(Interval(1.0) - i_square(out.rho00));
    Interval one_b0_sq = i_square(Interval(1.0) + b0);
    out.p = Interval(-2.0) / (one_b0_sq * pi_interval() * sin_pis0);
    out.q = -out.p * b0 + out.s0;
    return out;
}

IntervalThreshold make_interval_threshold(const ThresholdFunction& t, const Interval& b0) {
    if (t.breakpoints.size() != 7)
        throw DomainViolation("make_interval_threshold: expected 7 breakpoints");
    IntervalThreshold it;
    it.q = i_pq_constants(b0).q;
    Interval dq = it.q - Interval(t.q);  // shift of the q-dependent values
    it.pos = {Interval(-1.0), -b0,          Interval(0.0), b0 - Interval(t.r),
              b0,             b0 + Interval(t.r), Interval(1.0)};
    auto v = [&](int k) { return Interval(t.breakpoints[k].second); };
    it.val = {v(0), v(1) + dq, v(2) + 0.5 * dq, v(3), v(4), v(5), v(6) + dq};
    for (size_t k = 0; k + 1 < it.val.size(); ++k)
        if (!(it.val[k].hi < it.val[k + 1].lo))
            throw DomainViolation("make_interval_threshold: values not increasing");
    for (size_t k = 0; k + 1 < it.pos.size(); ++k)
        if (!(it.pos[k].hi < it.pos[k + 1].lo))
            throw DomainViolation("make_interval_threshold: positions overlap");
    return it;
}

Interval IntervalThreshold::eval(const Interval& b) const {
    auto point_eval = [&](double x, bool upper) {
        Interval acc{kInf, -kInf};
        bool any = false;
        for (size_t m = 0; m + 1 < pos.size(); ++m) {
            if (x < pos[m].lo || x > pos[m + 1].hi) continue;
            Interval den = pos[m + 1] - pos[m];
            Interval u = (Interval(x) - pos[m]) / den;
            u = intersect(u, Interval(0.0, 1.0));
            Interval value = val[m] + u * (val[m + 1] - val[m]);
            acc = any ? hull(acc, value) : value;
            any = true;
        }
        if (!any) throw DomainViolation("IntervalThreshold: b outside [-1, 1]");
        return upper ? acc.hi : acc.lo;
    };
    // t is increasing, so the range over [b.lo, b.hi] is spanned by endpoints.
    double lo = point_eval(std::max(b.lo, -1.0), false);
    double hi = point_eval(std::min(b.hi, 1.0), true);
    return {std::max(0.0, lo), std::min(1.0, hi)};
}

Interval i_slack(const PqIntervals& pq, const IntervalThreshold& t, const Box2& box,
                 double bvn_width) {
    Interval rho = i_rho(box.bi, box.bj);
    Interval ti = t.eval(box.bi), tj = t.eval(box.bj);
    Interval ri = quantile_enclosure(ti), rj = quantile_enclosure(tj);
    Interval lam1 = i_bvn(rho, ri, rj, bvn_width);
    Interval lam2 = i_bvn(rho, -ri, -rj, bvn_width);
    Interval s = Interval(1.0) - lam1 - lam2;
    s = intersect(s, Interval(0.0, 1.0));
    Interval affine = pq.p * ((box.bi + box.bj) / 2.0) + pq.q;
    return s - affine;
}

DerivativeEnclosure i_derivatives(const IntervalThreshold& t, const Box2& box,
                                  const Interval& ci, const Interval& cj) {
    Interval rho = i_rho(box.bi, box.bj);
    if (rho.lo <= -0.999)
        throw DomainViolation("i_derivatives: rho too close to -1 on the box");
    Interval ti = t.eval(box.bi), tj = t.eval(box.bj);
    Interval ri = i_phi_inv(ti), rj = i_phi_inv(tj);
    Interval l2 = Interval(1.0) - i_square(rho);
    Interval l = i_sqrt(l2);

    auto u_of = [](const Interval& b) { return Interval(1.0) + b; };
    // -(1+b)^4 + 2(1+b)^3 = u^3 (2 - u)
    auto root_term = [&](const Interval& b) {
        Interval u = u_of(b);
        return i_sqrt(u * i_square(u) * (Interval(2.0) - u));
    };
    Interval root_i = root_term(box.bi), root_j = root_term(box.bj);
    Interval gi = bias_ratio(box.bi), gj = bias_ratio(box.bj);
    Interval drho_i = i_sqrt(gj) / root_i;
    Interval drho_j = i_sqrt(gi) / root_j;
    Interval d2rho_ij = -(Interval(1.0) / (root_i * root_j));
    auto d2rho_diag = [&](const Interval& b, const Interval& g_other) {
        Interval u = u_of(b);
        Interval num = 2.0 * u * i_square(u) - 3.0 * i_square(u);
        Interval den = u * i_square(u) * (Interval(2.0) - u);
        return i_sqrt(g_other) * num / (den * i_sqrt(den));
    };
    Interval d2rho_ii = d2rho_diag(box.bi, gj);
    Interval d2rho_jj = d2rho_diag(box.bj, gi);

    Interval quad = i_square(ri) - 2.0 * rho * ri * rj + i_square(rj);
    Interval phirho = i_exp(-quad / (2.0 * l2)) * inv_2pi_interval() / l;
    Interval phi_ri = i_normal_pdf(ri), phi_rj = i_normal_pdf(rj);
    Interval zi = (rj - rho * ri) / l;  // argument in ds/db_i
    Interval zj = (ri - rho * rj) / l;

    // d/db of the bivariate density at (r_i, r_j): common rho-part plus the
    // moving-threshold part.
    Interval rho_part = rho / l2 + (ri * rj * l2 - rho * quad) / i_square(l2);
    Interval dphirho_i = phirho * (drho_i * rho_part + (ci / phi_ri) * (-(ri - rho * rj) / l2));
    Interval dphirho_j = phirho * (drho_j * rho_part + (cj / phi_rj) * (-(rj - rho * ri) / l2));

    DerivativeEnclosure out;
    out.grad[0] = -2.0 * (ci * i_phi(zi) + phirho * drho_i) + ci;
    out.grad[1] = -2.0 * (cj * i_phi(zj) + phirho * drho_j) + cj;

    auto second_diag = [&](const Interval& c, const Interval& phir, const Interval& z,
                           const Interval& drho, const Interval& d2rho,
                           const Interval& dphirho, const Interval& r_self) {
        Interval inner = (-rho * (c / phir) - drho * r_self) / l + z * rho * drho / l2;
        return -2.0 * (c * i_normal_pdf(z) * inner + d2rho * phirho + drho * dphirho);
    };
    out.hess[0][0] = second_diag(ci, phi_ri, zi, drho_i, d2rho_ii, dphirho_i, ri);
    out.hess[1][1] = second_diag(cj, phi_rj, zj, drho_j, d2rho_jj, dphirho_j, rj);

    auto second_mixed = [&](const Interval& c_i, const Interval& phir_other,
                            const Interval& c_other, const Interval& z,
                            const Interval& drho_other, const Interval& drho_self,
                            const Interval& dphirho_other, const Interval& r_self) {
        Interval inner =
            (c_other / phir_other - drho_other * r_self) / l + z * rho * drho_other / l2;
        return -2.0 * (c_i * i_normal_pdf(z) * inner + d2rho_ij * phirho +
                       drho_self * dphirho_other);
    };
    Interval mixed_ij = second_mixed(ci, phi_rj, cj, zi, drho_j, drho_i, dphirho_j, ri);
    Interval mixed_ji = second_mixed(cj, phi_ri, ci, zj, drho_i, drho_j, dphirho_i, rj);
    Interval mixed = intersect(mixed_ij, mixed_ji);
    out.hess[0][1] = mixed;
    out.hess[1][0] = mixed;
    return out;
}

bool hessian_pd_check(const std::array<std::array<Interval, 2>, 2>& h) {
    Interval off = intersect(h[0][1], h[1][0]);
    if (!(h[0][0].lo > 0.0)) return false;
    Interval det = h[0][0] * h[1][1] - i_square(off);
    return det.lo > 0.0;
}

namespace {

struct ShardResult {
    long boxes_checked = 0;
    int max_depth = 0;
    std::vector<Box2> failures;
    bool depth_exhausted = false;
};

struct CaseAContext {
    const PqIntervals* pq;
    const IntervalThreshold* t;
    const CertificateConfig* cfg;
    double ex_lo, ex_hi;  // exclusion square (open)
    std::vector<double> snap;  // breakpoint positions for split snapping
};

double quadrature_width(const CertificateConfig& cfg, const Box2& b) {
    double side = std::max(b.bi.width(), b.bj.width());
    return std::max(cfg.bvn_width_min, std::min(cfg.bvn_width0, side * 1e-3));
}

// Split position: snap to a threshold breakpoint strictly inside the range.
double split_point(const CaseAContext& ctx, double lo, double hi) {
    double w = hi - lo;
    for (double s : ctx.snap)
        if (s > lo + 0.05 * w && s < hi - 0.05 * w) return s;
    return 0.5 * (lo + hi);
}

void process_case_a(const CaseAContext& ctx, std::vector<WorkBox> stack, ShardResult& res) {
    const int fail_cap = 64;
    while (!stack.empty()) {
        WorkBox wb = stack.back();
        stack.pop_back();
        const Box2& b = wb.box;
        res.max_depth = std::max(res.max_depth, wb.depth);
        if (b.bi.hi + b.bj.hi < 0.0) continue;  // entirely infeasible
        if (inside(b, ctx.ex_lo, ctx.ex_hi)) continue;  // case B territory
        if (overlaps_open_square(b, ctx.ex_lo, ctx.ex_hi)) {
            // Clip against the exclusion square edge-by-edge.
            for (double edge : {ctx.ex_lo, ctx.ex_hi}) {
                if (b.bi.lo < edge && edge < b.bi.hi) {
                    stack.push_back({{{b.bi.lo, edge}, b.bj}, wb.depth});
                    stack.push_back({{{edge, b.bi.hi}, b.bj}, wb.depth});
                    goto continue_outer;
                }
                if (b.bj.lo < edge && edge < b.bj.hi) {
                    stack.push_back({{b.bi, {b.bj.lo, edge}}, wb.depth});
                    stack.push_back({{b.bi, {edge, b.bj.hi}}, wb.depth});
                    goto continue_outer;
                }
            }
        }
        {
            ++res.boxes_checked;
            Interval slack = i_slack(*ctx.pq, *ctx.t, b, quadrature_width(*ctx.cfg, b));
            if (slack.lo > 0.0) continue;
            if (slack.hi < 0.0) {
                res.failures.push_back(b);
                if (static_cast<long>(res.failures.size()) >= fail_cap) return;
                continue;
            }
            if (wb.depth >= ctx.cfg->max_depth) {
                res.failures.push_back(b);
                res.depth_exhausted = true;
                if (static_cast<long>(res.failures.size()) >= fail_cap) return;
                continue;
            }
            if (b.bi.width() >= b.bj.width()) {
                double m = split_point(ctx, b.bi.lo, b.bi.hi);
                stack.push_back({{{b.bi.lo, m}, b.bj}, wb.depth + 1});
                stack.push_back({{{m, b.bi.hi}, b.bj}, wb.depth + 1});
            } else {
                double m = split_point(ctx, b.bj.lo, b.bj.hi);
                stack.push_back({{b.bi, {b.bj.lo, m}}, wb.depth + 1});
                stack.push_back({{b.bi, {m, b.bj.hi}}, wb.depth + 1});
            }
        }
    continue_outer:;
    }
}

}  // namespace

CertificateReport verify_certificate(double b0_center, double eta,
                                     const ThresholdFunction& t,
                                     const CertificateConfig& cfg) {
    auto t_start = std::chrono::steady_clock::now();
    if (eta < 0.0 || eta > 1e-6)
        throw DomainViolation("verify_certificate: eta outside [0, 1e-6]");
    CertificateReport rep;
    rep.eta = eta;

    Interval b0{next_down(b0_center - eta), next_up(b0_center + eta)};
    PqIntervals pq = i_pq_constants(b0);
    IntervalThreshold it = make_interval_threshold(t, b0);

    // Exclusion square: the intersection over b0 candidates of [b0-r, b0+r]^2
    // (rounded inward); case B covers the hull square (rounded outward).
    double r = t.r;
    double ex_lo = next_up(b0.hi - r), ex_hi = next_down(b0.lo + r);
    double sq_lo = next_down(b0.lo - r), sq_hi = next_up(b0.hi + r);

    CaseAContext ctx;
    ctx.pq = &pq;
    ctx.t = &it;
    ctx.cfg = &cfg;
    ctx.ex_lo = ex_lo;
    ctx.ex_hi = ex_hi;
    for (const Interval& p : it.pos) ctx.snap.push_back(p.mid());

    // Initial grid over [-1, 1]^2.
    std::vector<WorkBox> roots;
    int n = cfg.initial_grid;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double alo = -1.0 + 2.0 * i / n, ahi = -1.0 + 2.0 * (i + 1) / n;
            double blo = -1.0 + 2.0 * j / n, bhi = -1.0 + 2.0 * (j + 1) / n;
            if (ahi + bhi < 0.0) continue;
            roots.push_back({{Interval(alo, ahi), Interval(blo, bhi)}, 0});
        }

    int workers = std::max(1, cfg.workers);
    std::vector<ShardResult> shard(workers);
    if (workers == 1) {
        process_case_a(ctx, roots, shard[0]);
    } else {
        std::vector<std::thread> pool;
        size_t chunk = (roots.size() + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            size_t lo = w * chunk, hi = std::min(roots.size(), lo + chunk);
            std::vector<WorkBox> part(roots.begin() + lo, roots.begin() + hi);
            pool.emplace_back([&ctx, part = std::move(part), &shard, w]() mutable {
                process_case_a(ctx, std::move(part), shard[w]);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (const auto& s : shard) {
        rep.boxes_checked += s.boxes_checked;
        rep.max_depth = std::max(rep.max_depth, s.max_depth);
        rep.depth_exhausted = rep.depth_exhausted || s.depth_exhausted;
        rep.failures.insert(rep.failures.end(), s.failures.begin(), s.failures.end());
    }

    // Case B: Hessian positive definiteness over the near square, slope 0.42
    // on both coordinates by construction of the threshold table.
    {
        Interval slope(t.mid_slope);
        std::vector<WorkBox> stack;
        int m = cfg.case_b_grid;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double alo = sq_lo + (sq_hi - sq_lo) * i / m;
                double ahi = sq_lo + (sq_hi - sq_lo) * (i + 1) / m;
                double blo = sq_lo + (sq_hi - sq_lo) * j / m;
                double bhi = sq_lo + (sq_hi - sq_lo) * (j + 1) / m;
                stack.push_back({{Interval(alo, ahi), Interval(blo, bhi)}, 0});
            }
        while (!stack.empty()) {
            WorkBox wb = stack.back();
            stack.pop_back();
            ++rep.near_case_boxes;
            DerivativeEnclosure d = i_derivatives(it, wb.box, slope, slope);
            if (hessian_pd_check(d.hess)) continue;
            if (wb.depth >= cfg.case_b_max_depth) {
                rep.failures.push_back(wb.box);
                rep.depth_exhausted = true;
                continue;
            }
            const Box2& b = wb.box;
            if (b.bi.width() >= b.bj.width()) {
                double mid = b.bi.mid();
                stack.push_back({{{b.bi.lo, mid}, b.bj}, wb.depth + 1});
                stack.push_back({{{mid, b.bi.hi}, b.bj}, wb.depth + 1});
            } else {
                double mid = b.bj.mid();
                stack.push_back({{b.bi, {b.bj.lo, mid}}, wb.depth + 1});
                stack.push_back({{b.bi, {mid, b.bj.hi}}, wb.depth + 1});
            }
        }
    }

    // Criticality at (b0, b0): ds/db_i encloses p/2 per coordinate.
    {
        DerivativeEnclosure d = i_derivatives(it, {b0, b0}, Interval(t.mid_slope),
                                              Interval(t.mid_slope));
        Interval half_p = pq.p / 2.0;
        auto contains_zero = [&](const Interval& g) {
            Interval diff = g - half_p;
            return diff.lo <= 0.0 && diff.hi >= 0.0;
        };
        rep.criticality_ok = contains_zero(d.grad[0]) && contains_zero(d.grad[1]);
    }

    std::sort(rep.failures.begin(), rep.failures.end(), [](const Box2& a, const Box2& b) {
        if (a.bi.lo != b.bi.lo) return a.bi.lo < b.bi.lo;
        return a.bj.lo < b.bj.lo;
    });
    rep.verified = rep.failures.empty() && rep.criticality_ok;
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return rep;
}

}  // namespace mcis
