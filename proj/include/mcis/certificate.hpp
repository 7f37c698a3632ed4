#pragma once

#include <array>
#include <vector>

#include "mcis/interval_gauss.hpp"
#include "mcis/threshold.hpp"

namespace mcis {

/// Axis-aligned bias box.
struct Box2 {
    Interval bi, bj;
};

/// Enclosure of rho(b_i, b_j) over a box, intersected with [-1, 0] (exact on
/// the feasible half-plane b_i + b_j >= 0). Includes the degenerate-0 branch
/// when a denominator can vanish.
Interval i_rho(const Interval& bi, const Interval& bj);

/// Threshold function with interval breakpoints, derived from a point
/// ThresholdFunction and an interval anchor b0 (the q-dependent values shift
/// with q(b0)). Positions: -1, -b0, 0, b0-r, b0, b0+r, 1.
struct IntervalThreshold {
    std::vector<Interval> pos;
    std::vector<Interval> val;
    Interval q;

    /// Value enclosure over an interval of biases (t is increasing).
    Interval eval(const Interval& b) const;
};

struct PqIntervals {
    Interval p, q, s0, rho00;
};

/// Interval version of the pq chain at interval anchor b0; sin(pi s0) is
/// rewritten as sqrt(1 - rho(b0,b0)^2) so no interval sine is needed.
PqIntervals i_pq_constants(const Interval& b0);

IntervalThreshold make_interval_threshold(const ThresholdFunction& t, const Interval& b0);

/// Enclosure of s(b_i, b_j) - (p (b_i + b_j)/2 + q) over the box. The box is
/// assumed to intersect the feasible half-plane; infeasible sub-regions only
/// widen the enclosure.
Interval i_slack(const PqIntervals& pq, const IntervalThreshold& t, const Box2& box,
                 double bvn_width = 1e-8);

struct DerivativeEnclosure {
    std::array<Interval, 2> grad;                 // ds/db_i, ds/db_j
    std::array<std::array<Interval, 2>, 2> hess;  // d2s
};

/// Appendix-style closed-form derivative enclosures of s over a box interior
/// to one linear piece of t per coordinate (slopes ci, cj).
DerivativeEnclosure i_derivatives(const IntervalThreshold& t, const Box2& box,
                                  const Interval& ci, const Interval& cj);

/// 2x2 Sylvester criterion in interval form (off-diagonals intersected).
bool hessian_pd_check(const std::array<std::array<Interval, 2>, 2>& h);

struct CertificateConfig {
    int initial_grid = 64;
    int max_depth = 40;
    double bvn_width0 = 1e-6;   // quadrature width target at depth 0
    double bvn_width_min = 1e-13;
    int case_b_grid = 8;
    int case_b_max_depth = 12;
    int workers = 1;
};

struct CertificateReport {
    bool verified = false;
    long boxes_checked = 0;
    int max_depth = 0;
    long near_case_boxes = 0;
    std::vector<Box2> failures;
    bool depth_exhausted = false;  // failures contain undecided boxes
    bool criticality_ok = false;
    double eta = 0.0;
    double runtime_seconds = 0.0;
};

/// Two-case verification of the soundness slack inequality over
/// {b_i, b_j in [-1,1], b_i + b_j >= 0} for b0 in [b0_center - eta,
/// b0_center + eta]: direct slack positivity away from the near square
/// [b0 - r, b0 + r]^2, Hessian positive-definiteness plus criticality inside
/// it. Deterministic for a fixed config.
CertificateReport verify_certificate(double b0_center, double eta,
                                     const ThresholdFunction& t,
                                     const CertificateConfig& cfg = {});

}  // namespace mcis
