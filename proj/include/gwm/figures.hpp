#pragma once

// Built-in sweep data: comparison curves of the bound families on the two
// running three-party examples, the Tsallis-q residual surfaces, and the
// rank-2 witness curve.  Everything is generated from the example state
// specs, never from hand-typed measure values, so the tables double as an
// end-to-end exercise of the state/measure/bound stack.

#include <cmath>
#include <cstddef>
#include <vector>

#include "gwm/bounds.hpp"
#include "gwm/gw_states.hpp"
#include "gwm/measures.hpp"

namespace gwm {

/// Closed-form three-party data of a partitioned W-class state, with party 0
/// singled out as A: pair values C_a(AB), C_a(AC) and one-vs-rest C_a(A|BC).
struct ThreePartyValues {
    PartyWeights weights;
    double ca_ab = 0.0;
    double ca_ac = 0.0;
    double ca_rest = 0.0;
};

/// First running example: four qubits carrying amplitudes
/// sqrt(1/2), 0.5, 0.4, 0.3 on sites 1..4; the figures trace site 4 and keep
/// singleton parties {1}, {2}, {3}.
inline GWStateSpec example1_spec() {
    GWStateSpec spec;
    spec.d = 2;
    spec.n = 4;
    spec.coeffs = {{1, 1, cplx(std::sqrt(0.5), 0.0)},
                   {2, 1, cplx(0.5, 0.0)},
                   {3, 1, cplx(0.4, 0.0)},
                   {4, 1, cplx(0.3, 0.0)}};
    return spec;
}

/// Second running example: three qubits with amplitudes (1, 1, 2)/sqrt(6).
inline GWStateSpec example2_spec() {
    GWStateSpec spec;
    spec.d = 2;
    spec.n = 3;
    const double s6 = 1.0 / std::sqrt(6.0);
    spec.coeffs = {{1, 1, cplx(s6, 0.0)},
                   {2, 1, cplx(s6, 0.0)},
                   {3, 1, cplx(2.0 * s6, 0.0)}};
    return spec;
}

/// Singleton parties {1}, {2}, {3}; any further site is traced out.
inline Partition three_singleton_partition() {
    Partition part;
    part.parties = {{1}, {2}, {3}};
    return part;
}

inline ThreePartyValues three_party_values(const GWStateSpec& spec,
                                           const Partition& part) {
    ThreePartyValues v;
    v.weights = party_weights(spec, part);
    v.ca_ab = coa_pair_gw(v.weights, 0, 1);
    v.ca_ac = coa_pair_gw(v.weights, 0, 2);
    v.ca_rest = coa_one_vs_rest_gw(v.weights, 0);
    return v;
}

inline ThreePartyValues example1_values() {
    return three_party_values(example1_spec(), three_singleton_partition());
}

inline ThreePartyValues example2_values() {
    return three_party_values(example2_spec(), three_singleton_partition());
}

/// Alpha-family comparison on example 1: columns lhs + five bounds over
/// alpha in [2, 5] by default, with gamma = 2, omega = 1, l = 1.3,
/// delta = 1.3; range and fixed parameters are overridable.
inline SweepTable fig1_table(std::size_t points = 61, double alpha_lo = 2.0,
                             double alpha_hi = 5.0, double gamma = 2.0,
                             double omega = 1.0, double ell = 1.3,
                             double delta = 1.3) {
    const ThreePartyValues v = example1_values();
    const std::vector<double> pairs{v.ca_ab, v.ca_ac};
    const std::vector<double> tails{v.ca_rest, v.ca_ac};
    SweepTable tab;
    tab.columns = {"alpha", "lhs", "thm1", "xhlf_a", "jzx_b", "jzx_a", "zxn"};
    for (double alpha : linspace(alpha_lo, alpha_hi, points)) {
        BoundParams prm;
        prm.alpha = alpha;
        prm.gamma = gamma;
        prm.omega = {omega};
        prm.ell = {ell};
        prm.delta = {delta};
        tab.rows.push_back(
            {alpha, std::pow(v.ca_rest, alpha),
             thm1_bound(v.ca_ab, v.ca_ac, prm).rhs,
             prior_bounds(PriorFamily::xhlf_a, pairs, tails, prm).rhs,
             prior_bounds(PriorFamily::jzx_b, pairs, tails, prm).rhs,
             prior_bounds(PriorFamily::jzx_a, pairs, tails, prm).rhs,
             prior_bounds(PriorFamily::zxn, pairs, tails, prm).rhs});
    }
    return tab;
}

/// Beta-family comparison on example 2: columns lhs + five bounds over
/// beta in [0, 1.5] by default, with gamma = 3, omega = 9/8, l = 3/4,
/// k = 4/3 and the interpolated bound at p = 1/2 and p = 3/4; range and
/// fixed parameters are overridable.
inline SweepTable fig2_table(std::size_t points = 61, double beta_lo = 0.0,
                             double beta_hi = 1.5, double gamma = 3.0,
                             double omega = 9.0 / 8.0, double ell = 3.0 / 4.0,
                             double k = 4.0 / 3.0) {
    const ThreePartyValues v = example2_values();
    const std::vector<double> pairs{v.ca_ab, v.ca_ac};
    const std::vector<double> tails{v.ca_rest, v.ca_ac};
    SweepTable tab;
    tab.columns = {"beta",   "lhs", "ours_p_half", "ours_p_34",
                   "xhlf_b", "lyy", "sx"};
    for (double beta : linspace(beta_lo, beta_hi, points)) {
        BoundParams prm;
        prm.beta = beta;
        prm.gamma = gamma;
        prm.omega = {omega};
        prm.ell = {ell};
        prm.k = k;
        prm.p = 0.5;
        const double ours_half = thm3_bound(v.ca_ab, v.ca_ac, prm).rhs;
        prm.p = 0.75;
        const double ours_34 = thm3_bound(v.ca_ab, v.ca_ac, prm).rhs;
        tab.rows.push_back(
            {beta, pow_c(v.ca_rest, beta), ours_half, ours_34,
             prior_bounds(PriorFamily::xhlf_b, pairs, tails, prm).rhs,
             prior_bounds(PriorFamily::lyy, pairs, tails, prm).rhs,
             prior_bounds(PriorFamily::sx, pairs, tails, prm).rhs});
    }
    return tab;
}

namespace detail {

inline SweepTable tq_residual_surface(const PartyWeights& w, std::size_t t,
                                      double q_lo, double q_hi,
                                      std::size_t q_points, double a_lo,
                                      double a_hi, std::size_t a_points) {
    SweepTable tab;
    tab.columns = {"q", "alpha", "residual"};
    for (double q : linspace(q_lo, q_hi, q_points))
        for (double alpha : linspace(a_lo, a_hi, a_points))
            tab.rows.push_back({q, alpha, tq_monogamy_residual(w, t, q, alpha)});
    return tab;
}

} // namespace detail

/// Tsallis-q monogamy residual surface on example 2 weights, lower validity
/// interval: long-form rows (q, alpha, residual).
inline SweepTable fig3_table(std::size_t q_points = 40,
                             std::size_t a_points = 40) {
    return detail::tq_residual_surface(example2_values().weights, 0,
                                       kTsallisLowerQ, 2.0, q_points, 2.0, 5.0,
                                       a_points);
}

/// Same surface on the upper validity interval.
inline SweepTable fig4_table(std::size_t q_points = 40,
                             std::size_t a_points = 40) {
    return detail::tq_residual_surface(example2_values().weights, 0, 3.0,
                                       kTsallisUpperQ, q_points, 2.0, 5.0,
                                       a_points);
}

/// Polygamy residual bound of the rank-2 witness reduction across both
/// validity intervals; every value is expected <= 0.
inline SweepTable fig5_table(std::size_t points_per_interval = 100) {
    SweepTable tab;
    tab.columns = {"q", "residual_bound"};
    auto extend = [&](double lo, double hi) {
        for (double q : linspace(lo, hi, points_per_interval))
            tab.rows.push_back({q, tq_rank2_counterexample(q).residual_bound});
    };
    extend(kTsallisLowerQ, 2.0);
    extend(3.0, kTsallisUpperQ);
    return tab;
}

} // namespace gwm
