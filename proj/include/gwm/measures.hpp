#pragma once

// Entanglement measures: pure-state concurrence, the two-qubit concurrence
// and concurrence of assistance from spin-flip singular values, the W-class
// closed forms in terms of party weights, and the Tsallis-q entanglement
// family with its assistance variant.
//
// Closed-form conventions for a partitioned W-class state with party
// weights w_1..w_m:
//
//   pair:         C_a(P_t P_l)   = 2 sqrt(w_t w_l)
//   one-vs-rest:  C_a(P_t|rest)  = sqrt(sum_{l != t} 4 w_t w_l)
//
// Both hold verbatim for reduced states (traced sites included), which is
// what makes the bound evaluations in bounds.hpp purely arithmetic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwm/gw_states.hpp"
#include "gwm/tensor.hpp"

namespace gwm {

/// Validity domain of the polynomial identity T_q = f_q(C^2):
/// q in [(5-sqrt(13))/2, 2] union [3, (5+sqrt(13))/2].
inline constexpr double kTsallisLowerQ = 0.69722436226800535344; // (5-sqrt(13))/2
inline constexpr double kTsallisUpperQ = 4.30277563773199464656; // (5+sqrt(13))/2

inline bool tsallis_q_in_validity_domain(double q, double slack = 1e-12) {
    return (q >= kTsallisLowerQ - slack && q <= 2.0 + slack) ||
           (q >= 3.0 - slack && q <= kTsallisUpperQ + slack);
}

// ---------------------------------------------------------------------------
// Concurrence
// ---------------------------------------------------------------------------

/// Pure-state concurrence across the bipartition (sites | rest):
/// C = sqrt(2 (1 - Tr rho_A^2)) with rho_A the reduction onto `sites`
/// (1-based).  The purity is computed entrywise, so no eigensolve is needed.
inline double concurrence_pure(const StateVector& psi,
                               const std::vector<std::size_t>& sites) {
    const ComplexMatrix rho_a = reduce_density(psi, sites);
    double purity = 0.0;
    for (const cplx& z : rho_a.data)
        purity += std::norm(z);
    return std::sqrt(std::max(2.0 * (1.0 - purity), 0.0));
}

namespace detail {

/// Sum of squared moduli of all 2x2 minors of the da x db matrix stored
/// row-major in `amps`.
inline double sum_sq_minors(const std::vector<cplx>& amps, std::size_t da,
                            std::size_t db) {
    double s = 0.0;
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = i + 1; j < da; ++j)
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = k + 1; l < db; ++l)
                    s += std::norm(amps[i * db + k] * amps[j * db + l] -
                                   amps[i * db + l] * amps[j * db + k]);
    return s;
}

} // namespace detail

/// Pure-state concurrence of a bipartite vector (dims da x db).
inline double concurrence_pure_bipartite(const std::vector<cplx>& amps,
                                         std::size_t da, std::size_t db) {
    if (amps.size() != da * db)
        throw std::invalid_argument("concurrence_pure_bipartite: amplitude count " +
                                    std::to_string(amps.size()) +
                                    " does not match " + std::to_string(da) + "x" +
                                    std::to_string(db));
    double norm2 = 0.0;
    for (const cplx& z : amps)
        norm2 += std::norm(z);
    // With M the da x db amplitude matrix, (Tr rho_A)^2 - Tr rho_A^2 equals
    // 2 sum |2x2 minors of M|^2 (Cauchy-Binet), so C = 2 sqrt(sum) / |M|^2.
    // Summing squared minors avoids the 1 - purity cancellation, which loses
    // ~1e-8 of absolute accuracy near separable vectors.
    const double s = detail::sum_sq_minors(amps, da, db);
    const double n2 = std::max(norm2, 1e-300);
    return 2.0 * std::sqrt(s) / n2;
}

/// Two-qubit mixed-state concurrence max{z1 - z2 - z3 - z4, 0}.
inline double concurrence_wootters(const ComplexMatrix& rho) {
    const std::array<double, 4> z = wootters_lambdas(rho);
    return std::max(z[0] - z[1] - z[2] - z[3], 0.0);
}

/// Two-qubit concurrence of assistance z1 + z2 + z3 + z4.
inline double coa_two_qubit(const ComplexMatrix& rho) {
    const std::array<double, 4> z = wootters_lambdas(rho);
    return z[0] + z[1] + z[2] + z[3];
}

// ---------------------------------------------------------------------------
// W-class closed forms
// ---------------------------------------------------------------------------

namespace detail {

inline void check_party_index(const PartyWeights& w, std::size_t t,
                              const char* who) {
    if (t >= w.size())
        throw std::invalid_argument(std::string(who) + ": party index " +
                                    std::to_string(t) + " outside 0.." +
                                    std::to_string(w.size() ? w.size() - 1 : 0));
}

inline void check_weights(const PartyWeights& w, const char* who) {
    double sum = 0.0;
    for (double x : w) {
        if (!(x >= 0.0))
            throw std::domain_error(std::string(who) + ": negative party weight");
        sum += x;
    }
    if (sum > 1.0 + 1e-9)
        throw std::domain_error(std::string(who) + ": party weights sum to " +
                                std::to_string(sum) + " > 1");
}

} // namespace detail

/// Pair concurrence of assistance C_a(P_t P_l) = 2 sqrt(w_t w_l).
/// Party indices are 0-based here and everywhere downstream.
inline double coa_pair_gw(const PartyWeights& w, std::size_t t, std::size_t l) {
    detail::check_weights(w, "coa_pair_gw");
    detail::check_party_index(w, t, "coa_pair_gw");
    detail::check_party_index(w, l, "coa_pair_gw");
    if (t == l)
        throw std::invalid_argument("coa_pair_gw: party paired with itself");
    return 2.0 * std::sqrt(w[t] * w[l]);
}

/// One-vs-rest concurrence of assistance
/// C_a(P_t | rest) = sqrt(sum_{l != t} 4 w_t w_l).
inline double coa_one_vs_rest_gw(const PartyWeights& w, std::size_t t) {
    detail::check_weights(w, "coa_one_vs_rest_gw");
    detail::check_party_index(w, t, "coa_one_vs_rest_gw");
    double s = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l)
        if (l != t)
            s += 4.0 * w[t] * w[l];
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Tsallis-q entanglement
// ---------------------------------------------------------------------------

/// Tsallis-q entropy of a probability vector: (1 - sum p^q) / (q - 1).
/// q must be positive and away from 1 (the q -> 1 limit is out of scope).
inline double tsallis_entropy(const std::vector<double>& probs, double q) {
    if (!(q > 0.0))
        throw std::domain_error("tsallis_entropy: q must be positive, got " +
                                std::to_string(q));
    if (std::abs(q - 1.0) < 1e-12)
        throw std::domain_error("tsallis_entropy: q = 1 is excluded");
    double s = 0.0;
    for (double p : probs) {
        if (p < -1e-10)
            throw std::domain_error("tsallis_entropy: negative probability " +
                                    std::to_string(p));
        if (p > 0.0)
            s += std::pow(p, q);
    }
    return (1.0 - s) / (q - 1.0);
}

/// Tsallis-q entanglement of a pure state across (sites | rest): the
/// Tsallis-q entropy of the reduced spectrum.
inline double tsallis_pure(const StateVector& psi,
                           const std::vector<std::size_t>& sites, double q) {
    const ComplexMatrix rho_a = reduce_density(psi, sites);
    const EigenDecomposition eig = hermitian_eig(rho_a);
    std::vector<double> probs;
    probs.reserve(eig.values.size());
    for (double lam : eig.values)
        probs.push_back(std::clamp(lam, 0.0, 1.0));
    return tsallis_entropy(probs, q);
}

/// The analytic function connecting squared concurrence to Tsallis-q
/// entanglement on rank-2 reductions:
///   f_q(theta) = [1 - ((1+sqrt(1-theta))/2)^q - ((1-sqrt(1-theta))/2)^q] / (q-1).
/// theta is clamped into [0, 1] when within 1e-12 of the boundary, otherwise
/// rejected.
inline double f_q(double theta, double q) {
    if (!(q > 0.0))
        throw std::domain_error("f_q: q must be positive, got " + std::to_string(q));
    if (std::abs(q - 1.0) < 1e-12)
        throw std::domain_error("f_q: q = 1 is excluded");
    if (theta < -1e-12 || theta > 1.0 + 1e-12)
        throw std::domain_error("f_q: theta = " + std::to_string(theta) +
                                " outside [0, 1]");
    theta = std::clamp(theta, 0.0, 1.0);
    const double root = std::sqrt(1.0 - theta);
    const double hi = 0.5 * (1.0 + root);
    const double lo = 0.5 * (1.0 - root);
    const double hi_q = std::pow(hi, q);
    const double lo_q = lo > 0.0 ? std::pow(lo, q) : 0.0;
    return (1.0 - hi_q - lo_q) / (q - 1.0);
}

/// Tsallis-q entanglement of assistance for a partitioned W-class state,
/// party t vs the rest.  On this family the reduction is rank <= 2 and the
/// assistance and plain variants coincide with f_q(C_a^2); q must lie in the
/// validity window [(5-sqrt(13))/2, 2] union [3, (5+sqrt(13))/2].
inline double tqeeoa_gw(const PartyWeights& w, std::size_t t, double q) {
    if (!tsallis_q_in_validity_domain(q))
        throw std::domain_error(
            "tqeeoa_gw: q = " + std::to_string(q) +
            " outside [(5-sqrt(13))/2, 2] union [3, (5+sqrt(13))/2]");
    const double c = coa_one_vs_rest_gw(w, t);
    return f_q(std::min(c * c, 1.0), q);
}

/// Pair variant: T_q^a(P_t P_l) = f_q(C_a(P_t P_l)^2), same validity window.
inline double tqeeoa_pair_gw(const PartyWeights& w, std::size_t t,
                             std::size_t l, double q) {
    if (!tsallis_q_in_validity_domain(q))
        throw std::domain_error(
            "tqeeoa_pair_gw: q = " + std::to_string(q) +
            " outside [(5-sqrt(13))/2, 2] union [3, (5+sqrt(13))/2]");
    const double c = coa_pair_gw(w, t, l);
    return f_q(std::min(c * c, 1.0), q);
}

// ---------------------------------------------------------------------------
// Rank-2 counterexample values
// ---------------------------------------------------------------------------

/// Closed-form ingredients of the 3 (x) 2 (x) 2 witness state showing that
/// one-vs-rest Tsallis-q entanglement can fall below the sum of pair
/// assistance values when the marginal has rank 3.
struct Rank2CounterexampleValues {
    double q = 0.0;
    double lhs = 0.0;            ///< T_q(A|BC) from the (1/3,1/3,1/3) marginal
    double t_ab = 0.0;           ///< T_q^a(AB) = T_q^a(AC), from {1/3, 2/3}
    double residual_bound = 0.0; ///< lhs - 2 t_ab, <= 0 throughout
};

/// lhs = (1 - (1/3)^(q-1)) / (q-1), t_ab = (1 - (1+2^q)(1/3)^q) / (q-1),
/// residual = lhs - 2 t_ab.
inline Rank2CounterexampleValues tq_rank2_counterexample(double q) {
    if (!(q > 0.0))
        throw std::domain_error("tq_rank2_counterexample: q must be positive");
    if (std::abs(q - 1.0) < 1e-12)
        throw std::domain_error("tq_rank2_counterexample: q = 1 is excluded");
    Rank2CounterexampleValues v;
    v.q = q;
    const double third_q = std::pow(1.0 / 3.0, q);
    v.lhs = (1.0 - std::pow(1.0 / 3.0, q - 1.0)) / (q - 1.0);
    v.t_ab = (1.0 - (1.0 + std::pow(2.0, q)) * third_q) / (q - 1.0);
    v.residual_bound = v.lhs - 2.0 * v.t_ab;
    return v;
}

} // namespace gwm
