#pragma once

// Monogamy-type lower bounds on powers of the concurrence of assistance for
// partitioned W-class states, plus the Tsallis-q residuals and the ordering
// chains that compare the bound families.
//
// Conventions used throughout:
//   * Every bound is a LOWER bound on the one-vs-rest quantity; a report's
//     residual is lhs - rhs, so residual >= 0 means the bound holds.
//   * The left-hand side is always computed independently from the weight
//     identity C_a(A|B_1..B_{N-1})^2 = sum_r C_a(A B_r)^2, never from the
//     bound formula itself.
//   * x^0 = 1 for every x including 0, which keeps the beta = 0 cases total.
//   * Hypotheses are evaluated with a -1e-12 slack so that exact-equality
//     corners (which several worked examples sit on) do not flap.
//
// Indexing for the chained bounds on parties {A, B_1, ..., B_{N-1}}:
//   pair_cas[r]  = C_a(A B_{r+1}),                       r = 0..N-2
//   tail_cas[r]  = C_a(A | B_{r+1} B_{r+2} ... B_{N-1}), r = 0..N-2
// so tail_cas[0] is the full one-vs-rest value and tail_cas[N-2] must equal
// pair_cas[N-2].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwm/measures.hpp"

namespace gwm {

/// Margin slack used when deciding whether a hypothesis "holds": worked
/// examples sit exactly on several hypothesis boundaries, so require only
/// margin >= -kHypothesisSlack.
inline constexpr double kHypothesisSlack = 1e-12;

/// Power with the total convention x^0 = 1 (including x = 0).
inline double pow_c(double x, double e) {
    if (e == 0.0)
        return 1.0;
    return std::pow(x, e);
}

/// Evenly spaced grid from lo to hi inclusive (n >= 2, strictly increasing).
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2)
        throw std::invalid_argument("linspace: need at least 2 points");
    if (!(hi > lo))
        throw std::invalid_argument("linspace: hi must exceed lo");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.front() = lo;
    g.back() = hi;
    return g;
}

// ---------------------------------------------------------------------------
// Report plumbing
// ---------------------------------------------------------------------------

/// One hypothesis evaluation: holds iff margin >= -kHypothesisSlack.
struct HypothesisCheck {
    std::string label;
    bool holds = false;
    double margin = 0.0;
};

/// Outcome of a bound evaluation.  residual = lhs - rhs; >= 0 means the
/// inequality holds at this point.
struct BoundReport {
    std::string family;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    std::vector<HypothesisCheck> hypotheses;

    bool hypotheses_hold() const {
        for (const HypothesisCheck& h : hypotheses)
            if (!h.holds)
                return false;
        return true;
    }
};

/// Thrown when a bound's hypotheses fail; carries every margin so callers
/// can report or resample rather than silently skip.
class hypothesis_error : public std::domain_error {
public:
    hypothesis_error(const std::string& family, std::vector<HypothesisCheck> checks)
        : std::domain_error(format(family, checks)), checks_(std::move(checks)) {}

    const std::vector<HypothesisCheck>& checks() const { return checks_; }

private:
    static std::string format(const std::string& family,
                              const std::vector<HypothesisCheck>& checks) {
        std::string msg = family + ": hypothesis failure:";
        for (const HypothesisCheck& h : checks)
            if (!h.holds)
                msg += " [" + h.label + " margin " + std::to_string(h.margin) + "]";
        return msg;
    }

    std::vector<HypothesisCheck> checks_;
};

/// Parameter bundle for the bound evaluators.  The omega/ell/delta sequences
/// are indexed per chain round; a length-1 sequence broadcasts to all rounds.
struct BoundParams {
    double alpha = 2.0; ///< exponent of the alpha-family bounds, >= gamma
    double beta = 1.0;  ///< exponent of the beta-family bounds, in [0, gamma/2]
    double gamma = 2.0; ///< base power, >= 2
    double p = 1.0;     ///< interpolation parameter, in [1/2, 1]
    double k = 1.0;     ///< parameter of the lyy family, >= ... (> 0)
    std::size_t z = 1;  ///< chain split index
    std::vector<double> omega{1.0};
    std::vector<double> ell{1.0};
    std::vector<double> delta{1.0};

    double omega_at(std::size_t r) const { return seq_at(omega, r, "omega"); }
    double ell_at(std::size_t r) const { return seq_at(ell, r, "ell"); }
    double delta_at(std::size_t r) const { return seq_at(delta, r, "delta"); }

private:
    static double seq_at(const std::vector<double>& v, std::size_t r,
                         const char* name) {
        if (v.empty())
            throw std::invalid_argument(std::string("BoundParams: empty ") + name +
                                        " sequence");
        if (v.size() == 1)
            return v[0];
        if (r >= v.size())
            throw std::invalid_argument(std::string("BoundParams: ") + name +
                                        " sequence has " + std::to_string(v.size()) +
                                        " entries, need index " + std::to_string(r));
        return v[r];
    }
};

/// Numeric table for parameter sweeps (figure data).  First column is the
/// sweep axis unless the table is long-form (fig3/fig4 style).
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

namespace detail {

inline void check_ca_value(double c, const char* who) {
    if (!(c >= 0.0) || c > 1.0 + 1e-9)
        throw std::domain_error(std::string(who) + ": concurrence value " +
                                std::to_string(c) + " outside [0, 1]");
}

/// One-vs-rest CoA of {A | B C} from the two pair values (weight identity).
inline double lhs_from_pairs(double ca_ab, double ca_ac) {
    return std::sqrt(ca_ab * ca_ab + ca_ac * ca_ac);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Lemmas
// ---------------------------------------------------------------------------

/// Margin of the power-gap comparison
///   (1+theta)^z - theta^z >= (1+tau^delta)^z - (tau^delta)^z
/// for tau >= 1, delta >= 1, theta >= tau^delta, z >= 1.
inline double lemma1_check(double theta, double tau, double delta, double z) {
    if (!(tau >= 1.0))
        throw std::domain_error("lemma1_check: tau must be >= 1, got " +
                                std::to_string(tau));
    if (!(delta >= 1.0))
        throw std::domain_error("lemma1_check: delta must be >= 1, got " +
                                std::to_string(delta));
    if (!(z >= 1.0))
        throw std::domain_error("lemma1_check: z must be >= 1, got " +
                                std::to_string(z));
    const double td = std::pow(tau, delta);
    if (!(theta >= td - 1e-12))
        throw std::domain_error("lemma1_check: theta = " + std::to_string(theta) +
                                " below tau^delta = " + std::to_string(td));
    const double lhs = std::pow(1.0 + theta, z) - std::pow(theta, z);
    const double rhs = std::pow(1.0 + td, z) - std::pow(td, z);
    return lhs - rhs;
}

/// Margin of the interpolated power-gap comparison
///   (1+x)^r - (px)^r >= (1+y)^r - (py)^r
/// for 0 <= x <= y <= 1, 1/2 <= p <= 1, 0 <= r <= 1/2.
inline double lemma2_check(double x, double y, double p, double r) {
    if (!(p >= 0.5 && p <= 1.0))
        throw std::domain_error("lemma2_check: p must lie in [1/2, 1], got " +
                                std::to_string(p));
    if (!(r >= 0.0 && r <= 0.5))
        throw std::domain_error("lemma2_check: r must lie in [0, 1/2], got " +
                                std::to_string(r));
    if (!(x >= 0.0 && x <= y && y <= 1.0))
        throw std::domain_error("lemma2_check: need 0 <= x <= y <= 1, got x = " +
                                std::to_string(x) + ", y = " + std::to_string(y));
    const double lhs = pow_c(1.0 + x, r) - pow_c(p * x, r);
    const double rhs = pow_c(1.0 + y, r) - pow_c(p * y, r);
    return lhs - rhs;
}

// ---------------------------------------------------------------------------
// Two-term bounds (three parties)
// ---------------------------------------------------------------------------

/// Alpha-family two-term bound.  With the orientation
/// C_a(AB)^gamma >= l^delta C_a(AC)^gamma (case 1; case 2 mirrored,
/// auto-selected) and admissibility
/// C_a(A|BC)^gamma >= C_big^gamma + omega C_small^gamma, returns
///   rhs = C_big^alpha + [(omega + l^delta)^(alpha/gamma)
///                        - (l^delta)^(alpha/gamma)] C_small^alpha.
/// Requires alpha >= gamma >= 2, omega >= 1, l >= 1, delta >= 1.
inline BoundReport thm1_bound(double ca_ab, double ca_ac, const BoundParams& prm) {
    detail::check_ca_value(ca_ab, "thm1_bound");
    detail::check_ca_value(ca_ac, "thm1_bound");
    const double alpha = prm.alpha, gamma = prm.gamma;
    const double omega = prm.omega_at(0), ell = prm.ell_at(0), delta = prm.delta_at(0);
    if (!(gamma >= 2.0))
        throw std::domain_error("thm1_bound: gamma must be >= 2, got " +
                                std::to_string(gamma));
    if (!(alpha >= gamma))
        throw std::domain_error("thm1_bound: alpha must be >= gamma");
    if (!(omega >= 1.0) || !(ell >= 1.0) || !(delta >= 1.0))
        throw std::domain_error("thm1_bound: omega, l, delta must all be >= 1");

    const double lhs_base = detail::lhs_from_pairs(ca_ab, ca_ac);
    const double lhs_g = std::pow(lhs_base, gamma);
    const double ld = std::pow(ell, delta);
    const double ab_g = std::pow(ca_ab, gamma);
    const double ac_g = std::pow(ca_ac, gamma);

    BoundReport rep;
    const double m1 = ab_g - ld * ac_g;
    const double m2 = ac_g - ld * ab_g;
    rep.hypotheses.push_back({"orientation case1: C_aAB^g >= l^d C_aAC^g",
                              m1 >= -kHypothesisSlack, m1});
    rep.hypotheses.push_back({"orientation case2: C_aAC^g >= l^d C_aAB^g",
                              m2 >= -kHypothesisSlack, m2});

    const bool case1 = rep.hypotheses[0].holds;
    const bool case2 = rep.hypotheses[1].holds;
    if (!case1 && !case2)
        throw hypothesis_error("thm1_bound", rep.hypotheses);

    const double big = case1 ? ca_ab : ca_ac;
    const double small = case1 ? ca_ac : ca_ab;
    const double adm = lhs_g - std::pow(big, gamma) - omega * std::pow(small, gamma);
    rep.hypotheses.push_back({"admissibility: C_a(A|BC)^g >= C_big^g + w C_small^g",
                              adm >= -kHypothesisSlack, adm});
    if (!rep.hypotheses.back().holds)
        throw hypothesis_error("thm1_bound", rep.hypotheses);

    const double coeff = std::pow(omega + ld, alpha / gamma) - std::pow(ld, alpha / gamma);
    rep.family = case1 ? "thm1(case1)" : "thm1(case2)";
    rep.lhs = std::pow(lhs_base, alpha);
    rep.rhs = std::pow(big, alpha) + coeff * std::pow(small, alpha);
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

/// Beta-family two-term bound.  With the orientation
/// C_a(AB)^gamma <= l C_a(AC)^gamma (case 1; case 2 mirrored, auto-selected)
/// and admissibility C_a(A|BC)^gamma >= C_small^gamma + omega C_big^gamma,
/// returns
///   rhs = p^(beta/gamma) C_small^beta
///       + [(omega + l)^(beta/gamma) - (p l)^(beta/gamma)] C_big^beta.
/// Requires 0 <= beta <= gamma/2, gamma >= 2, p in [1/2, 1], l in [0, 1],
/// omega >= 1.
inline BoundReport thm3_bound(double ca_ab, double ca_ac, const BoundParams& prm) {
    detail::check_ca_value(ca_ab, "thm3_bound");
    detail::check_ca_value(ca_ac, "thm3_bound");
    const double beta = prm.beta, gamma = prm.gamma, p = prm.p;
    const double omega = prm.omega_at(0), ell = prm.ell_at(0);
    if (!(gamma >= 2.0))
        throw std::domain_error("thm3_bound: gamma must be >= 2");
    if (!(beta >= 0.0 && beta <= gamma / 2.0))
        throw std::domain_error("thm3_bound: beta must lie in [0, gamma/2], got " +
                                std::to_string(beta));
    if (!(p >= 0.5 && p <= 1.0))
        throw std::domain_error("thm3_bound: p must lie in [1/2, 1], got " +
                                std::to_string(p));
    if (!(ell >= 0.0 && ell <= 1.0))
        throw std::domain_error("thm3_bound: l must lie in [0, 1], got " +
                                std::to_string(ell));
    if (!(omega >= 1.0))
        throw std::domain_error("thm3_bound: omega must be >= 1, got " +
                                std::to_string(omega));

    const double lhs_base = detail::lhs_from_pairs(ca_ab, ca_ac);
    const double lhs_g = std::pow(lhs_base, gamma);
    const double ab_g = std::pow(ca_ab, gamma);
    const double ac_g = std::pow(ca_ac, gamma);

    BoundReport rep;
    const double m1 = ell * ac_g - ab_g;
    const double m2 = ell * ab_g - ac_g;
    rep.hypotheses.push_back({"orientation case1: l C_aAC^g >= C_aAB^g",
                              m1 >= -kHypothesisSlack, m1});
    rep.hypotheses.push_back({"orientation case2: l C_aAB^g >= C_aAC^g",
                              m2 >= -kHypothesisSlack, m2});
    const bool case1 = rep.hypotheses[0].holds;
    const bool case2 = rep.hypotheses[1].holds;
    if (!case1 && !case2)
        throw hypothesis_error("thm3_bound", rep.hypotheses);

    const double small = case1 ? ca_ab : ca_ac;
    const double big = case1 ? ca_ac : ca_ab;
    const double adm =
        lhs_g - std::pow(small, gamma) - omega * std::pow(big, gamma);
    rep.hypotheses.push_back({"admissibility: C_a(A|BC)^g >= C_small^g + w C_big^g",
                              adm >= -kHypothesisSlack, adm});
    if (!rep.hypotheses.back().holds)
        throw hypothesis_error("thm3_bound", rep.hypotheses);

    const double r = beta / gamma;
    const double coeff = pow_c(omega + ell, r) - pow_c(p * ell, r);
    rep.family = case1 ? "thm3(case1)" : "thm3(case2)";
    rep.lhs = pow_c(lhs_base, beta);
    rep.rhs = pow_c(p, r) * pow_c(small, beta) + coeff * pow_c(big, beta);
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Chained bounds (N >= 4 parties)
// ---------------------------------------------------------------------------

namespace detail {

inline void check_chain_sizes(const std::vector<double>& pair_cas,
                              const std::vector<double>& tail_cas,
                              std::size_t z, const char* who) {
    const std::size_t n_pairs = pair_cas.size();
    if (n_pairs < 3)
        throw std::invalid_argument(std::string(who) +
                                    ": need at least 3 pair values (N >= 4)");
    if (tail_cas.size() != n_pairs)
        throw std::invalid_argument(std::string(who) + ": tail_cas has " +
                                    std::to_string(tail_cas.size()) +
                                    " entries, expected " + std::to_string(n_pairs));
    if (z < 1 || z > n_pairs - 2)
        throw std::invalid_argument(std::string(who) + ": split index z = " +
                                    std::to_string(z) + " outside 1.." +
                                    std::to_string(n_pairs - 2));
    for (double c : pair_cas)
        check_ca_value(c, who);
    for (double c : tail_cas)
        check_ca_value(c, who);
    if (std::abs(tail_cas.back() - pair_cas.back()) > 1e-9)
        throw std::invalid_argument(std::string(who) +
                                    ": last tail must equal last pair (C_a(A|B_{N-1})"
                                    " = C_a(AB_{N-1}))");
}

/// Hypothesis chain shared by the two chained theorems: for rounds
/// r = 1..z (pair-dominant side)
///     C_a(AB_r)^g >= l_r^d_r C_a(A|B_{r+1}..)^g
///     C_a(A|B_r..)^g >= C_a(AB_r)^g + w_r C_a(A|B_{r+1}..)^g
/// and for rounds r = z+1..N-2 (tail-dominant side)
///     C_a(A|B_{r+1}..)^g >= l_r^d_r C_a(AB_r)^g
///     C_a(A|B_r..)^g >= w_r C_a(AB_r)^g + C_a(A|B_{r+1}..)^g.
inline std::vector<HypothesisCheck> chain_hypotheses(
    const std::vector<double>& pair_cas, const std::vector<double>& tail_cas,
    const BoundParams& prm) {
    const std::size_t rounds = pair_cas.size() - 1; // N-2
    const double gamma = prm.gamma;
    std::vector<HypothesisCheck> checks;
    checks.reserve(2 * rounds);
    for (std::size_t r = 1; r <= rounds; ++r) {
        const double lr = prm.ell_at(r - 1);
        const double dr = prm.delta_at(r - 1);
        const double wr = prm.omega_at(r - 1);
        if (!(lr >= 1.0) || !(dr >= 1.0) || !(wr >= 1.0))
            throw std::domain_error("chain hypotheses: omega, l, delta must be >= 1 "
                                    "at round " + std::to_string(r));
        const double ld = std::pow(lr, dr);
        const double pair_g = std::pow(pair_cas[r - 1], gamma);
        const double tail_g = std::pow(tail_cas[r], gamma);
        const double head_g = std::pow(tail_cas[r - 1], gamma);
        const std::string tag = "round " + std::to_string(r);
        if (r <= prm.z) {
            const double mo = pair_g - ld * tail_g;
            const double ma = head_g - pair_g - wr * tail_g;
            checks.push_back({tag + " orientation: pair^g >= l^d tail^g",
                              mo >= -kHypothesisSlack, mo});
            checks.push_back({tag + " admissibility: head^g >= pair^g + w tail^g",
                              ma >= -kHypothesisSlack, ma});
        } else {
            const double mo = tail_g - ld * pair_g;
            const double ma = head_g - wr * pair_g - tail_g;
            checks.push_back({tag + " orientation: tail^g >= l^d pair^g",
                              mo >= -kHypothesisSlack, mo});
            checks.push_back({tag + " admissibility: head^g >= w pair^g + tail^g",
                              ma >= -kHypothesisSlack, ma});
        }
    }
    return checks;
}

inline void require_all(const std::string& family,
                        const std::vector<HypothesisCheck>& checks) {
    for (const HypothesisCheck& h : checks)
        if (!h.holds)
            throw hypothesis_error(family, checks);
}

} // namespace detail

/// Alpha-family chained bound over parties {A, B_1..B_{N-1}} with split z:
///   rhs = C_1^a + sum_{i=2}^{z} (prod_{s<i} W_s) C_i^a
///       + (prod_{s<=z} W_s) [sum_{j=z+1}^{N-2} W_j C_j^a + C_{N-1}^a],
/// W_r = (w_r + l_r^d_r)^(a/g) - (l_r^d_r)^(a/g), under the hypothesis chain
/// documented at detail::chain_hypotheses.  Requires alpha >= gamma >= 2.
inline BoundReport thm2_bound(const std::vector<double>& pair_cas,
                              const std::vector<double>& tail_cas,
                              const BoundParams& prm) {
    detail::check_chain_sizes(pair_cas, tail_cas, prm.z, "thm2_bound");
    if (!(prm.gamma >= 2.0) || !(prm.alpha >= prm.gamma))
        throw std::domain_error("thm2_bound: need alpha >= gamma >= 2");

    BoundReport rep;
    rep.family = "thm2";
    rep.hypotheses = detail::chain_hypotheses(pair_cas, tail_cas, prm);
    detail::require_all(rep.family, rep.hypotheses);

    const std::size_t rounds = pair_cas.size() - 1; // N-2
    const double e = prm.alpha / prm.gamma;
    auto big_omega = [&](std::size_t r) { // r is 1-based round index
        const double ld = std::pow(prm.ell_at(r - 1), prm.delta_at(r - 1));
        return std::pow(prm.omega_at(r - 1) + ld, e) - std::pow(ld, e);
    };

    double rhs = std::pow(pair_cas[0], prm.alpha);
    double prod = 1.0;
    for (std::size_t i = 2; i <= prm.z; ++i) {
        prod *= big_omega(i - 1);
        rhs += prod * std::pow(pair_cas[i - 1], prm.alpha);
    }
    prod *= big_omega(prm.z);
    for (std::size_t j = prm.z + 1; j <= rounds; ++j)
        rhs += prod * big_omega(j) * std::pow(pair_cas[j - 1], prm.alpha);
    rhs += prod * std::pow(pair_cas.back(), prm.alpha);

    rep.lhs = std::pow(tail_cas[0], prm.alpha);
    rep.rhs = rhs;
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

/// Beta-family chained bound (same hypothesis chain as thm2_bound):
///   rhs = p^e C_1^b + sum_{i=2}^{z} (prod_{s<i} G_s) p^((i-1)e) C_i^b
///       + (prod_{s<=z} G_s) [G_{z+1} C_{z+1}^b
///                            + sum_{j=z+2}^{N-2} G_j p^((j-z-2)e) C_j^b]
///       + (prod_{s<=z} G_s) p^((N-z-2)e) C_{N-1}^b,
/// G_r = (w_r + l_r^d_r)^e - (l_r^d_r)^e, e = beta/gamma, exactly as
/// displayed.  Requires 0 <= beta <= gamma/2, gamma >= 2, p in [1/2, 1].
///
/// NOTE: the test suite documents concrete hypothesis-satisfying instances
/// on which this displayed expression exceeds the left-hand side; the
/// evaluator reproduces the formula as stated and reports the residual
/// honestly rather than adjusting it.
inline BoundReport thm4_bound(const std::vector<double>& pair_cas,
                              const std::vector<double>& tail_cas,
                              const BoundParams& prm) {
    detail::check_chain_sizes(pair_cas, tail_cas, prm.z, "thm4_bound");
    if (!(prm.gamma >= 2.0))
        throw std::domain_error("thm4_bound: gamma must be >= 2");
    if (!(prm.beta >= 0.0 && prm.beta <= prm.gamma / 2.0))
        throw std::domain_error("thm4_bound: beta must lie in [0, gamma/2]");
    if (!(prm.p >= 0.5 && prm.p <= 1.0))
        throw std::domain_error("thm4_bound: p must lie in [1/2, 1]");

    BoundReport rep;
    rep.family = "thm4";
    rep.hypotheses = detail::chain_hypotheses(pair_cas, tail_cas, prm);
    detail::require_all(rep.family, rep.hypotheses);

    const std::size_t rounds = pair_cas.size() - 1; // N-2
    const double e = prm.beta / prm.gamma;
    auto big_gamma = [&](std::size_t r) {
        const double ld = std::pow(prm.ell_at(r - 1), prm.delta_at(r - 1));
        return pow_c(prm.omega_at(r - 1) + ld, e) - pow_c(ld, e);
    };

    double rhs = pow_c(prm.p, e) * pow_c(pair_cas[0], prm.beta);
    double prod = 1.0;
    for (std::size_t i = 2; i <= prm.z; ++i) {
        prod *= big_gamma(i - 1);
        rhs += prod * pow_c(prm.p, static_cast<double>(i - 1) * e) *
               pow_c(pair_cas[i - 1], prm.beta);
    }
    prod *= big_gamma(prm.z);
    rhs += prod * big_gamma(prm.z + 1) * pow_c(pair_cas[prm.z], prm.beta);
    for (std::size_t j = prm.z + 2; j <= rounds; ++j)
        rhs += prod * big_gamma(j) *
               pow_c(prm.p, static_cast<double>(j - prm.z - 2) * e) *
               pow_c(pair_cas[j - 1], prm.beta);
    // Final term carries p^((N-z-2) beta/gamma) with N-2 = rounds.
    rhs += prod * pow_c(prm.p, static_cast<double>(rounds - prm.z) * e) *
           pow_c(pair_cas.back(), prm.beta);

    rep.lhs = pow_c(tail_cas[0], prm.beta);
    rep.rhs = rhs;
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Earlier bound families (comparison curves)
// ---------------------------------------------------------------------------

/// The published bound families compared against in the figure sweeps.
/// zxn/jzx_a/jzx_b/xhlf_a are alpha-family (exponent alpha >= 2);
/// sx/lyy/xhlf_b are beta-family (exponent beta in [0, gamma/2]).
enum class PriorFamily { zxn, jzx_a, jzx_b, xhlf_a, sx, lyy, xhlf_b };

inline const char* prior_family_name(PriorFamily f) {
    switch (f) {
    case PriorFamily::zxn: return "zxn";
    case PriorFamily::jzx_a: return "jzx_a";
    case PriorFamily::jzx_b: return "jzx_b";
    case PriorFamily::xhlf_a: return "xhlf_a";
    case PriorFamily::sx: return "sx";
    case PriorFamily::lyy: return "lyy";
    case PriorFamily::xhlf_b: return "xhlf_b";
    }
    return "?";
}

namespace detail {

/// Ordering hypotheses of the split families, at the concurrence level:
/// `pair_dominant` rounds expect pair >= tail, the rest expect pair <= tail.
inline void split_order_hypotheses(const std::vector<double>& pair_cas,
                                   const std::vector<double>& tail_cas,
                                   std::size_t z, bool pair_dominant_first,
                                   std::vector<HypothesisCheck>& checks) {
    const std::size_t rounds = pair_cas.size() - 1;
    for (std::size_t r = 1; r <= rounds; ++r) {
        const bool pair_dominant = (r <= z) == pair_dominant_first;
        const double m = pair_dominant ? pair_cas[r - 1] - tail_cas[r]
                                       : tail_cas[r] - pair_cas[r - 1];
        checks.push_back({"round " + std::to_string(r) +
                              (pair_dominant ? " ordering: pair >= tail"
                                             : " ordering: pair <= tail"),
                          m >= -kHypothesisSlack, m});
    }
}

} // namespace detail

/// Evaluates one of the earlier bound families on the same inputs as the
/// chained theorems.  Three-party inputs (two pairs) use each family's
/// two-term form with the family coefficient on the second pair; longer
/// inputs use the published tower/nested expressions with split index z.
inline BoundReport prior_bounds(PriorFamily family,
                                const std::vector<double>& pair_cas,
                                const std::vector<double>& tail_cas,
                                const BoundParams& prm) {
    const char* who = prior_family_name(family);
    if (pair_cas.size() < 2)
        throw std::invalid_argument(std::string(who) +
                                    ": need at least 2 pair values");
    if (tail_cas.size() != pair_cas.size())
        throw std::invalid_argument(std::string(who) +
                                    ": tail_cas size must match pair_cas");
    for (double c : pair_cas)
        detail::check_ca_value(c, who);
    const bool alpha_family = family == PriorFamily::zxn ||
                              family == PriorFamily::jzx_a ||
                              family == PriorFamily::jzx_b ||
                              family == PriorFamily::xhlf_a;
    const double expo = alpha_family ? prm.alpha : prm.beta;
    if (alpha_family && !(prm.alpha >= 2.0))
        throw std::domain_error(std::string(who) + ": alpha must be >= 2");
    if (!alpha_family &&
        !(prm.beta >= 0.0 && prm.beta <= prm.gamma / 2.0 && prm.gamma >= 2.0))
        throw std::domain_error(std::string(who) +
                                ": need 0 <= beta <= gamma/2, gamma >= 2");

    const std::size_t n_pairs = pair_cas.size();
    const std::size_t rounds = n_pairs - 1;
    BoundReport rep;
    rep.family = who;
    rep.lhs = pow_c(tail_cas[0], expo);

    auto pairp = [&](std::size_t i) { return pow_c(pair_cas[i], expo); };

    // Family coefficient applied to the second pair in the two-term form.
    const double r_exp = expo / prm.gamma;
    double coeff2 = 0.0;
    switch (family) {
    case PriorFamily::zxn:
        coeff2 = 1.0;
        break;
    case PriorFamily::jzx_a:
        coeff2 = prm.alpha / 2.0;
        break;
    case PriorFamily::jzx_b:
        coeff2 = std::pow(2.0, prm.alpha / 2.0) - 1.0;
        break;
    case PriorFamily::xhlf_a:
    case PriorFamily::xhlf_b:
        if (!(prm.omega_at(0) >= 1.0))
            throw std::domain_error(std::string(who) + ": omega must be >= 1");
        if (!(prm.ell_at(0) > 0.0))
            throw std::domain_error(std::string(who) + ": l must be positive");
        coeff2 = pow_c(prm.omega_at(0) + prm.ell_at(0), r_exp) -
                 pow_c(prm.ell_at(0), r_exp);
        break;
    case PriorFamily::sx:
        coeff2 = pow_c(2.0, r_exp) - 1.0;
        break;
    case PriorFamily::lyy: {
        if (!(prm.k > 0.0))
            throw std::domain_error("lyy: k must be positive");
        coeff2 = (pow_c(1.0 + prm.k, r_exp) - 1.0) / pow_c(prm.k, r_exp);
        break;
    }
    }

    if (family == PriorFamily::zxn) {
        // Plain power sum, no ordering hypotheses.
        double rhs = 0.0;
        for (std::size_t i = 0; i < n_pairs; ++i)
            rhs += pairp(i);
        rep.rhs = rhs;
        rep.residual = rep.lhs - rep.rhs;
        return rep;
    }

    // Ordering hypotheses: alpha families put the dominant pairs first,
    // beta families the dominated ones.
    const std::size_t z = (n_pairs == 2) ? 1 : prm.z;
    if (n_pairs > 2 && (z < 1 || z > rounds))
        throw std::invalid_argument(std::string(who) + ": split index z = " +
                                    std::to_string(z) + " outside 1.." +
                                    std::to_string(rounds));
    if (family == PriorFamily::xhlf_a || family == PriorFamily::xhlf_b) {
        // gamma-power orientation plus admissibility, delta = 1 chain.
        BoundParams chain = prm;
        chain.delta = {1.0};
        chain.z = z;
        if (family == PriorFamily::xhlf_a) {
            rep.hypotheses = detail::chain_hypotheses(pair_cas, tail_cas, chain);
        } else {
            // Two-term beta form: small pair first, as used in the worked
            // comparison (orientation l C_2^g >= C_1^g, omega on C_2).
            const double g = prm.gamma;
            const double m1 = prm.ell_at(0) * std::pow(pair_cas[1], g) -
                              std::pow(pair_cas[0], g);
            const double m2 = std::pow(tail_cas[0], g) -
                              std::pow(pair_cas[0], g) -
                              prm.omega_at(0) * std::pow(pair_cas[1], g);
            rep.hypotheses.push_back({"orientation: l C_2^g >= C_1^g",
                                      m1 >= -kHypothesisSlack, m1});
            rep.hypotheses.push_back({"admissibility: lhs^g >= C_1^g + w C_2^g",
                                      m2 >= -kHypothesisSlack, m2});
            if (n_pairs > 2)
                detail::split_order_hypotheses(pair_cas, tail_cas, z, false,
                                               rep.hypotheses);
        }
    } else {
        const bool pair_dominant_first = alpha_family;
        detail::split_order_hypotheses(pair_cas, tail_cas, z,
                                       pair_dominant_first, rep.hypotheses);
    }
    detail::require_all(rep.family, rep.hypotheses);

    double rhs = 0.0;
    if (n_pairs == 2) {
        rhs = pairp(0) + coeff2 * pairp(1);
    } else {
        switch (family) {
        case PriorFamily::jzx_a: {
            const double t = prm.alpha / 2.0;
            for (std::size_t i = 1; i <= z; ++i)
                rhs += pow_c(t, static_cast<double>(i - 1)) * pairp(i - 1);
            for (std::size_t j = z + 1; j <= rounds; ++j)
                rhs += pow_c(t, static_cast<double>(z + 1)) * pairp(j - 1);
            rhs += pow_c(t, static_cast<double>(z)) * pairp(n_pairs - 1);
            break;
        }
        case PriorFamily::jzx_b: {
            const double t = std::pow(2.0, prm.alpha / 2.0) - 1.0;
            for (std::size_t i = 1; i <= z; ++i)
                rhs += pow_c(t, static_cast<double>(i - 1)) * pairp(i - 1);
            for (std::size_t j = z + 1; j <= rounds; ++j)
                rhs += pow_c(t, static_cast<double>(z + 1)) * pairp(j - 1);
            rhs += pow_c(t, static_cast<double>(z)) * pairp(n_pairs - 1);
            break;
        }
        case PriorFamily::xhlf_a:
        case PriorFamily::xhlf_b: {
            auto v_of = [&](std::size_t r) {
                return pow_c(prm.omega_at(r - 1) + prm.ell_at(r - 1), r_exp) -
                       pow_c(prm.ell_at(r - 1), r_exp);
            };
            rhs = pairp(0);
            double prod = 1.0;
            for (std::size_t i = 2; i <= z; ++i) {
                prod *= v_of(i - 1);
                rhs += prod * pairp(i - 1);
            }
            prod *= v_of(z);
            for (std::size_t j = z + 1; j <= rounds; ++j)
                rhs += prod * v_of(j) * pairp(j - 1);
            rhs += prod * pairp(n_pairs - 1);
            break;
        }
        case PriorFamily::sx: {
            // Tower exponents exactly as published, including the final
            // l^(N-1) weight.
            const double t = coeff2;
            for (std::size_t i = 1; i <= z; ++i)
                rhs += pow_c(t, static_cast<double>(i)) * pairp(i - 1);
            for (std::size_t j = z + 1; j <= rounds; ++j)
                rhs += pow_c(t, static_cast<double>(z)) * pairp(j - 1);
            rhs += pow_c(t, static_cast<double>(n_pairs)) * pairp(n_pairs - 1);
            break;
        }
        case PriorFamily::lyy: {
            const double t = coeff2;
            for (std::size_t i = 1; i <= z; ++i)
                rhs += pow_c(t, static_cast<double>(i - 1)) * pairp(i - 1);
            for (std::size_t j = z + 1; j <= rounds; ++j)
                rhs += pow_c(t, static_cast<double>(z)) * pairp(j - 1);
            rhs += pow_c(t, static_cast<double>(z + 1)) * pairp(n_pairs - 1);
            break;
        }
        default:
            break;
        }
    }
    rep.rhs = rhs;
    rep.residual = rep.lhs - rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Admissible parameter intervals
// ---------------------------------------------------------------------------

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = false;
    bool unbounded = false; ///< hi is +infinity

    bool contains(double x) const {
        return !empty && x >= lo - 1e-12 && (unbounded || x <= hi + 1e-12);
    }
};

/// Parameter windows determined by a pair of CoA values (the one-vs-rest
/// value follows from the weight identity):
///   alpha-family l:  [1, (C_aAB^g / C_aAC^g)^(1/delta)]
///   beta-family  l:  [C_aAB^g / C_aAC^g, 1], clipped to [0, 1]
///   omega:           [1, (C_a(A|BC)^g - C_aAB^g) / C_aAC^g]
/// Empty windows are reported as empty, never as errors.
struct AdmissibleIntervals {
    Interval alpha_ell;
    Interval beta_ell;
    Interval omega;
};

inline AdmissibleIntervals admissible_params(double ca_ab, double ca_ac,
                                             double gamma, double delta) {
    detail::check_ca_value(ca_ab, "admissible_params");
    detail::check_ca_value(ca_ac, "admissible_params");
    if (!(gamma >= 2.0))
        throw std::domain_error("admissible_params: gamma must be >= 2");
    if (!(delta >= 1.0))
        throw std::domain_error("admissible_params: delta must be >= 1");

    const double ab_g = std::pow(ca_ab, gamma);
    const double ac_g = std::pow(ca_ac, gamma);
    const double lhs_g = std::pow(detail::lhs_from_pairs(ca_ab, ca_ac), gamma);

    AdmissibleIntervals out;
    if (ac_g == 0.0) {
        if (ab_g == 0.0) {
            out.alpha_ell = {0.0, 0.0, true, false};
            out.beta_ell = {0.0, 0.0, true, false};
            out.omega = {0.0, 0.0, true, false};
        } else {
            out.alpha_ell = {1.0, 0.0, false, true};
            out.beta_ell = {0.0, 0.0, true, false};
            out.omega = {1.0, 0.0, false, true};
        }
        return out;
    }

    const double ratio = ab_g / ac_g;
    const double alpha_hi = std::pow(ratio, 1.0 / delta);
    out.alpha_ell = {1.0, alpha_hi, alpha_hi < 1.0, false};
    out.beta_ell = {std::min(ratio, 1.0), 1.0, ratio > 1.0, false};
    const double omega_hi = (lhs_g - ab_g) / ac_g;
    out.omega = {1.0, omega_hi, omega_hi < 1.0 - 1e-12, false};
    return out;
}

// ---------------------------------------------------------------------------
// Tsallis-q residuals
// ---------------------------------------------------------------------------

/// (T_q^a)^alpha(one-vs-rest) - sum over pairs of (T_q^a)^alpha for party t
/// of a partitioned W-class state; the monogamy statement asserts >= 0.
/// Requires q in the validity union and alpha >= 2.
inline double tq_monogamy_residual(const PartyWeights& w, std::size_t t,
                                   double q, double alpha) {
    if (!(alpha >= 2.0))
        throw std::domain_error("tq_monogamy_residual: alpha must be >= 2");
    const double whole = tqeeoa_gw(w, t, q);
    double sum = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l)
        if (l != t)
            sum += std::pow(tqeeoa_pair_gw(w, t, l, q), alpha);
    return std::pow(whole, alpha) - sum;
}

/// (T_q^a)^beta(one-vs-rest) - sum over pairs of (T_q^a)^beta; the polygamy
/// statement asserts <= 0.  Requires q in the validity union and
/// beta in [0, 1]; beta = 0 uses the x^0 = 1 convention.
inline double tq_polygamy_residual(const PartyWeights& w, std::size_t t,
                                   double q, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::domain_error("tq_polygamy_residual: beta must lie in [0, 1]");
    const double whole = tqeeoa_gw(w, t, q);
    double sum = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l)
        if (l != t)
            sum += pow_c(tqeeoa_pair_gw(w, t, l, q), beta);
    return pow_c(whole, beta) - sum;
}

// ---------------------------------------------------------------------------
// Ordering chains between the bound families
// ---------------------------------------------------------------------------

/// Coefficient-level chain at r = alpha/gamma (alpha family):
///   (w + l^d)^r - (l^d)^r >= (w + l)^r - l^r
///                         >= (1 + l)^r - l^r >= 2^r - 1
/// with ties at d = 1, w = 1, l = 1 respectively.  Requires w >= 1, l >= 1,
/// d >= 1 and r >= 1.
struct CoefficientChainPoint {
    double alpha = 0.0;
    double k_new = 0.0, k_xhlf = 0.0, k_base = 0.0, k_two = 0.0;
    double margin_new_xhlf = 0.0, margin_xhlf_base = 0.0, margin_base_two = 0.0;
};

inline CoefficientChainPoint coefficient_chain_point(double alpha,
                                                     const BoundParams& prm) {
    const double omega = prm.omega_at(0), ell = prm.ell_at(0), delta = prm.delta_at(0);
    if (!(omega >= 1.0) || !(ell >= 1.0) || !(delta >= 1.0))
        throw std::domain_error("coefficient_chain_point: omega, l, delta must be >= 1");
    if (!(prm.gamma >= 2.0) || !(alpha >= prm.gamma))
        throw std::domain_error("coefficient_chain_point: need alpha >= gamma >= 2");
    const double r = alpha / prm.gamma;
    const double ld = std::pow(ell, delta);
    CoefficientChainPoint pt;
    pt.alpha = alpha;
    pt.k_new = std::pow(omega + ld, r) - std::pow(ld, r);
    pt.k_xhlf = std::pow(omega + ell, r) - std::pow(ell, r);
    pt.k_base = std::pow(1.0 + ell, r) - std::pow(ell, r);
    pt.k_two = std::pow(2.0, r) - 1.0;
    pt.margin_new_xhlf = pt.k_new - pt.k_xhlf;
    pt.margin_xhlf_base = pt.k_xhlf - pt.k_base;
    pt.margin_base_two = pt.k_base - pt.k_two;
    return pt;
}

/// Value-level chain at r = beta/gamma (beta family), under the orientation
/// l C_AC^gamma >= C_AB^gamma:
///   p^r AB^b + [(w+l)^r - (pl)^r] AC^b >= AB^b + [(w+l)^r - l^r] AC^b
///     >= AB^b + [(1+l)^r - l^r] AC^b >= AB^b + (2^r - 1) AC^b
/// with ties at p = 1, w = 1, l = 1 respectively.
struct ValueChainPoint {
    double beta = 0.0;
    double e_ours = 0.0, e_xhlf = 0.0, e_base = 0.0, e_two = 0.0;
    double margin_ours_xhlf = 0.0, margin_xhlf_base = 0.0, margin_base_two = 0.0;
    double orientation_margin = 0.0; ///< l AC^g - AB^g, must be >= 0
};

inline ValueChainPoint value_chain_point(double beta, double ca_ab, double ca_ac,
                                         const BoundParams& prm) {
    const double omega = prm.omega_at(0), ell = prm.ell_at(0), p = prm.p;
    if (!(omega >= 1.0))
        throw std::domain_error("value_chain_point: omega must be >= 1");
    if (!(ell >= 0.0 && ell <= 1.0))
        throw std::domain_error("value_chain_point: l must lie in [0, 1]");
    if (!(p >= 0.5 && p <= 1.0))
        throw std::domain_error("value_chain_point: p must lie in [1/2, 1]");
    if (!(prm.gamma >= 2.0) || !(beta >= 0.0 && beta <= prm.gamma / 2.0))
        throw std::domain_error("value_chain_point: need 0 <= beta <= gamma/2");
    const double r = beta / prm.gamma;
    const double ab_b = pow_c(ca_ab, beta);
    const double ac_b = pow_c(ca_ac, beta);
    ValueChainPoint pt;
    pt.beta = beta;
    pt.orientation_margin =
        ell * std::pow(ca_ac, prm.gamma) - std::pow(ca_ab, prm.gamma);
    pt.e_ours = pow_c(p, r) * ab_b + (pow_c(omega + ell, r) - pow_c(p * ell, r)) * ac_b;
    pt.e_xhlf = ab_b + (pow_c(omega + ell, r) - pow_c(ell, r)) * ac_b;
    pt.e_base = ab_b + (pow_c(1.0 + ell, r) - pow_c(ell, r)) * ac_b;
    pt.e_two = ab_b + (pow_c(2.0, r) - 1.0) * ac_b;
    pt.margin_ours_xhlf = pt.e_ours - pt.e_xhlf;
    pt.margin_xhlf_base = pt.e_xhlf - pt.e_base;
    pt.margin_base_two = pt.e_base - pt.e_two;
    return pt;
}

/// Sweeps whichever of the two ordering chains the parameters qualify for:
/// the coefficient chain over grid values read as alpha (needs l >= 1) and
/// the value chain over grid values read as beta (needs l <= 1), on the
/// supplied pair values.  Violations show up as negative margins in the
/// table; nothing throws for a violated ordering.
inline SweepTable remark_orderings(const BoundParams& prm,
                                   const std::vector<double>& grid,
                                   double ca_ab = 1.0 / 3.0,
                                   double ca_ac = 2.0 / 3.0) {
    if (grid.size() < 2)
        throw std::invalid_argument("remark_orderings: grid needs >= 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("remark_orderings: grid must be strictly "
                                        "increasing");
    const bool alpha_chain = prm.ell_at(0) >= 1.0 && grid.front() >= prm.gamma;
    const bool beta_chain =
        prm.ell_at(0) <= 1.0 && grid.back() <= prm.gamma / 2.0 + 1e-12;
    if (!alpha_chain && !beta_chain)
        throw std::invalid_argument("remark_orderings: parameters and grid fit "
                                    "neither ordering chain");
    SweepTable tab;
    tab.columns = {"x"};
    if (alpha_chain) {
        tab.columns.insert(tab.columns.end(),
                           {"k_new", "k_xhlf", "k_base", "k_two",
                            "m_new_xhlf", "m_xhlf_base", "m_base_two"});
    }
    if (beta_chain) {
        tab.columns.insert(tab.columns.end(),
                           {"e_ours", "e_xhlf", "e_base", "e_two",
                            "n_ours_xhlf", "n_xhlf_base", "n_base_two"});
    }
    for (double x : grid) {
        std::vector<double> row{x};
        if (alpha_chain) {
            const CoefficientChainPoint pt = coefficient_chain_point(x, prm);
            row.insert(row.end(),
                       {pt.k_new, pt.k_xhlf, pt.k_base, pt.k_two,
                        pt.margin_new_xhlf, pt.margin_xhlf_base, pt.margin_base_two});
        }
        if (beta_chain) {
            const ValueChainPoint pt = value_chain_point(x, ca_ab, ca_ac, prm);
            row.insert(row.end(),
                       {pt.e_ours, pt.e_xhlf, pt.e_base, pt.e_two,
                        pt.margin_ours_xhlf, pt.margin_xhlf_base, pt.margin_base_two});
        }
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

} // namespace gwm
