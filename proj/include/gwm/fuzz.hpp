#pragma once

// Randomized property sweeps for the bound evaluators: instances are drawn
// so the hypothesis chains hold by construction (parameters are sampled
// inside their admissible intervals computed from the same weights), every
// rejection is counted rather than silently skipped, and each accepted
// instance carries a reproducer string keyed by its derived seed.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwm/bounds.hpp"
#include "gwm/gw_states.hpp"
#include "gwm/measures.hpp"
#include "gwm/rng.hpp"

namespace gwm {

namespace detail {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string join17(const std::vector<double>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            s += ", ";
        s += fmt17(xs[i]);
    }
    return s + "]";
}

} // namespace detail

/// One randomly drawn, hypothesis-satisfying theorem input: party weights
/// (A first) plus the derived pair/tail assistance values and parameters.
struct TheoremInstance {
    int theorem = 1;
    std::vector<double> weights;      ///< w_A, w_B1, ..., w_B_{N-1}
    BoundParams prm;
    double ca_ab = 0.0, ca_ac = 0.0;  ///< two-term bounds (thm1, thm3)
    std::vector<double> pair_cas;     ///< chained bounds (thm2, thm4)
    std::vector<double> tail_cas;
};

/// Draws a random instance for the bound families thm1..thm4.  Weights are
/// positive with a
/// random total at most 1; omega/l/delta/p are drawn inside the admissible
/// intervals implied by those weights, so the hypothesis chain holds by
/// construction (up to roundoff, absorbed by the evaluator slack).
inline TheoremInstance random_theorem_instance(int which, SplitMix64& rng) {
    if (which < 1 || which > 4)
        throw std::invalid_argument("random_theorem_instance: theorem index " +
                                    std::to_string(which) + " outside 1..4");
    TheoremInstance inst;
    inst.theorem = which;
    const double gamma = 2.0 + 2.0 * rng.next_u01();
    inst.prm.gamma = gamma;

    if (which == 1 || which == 3) {
        double wa = 0.05 + 0.55 * rng.next_u01();
        double wb = 0.01 + 0.99 * rng.next_u01();
        double wc = 0.01 + 0.99 * rng.next_u01();
        const double target = 0.3 + 0.7 * rng.next_u01();
        const double scale = target / (wa + wb + wc);
        wa *= scale;
        wb *= scale;
        wc *= scale;
        inst.weights = {wa, wb, wc};
        inst.ca_ab = 2.0 * std::sqrt(wa * wb);
        inst.ca_ac = 2.0 * std::sqrt(wa * wc);
        const double big = std::max(inst.ca_ab, inst.ca_ac);
        const double small = std::min(inst.ca_ab, inst.ca_ac);
        const double lhs = std::sqrt(big * big + small * small);

        if (which == 1) {
            inst.prm.alpha = gamma + 3.0 * rng.next_u01();
            const double delta = 1.0 + rng.next_u01();
            const double o_max = std::pow(big / small, gamma); // >= 1
            const double l_hi = std::pow(o_max, 1.0 / delta);
            inst.prm.delta = {delta};
            inst.prm.ell = {1.0 + rng.next_u01() * (l_hi - 1.0)};
            const double w_max = (std::pow(lhs, gamma) - std::pow(big, gamma)) /
                                 std::pow(small, gamma);
            inst.prm.omega = {1.0 + rng.next_u01() * std::max(w_max - 1.0, 0.0)};
        } else {
            inst.prm.beta = rng.next_u01() * gamma / 2.0;
            inst.prm.p = 0.5 + 0.5 * rng.next_u01();
            const double ratio = std::pow(small / big, gamma); // <= 1
            inst.prm.ell = {ratio + rng.next_u01() * (1.0 - ratio)};
            const double w_max = (std::pow(lhs, gamma) - std::pow(small, gamma)) /
                                 std::pow(big, gamma);
            inst.prm.omega = {1.0 + rng.next_u01() * std::max(w_max - 1.0, 0.0)};
        }
        return inst;
    }

    // Chained theorems: build the B-party weights backwards from the last
    // tail so each round's orientation ratio is a chosen factor.
    const std::size_t n_parties = 4 + rng.next_below(3); // N in {4,5,6}
    const std::size_t rounds = n_parties - 2;
    inst.prm.z = 1 + rng.next_below(n_parties - 3);      // 1..N-3
    if (which == 2)
        inst.prm.alpha = gamma + 3.0 * rng.next_u01();
    else {
        inst.prm.beta = rng.next_u01() * gamma / 2.0;
        inst.prm.p = 0.5 + 0.5 * rng.next_u01();
    }

    std::vector<double> wb(n_parties - 1), tail_sum(n_parties - 1);
    wb.back() = 1.0;
    tail_sum.back() = 1.0;
    for (std::size_t r = n_parties - 2; r-- > 0;) {
        const double f = (r + 1 <= inst.prm.z) ? 1.0 + 2.0 * rng.next_u01()
                                               : 0.01 + 0.99 * rng.next_u01();
        wb[r] = f * tail_sum[r + 1];
        tail_sum[r] = wb[r] + tail_sum[r + 1];
    }
    double wa = (0.05 + 0.55 * rng.next_u01()) * tail_sum[0];
    const double target = 0.3 + 0.7 * rng.next_u01();
    const double scale = target / (wa + tail_sum[0]);
    wa *= scale;
    for (double& w : wb)
        w *= scale;
    for (double& t : tail_sum)
        t *= scale;

    inst.weights.push_back(wa);
    inst.weights.insert(inst.weights.end(), wb.begin(), wb.end());
    inst.pair_cas.resize(n_parties - 1);
    inst.tail_cas.resize(n_parties - 1);
    for (std::size_t r = 0; r < n_parties - 1; ++r) {
        inst.pair_cas[r] = 2.0 * std::sqrt(wa * wb[r]);
        inst.tail_cas[r] = 2.0 * std::sqrt(wa * tail_sum[r]);
    }

    inst.prm.omega.assign(rounds, 1.0);
    inst.prm.ell.assign(rounds, 1.0);
    inst.prm.delta.assign(rounds, 1.0);
    for (std::size_t r = 1; r <= rounds; ++r) {
        const double pair_g = std::pow(inst.pair_cas[r - 1], gamma);
        const double tail_g = std::pow(inst.tail_cas[r], gamma);
        const double head_g = std::pow(inst.tail_cas[r - 1], gamma);
        const bool pair_side = r <= inst.prm.z;
        const double o_max = pair_side ? pair_g / tail_g : tail_g / pair_g;
        const double delta = 1.0 + rng.next_u01();
        inst.prm.delta[r - 1] = delta;
        inst.prm.ell[r - 1] =
            1.0 + rng.next_u01() * (std::pow(o_max, 1.0 / delta) - 1.0);
        const double w_max = pair_side ? (head_g - pair_g) / tail_g
                                       : (head_g - tail_g) / pair_g;
        inst.prm.omega[r - 1] = 1.0 + rng.next_u01() * std::max(w_max - 1.0, 0.0);
    }
    return inst;
}

/// Runs the matching bound evaluator on an instance.
inline BoundReport evaluate_instance(const TheoremInstance& inst) {
    switch (inst.theorem) {
    case 1:
        return thm1_bound(inst.ca_ab, inst.ca_ac, inst.prm);
    case 2:
        return thm2_bound(inst.pair_cas, inst.tail_cas, inst.prm);
    case 3:
        return thm3_bound(inst.ca_ab, inst.ca_ac, inst.prm);
    case 4:
        return thm4_bound(inst.pair_cas, inst.tail_cas, inst.prm);
    default:
        throw std::invalid_argument("evaluate_instance: bad theorem index");
    }
}

/// Full-precision reproducer line for an instance.
inline std::string describe_instance(const TheoremInstance& inst,
                                     std::uint64_t seed_index) {
    std::string s = "thm" + std::to_string(inst.theorem) +
                    " seed_index=" + std::to_string(seed_index) +
                    " weights=" + detail::join17(inst.weights) +
                    " gamma=" + detail::fmt17(inst.prm.gamma);
    if (inst.theorem == 1 || inst.theorem == 2)
        s += " alpha=" + detail::fmt17(inst.prm.alpha);
    else
        s += " beta=" + detail::fmt17(inst.prm.beta) +
             " p=" + detail::fmt17(inst.prm.p);
    if (inst.theorem == 2 || inst.theorem == 4)
        s += " z=" + std::to_string(inst.prm.z);
    s += " omega=" + detail::join17(inst.prm.omega) +
         " ell=" + detail::join17(inst.prm.ell) +
         " delta=" + detail::join17(inst.prm.delta);
    return s;
}

/// Aggregate result of a randomized sweep.  `worst` is the smallest margin
/// seen in the asserted direction (residual for >=-type targets, negated
/// residual for <=-type targets); a violation is worst < -tol.
struct FuzzOutcome {
    std::string target;
    std::size_t requested = 0;
    std::size_t evaluated = 0;
    std::size_t rejected = 0; ///< hypothesis failures, reported not skipped
    double worst = 0.0;
    std::uint64_t worst_seed_index = 0;
    std::string worst_reproducer;
    std::size_t violations = 0;
    std::uint64_t first_violation_seed_index = 0;
    double tol = 0.0;

    bool pass() const { return violations == 0 && evaluated == requested; }
};

/// Sweeps `count` hypothesis-passing instances of the chosen bound family
/// (thm1..thm4), asserting residual >= -tol on each.
inline FuzzOutcome fuzz_theorem(int which, std::size_t count,
                                std::uint64_t seed, double tol = 1e-10) {
    FuzzOutcome out;
    out.target = "thm" + std::to_string(which);
    out.requested = count;
    out.tol = tol;
    const std::size_t max_attempts = count * 20 + 100;
    for (std::uint64_t i = 0; out.evaluated < count && i < max_attempts; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const TheoremInstance inst = random_theorem_instance(which, rng);
        BoundReport rep;
        try {
            rep = evaluate_instance(inst);
        } catch (const hypothesis_error&) {
            ++out.rejected;
            continue;
        }
        ++out.evaluated;
        const double margin = rep.residual;
        if (out.evaluated == 1 || margin < out.worst) {
            out.worst = margin;
            out.worst_seed_index = i;
            out.worst_reproducer = describe_instance(inst, i) +
                                   " lhs=" + detail::fmt17(rep.lhs) +
                                   " rhs=" + detail::fmt17(rep.rhs);
        }
        if (margin < -tol) {
            if (out.violations == 0)
                out.first_violation_seed_index = i;
            ++out.violations;
        }
    }
    return out;
}

/// Sweeps `count` in-range samples of scalar inequality lemma1 or lemma2,
/// asserting margin >= -tol.  lemma1 draws tau, delta in [1,2], z in [1,3],
/// theta = tau^delta + U[0,3]; lemma2 draws 0 <= x <= y <= 1, p in [1/2, 1],
/// r in [0, 1/2].
inline FuzzOutcome fuzz_lemma(int which, std::size_t count, std::uint64_t seed,
                              double tol = 1e-12) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("fuzz_lemma: lemma index must be 1 or 2");
    FuzzOutcome out;
    out.target = "lemma" + std::to_string(which);
    out.requested = count;
    out.tol = tol;
    for (std::uint64_t i = 0; i < count; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        double margin;
        std::string repro;
        if (which == 1) {
            const double tau = 1.0 + rng.next_u01();
            const double delta = 1.0 + rng.next_u01();
            const double z = 1.0 + 2.0 * rng.next_u01();
            const double theta = std::pow(tau, delta) + 3.0 * rng.next_u01();
            margin = lemma1_check(theta, tau, delta, z);
            repro = "lemma1 seed_index=" + std::to_string(i) +
                    " theta=" + detail::fmt17(theta) +
                    " tau=" + detail::fmt17(tau) +
                    " delta=" + detail::fmt17(delta) + " z=" + detail::fmt17(z);
        } else {
            const double y = rng.next_u01();
            const double x = y * rng.next_u01();
            const double p = 0.5 + 0.5 * rng.next_u01();
            const double r = 0.5 * rng.next_u01();
            margin = lemma2_check(x, y, p, r);
            repro = "lemma2 seed_index=" + std::to_string(i) +
                    " x=" + detail::fmt17(x) + " y=" + detail::fmt17(y) +
                    " p=" + detail::fmt17(p) + " r=" + detail::fmt17(r);
        }
        ++out.evaluated;
        if (out.evaluated == 1 || margin < out.worst) {
            out.worst = margin;
            out.worst_seed_index = i;
            out.worst_reproducer = repro;
        }
        if (margin < -tol) {
            if (out.violations == 0)
                out.first_violation_seed_index = i;
            ++out.violations;
        }
    }
    return out;
}

/// Sweeps random weight vectors through the Tsallis-q residuals.  With
/// polygamy = false asserts tq_monogamy_residual >= -tol; with true asserts
/// tq_polygamy_residual <= tol.  `interval` picks the validity subinterval:
/// 0 lower, 1 upper, 2 alternating by draw.
inline FuzzOutcome fuzz_tq(bool polygamy, std::size_t count, std::uint64_t seed,
                           double tol = 1e-10, int interval = 2) {
    FuzzOutcome out;
    out.target = polygamy ? "tq_polygamy" : "tq_monogamy";
    out.requested = count;
    out.tol = tol;
    for (std::uint64_t i = 0; i < count; ++i) {
        SplitMix64 rng(derive_seed(seed, i));
        const std::size_t parties = 2 + rng.next_below(4); // 2..5
        PartyWeights w(parties);
        double sum = 0.0;
        for (double& x : w) {
            x = 0.01 + 0.99 * rng.next_u01();
            sum += x;
        }
        const double target = 0.2 + 0.8 * rng.next_u01();
        for (double& x : w)
            x *= target / sum;
        const std::size_t t = rng.next_below(parties);
        const bool upper = interval == 1 || (interval == 2 && rng.next_u01() < 0.5);
        const double q = upper
                             ? 3.0 + rng.next_u01() * (kTsallisUpperQ - 3.0)
                             : kTsallisLowerQ +
                                   rng.next_u01() * (2.0 - kTsallisLowerQ);
        double residual, expo;
        if (polygamy) {
            expo = rng.next_u01();
            residual = tq_polygamy_residual(w, t, q, expo);
        } else {
            expo = 2.0 + 3.0 * rng.next_u01();
            residual = tq_monogamy_residual(w, t, q, expo);
        }
        const double margin = polygamy ? -residual : residual;
        ++out.evaluated;
        if (out.evaluated == 1 || margin < out.worst) {
            out.worst = margin;
            out.worst_seed_index = i;
            out.worst_reproducer =
                out.target + " seed_index=" + std::to_string(i) +
                " weights=" + detail::join17(w) + " t=" + std::to_string(t) +
                " q=" + detail::fmt17(q) +
                (polygamy ? " beta=" : " alpha=") + detail::fmt17(expo) +
                " residual=" + detail::fmt17(residual);
        }
        if (margin < -tol) {
            if (out.violations == 0)
                out.first_violation_seed_index = i;
            ++out.violations;
        }
    }
    return out;
}

/// One-line human-readable summary of a sweep outcome.
inline std::string summarize(const FuzzOutcome& out) {
    std::string s = out.target + ": evaluated " + std::to_string(out.evaluated) +
                    "/" + std::to_string(out.requested) + ", rejected " +
                    std::to_string(out.rejected) + ", violations " +
                    std::to_string(out.violations) + ", worst margin " +
                    detail::fmt17(out.worst);
    if (out.violations > 0)
        s += " (first violation seed_index " +
             std::to_string(out.first_violation_seed_index) + ")";
    s += "\n  worst case: " + out.worst_reproducer;
    return s;
}

} // namespace gwm
