#pragma once

// Independent brute-force verification layer.  Everything downstream of the
// closed forms (pair/one-vs-rest assistance values, the rank-2 identities,
// the 3x2x2 witness state) can be cross-checked here by explicit
// decomposition sampling: the concurrence of assistance is a maximum over
// pure-state ensembles of a density matrix, so random ensembles give
// certified lower bounds that approach the closed form from below, while the
// plain concurrence is the corresponding minimum.
//
// Determinism: every trial derives its own SplitMix64 stream from
// (config.seed, trial index), so results are bit-for-bit reproducible and
// increasing the trial count never changes (or worsens) earlier candidates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwm/bounds.hpp"
#include "gwm/gw_states.hpp"
#include "gwm/measures.hpp"
#include "gwm/rng.hpp"
#include "gwm/tensor.hpp"

namespace gwm {

/// Controls for the ensemble samplers.
struct SamplingConfig {
    std::size_t trials = 2000;           ///< random ensembles drawn
    std::size_t decomposition_size = 0;  ///< members per ensemble; 0 = 2 x rank
    std::uint64_t seed = 20240915;       ///< base seed; trials derive from it
    std::size_t refine_steps = 60;       ///< local refinement moves per new best
};

namespace detail {

/// Columns of a random m x r complex Gaussian, orthonormalized (thin QR via
/// twice-applied modified Gram-Schmidt).
inline ComplexMatrix random_isometry(SplitMix64& rng, std::size_t m, std::size_t r) {
    ComplexMatrix u(m, r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j)
            u(i, j) = cplx(rng.next_normal(), rng.next_normal());
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t i = 0; i < j; ++i) {
                cplx dot(0.0, 0.0);
                for (std::size_t k = 0; k < m; ++k)
                    dot += std::conj(u(k, i)) * u(k, j);
                for (std::size_t k = 0; k < m; ++k)
                    u(k, j) -= dot * u(k, i);
            }
            double nrm = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                nrm += std::norm(u(k, j));
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) {
                // Degenerate draw; replace with a fresh Gaussian column.
                for (std::size_t k = 0; k < m; ++k)
                    u(k, j) = cplx(rng.next_normal(), rng.next_normal());
                --j;
                continue;
            }
            for (std::size_t k = 0; k < m; ++k)
                u(k, j) /= nrm;
        }
    }
    return u;
}

/// Spectral data of a density matrix prepared for ensemble sampling.
struct EnsembleBasis {
    std::size_t da = 0, db = 0;
    std::vector<std::vector<cplx>> scaled; ///< sqrt(lambda_k) * eigvec_k
};

inline EnsembleBasis ensemble_basis(const ComplexMatrix& rho, std::size_t da,
                                    std::size_t db, const char* who) {
    if (!rho.square() || rho.rows != da * db)
        throw std::invalid_argument(std::string(who) + ": matrix is " +
                                    std::to_string(rho.rows) + "x" +
                                    std::to_string(rho.cols) + " but sides give " +
                                    std::to_string(da * db));
    const double tr = trace(rho).real();
    if (std::abs(tr - 1.0) > 1e-8)
        throw std::domain_error(std::string(who) + ": trace " + std::to_string(tr) +
                                " differs from 1 by more than 1e-8");
    const EigenDecomposition eig = hermitian_eig(rho);
    if (eig.values.front() < -1e-8)
        throw std::domain_error(std::string(who) + ": eigenvalue " +
                                std::to_string(eig.values.front()) +
                                " below -1e-8; not a density matrix");
    EnsembleBasis basis;
    basis.da = da;
    basis.db = db;
    const std::size_t dim = rho.rows;
    for (std::size_t k = 0; k < dim; ++k) {
        const double lam = eig.values[dim - 1 - k]; // descending
        if (lam <= 1e-12)
            break;
        std::vector<cplx> col(dim);
        const double root = std::sqrt(lam);
        for (std::size_t i = 0; i < dim; ++i)
            col[i] = root * eig.vectors(i, dim - 1 - k);
        basis.scaled.push_back(std::move(col));
    }
    if (basis.scaled.empty())
        throw std::domain_error(std::string(who) + ": zero matrix");
    if (basis.scaled.size() > 8)
        throw std::length_error(std::string(who) + ": rank " +
                                std::to_string(basis.scaled.size()) +
                                " too large for ensemble sampling (max 8)");
    return basis;
}

/// Unnormalized contribution of one ensemble member: its weight times the
/// pure-state concurrence of its normalization.
inline double member_contribution(const std::vector<cplx>& member, std::size_t da,
                                  std::size_t db) {
    // p * C(member / sqrt(p)) collapses to the raw minor sum of the
    // unnormalized member, so tiny-weight members cost no precision.
    return 2.0 * std::sqrt(sum_sq_minors(member, da, db));
}

/// A concrete decomposition: m unnormalized members plus their cached
/// contributions.  The ensemble-average concurrence is the contribution sum.
struct EnsembleState {
    std::vector<std::vector<cplx>> members;
    std::vector<double> contrib;

    double value() const {
        double v = 0.0;
        for (double c : contrib)
            v += c;
        return v;
    }
};

inline EnsembleState make_ensemble(const EnsembleBasis& basis,
                                   const ComplexMatrix& u) {
    const std::size_t r = basis.scaled.size();
    const std::size_t dim = basis.da * basis.db;
    EnsembleState st;
    st.members.assign(u.rows, std::vector<cplx>(dim, cplx(0.0, 0.0)));
    st.contrib.resize(u.rows);
    for (std::size_t i = 0; i < u.rows; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            const cplx uik = u(i, k);
            if (uik == cplx(0.0, 0.0))
                continue;
            const std::vector<cplx>& col = basis.scaled[k];
            for (std::size_t x = 0; x < dim; ++x)
                st.members[i][x] += uik * col[x];
        }
        st.contrib[i] = member_contribution(st.members[i], basis.da, basis.db);
    }
    return st;
}

/// Local search over two-member rotations.  A 2x2 unitary acting on members
/// (i, j) embeds into the ancilla unitary, so it stays inside the set of
/// valid decompositions and changes only two contributions; composed moves
/// generate every decomposition reachable from the start.  Each move tries a
/// ladder of angles at a random phase and keeps the best (signed)
/// improvement.
inline void pairwise_polish(EnsembleState& st, const EnsembleBasis& basis,
                            SplitMix64& rng, std::size_t moves, double sign) {
    static constexpr double kAngles[] = {0.7, 0.35, 0.15, 0.06, 0.025, 0.01};
    const std::size_t m = st.members.size();
    if (m < 2)
        return;
    const std::size_t dim = basis.da * basis.db;
    std::vector<cplx> cand_i(dim), cand_j(dim), best_i(dim), best_j(dim);
    for (std::size_t move = 0; move < moves; ++move) {
        const std::size_t i = rng.next_below(m);
        std::size_t j = rng.next_below(m - 1);
        if (j >= i)
            ++j;
        const double phi = 6.283185307179586 * rng.next_u01();
        const cplx e(std::cos(phi), std::sin(phi));
        const double base = st.contrib[i] + st.contrib[j];
        // Gains below this are indistinguishable from contribution roundoff;
        // accepting them lets max-selection accrete noise across many moves.
        double best_gain = 1e-11;
        double best_ci = 0.0, best_cj = 0.0;
        bool found = false;
        for (double theta : kAngles) {
            for (double s : {theta, -theta}) {
                const double c = std::cos(s), sn = std::sin(s);
                for (std::size_t x = 0; x < dim; ++x) {
                    const cplx a = st.members[i][x], b = st.members[j][x];
                    cand_i[x] = c * a + sn * e * b;
                    cand_j[x] = -sn * std::conj(e) * a + c * b;
                }
                const double ci = member_contribution(cand_i, basis.da, basis.db);
                const double cj = member_contribution(cand_j, basis.da, basis.db);
                const double gain = sign * (ci + cj - base);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_i = cand_i;
                    best_j = cand_j;
                    best_ci = ci;
                    best_cj = cj;
                    found = true;
                }
            }
        }
        if (found) {
            st.members[i] = best_i;
            st.members[j] = best_j;
            st.contrib[i] = best_ci;
            st.contrib[j] = best_cj;
        }
    }
}

inline double sample_ensemble_extremum(const ComplexMatrix& rho, std::size_t da,
                                       std::size_t db, const SamplingConfig& cfg,
                                       bool maximize, const char* who) {
    const EnsembleBasis basis = ensemble_basis(rho, da, db, who);
    const std::size_t rank = basis.scaled.size();
    if (rank == 1) {
        // Pure state: the decomposition is unique, both extrema are exact.
        return concurrence_pure_bipartite(basis.scaled[0], da, db);
    }
    // Members per decomposition: default 2 x rank, admissible range
    // [rank, 4 x rank].
    const std::size_t m = std::min(
        std::max(cfg.decomposition_size ? cfg.decomposition_size : 2 * rank, rank),
        4 * rank);
    if (cfg.trials == 0)
        throw std::invalid_argument(std::string(who) + ": trials must be positive");

    // Signed so that larger is always better; trial t depends only on trials
    // before it, which keeps the reported extremum monotone in the trial
    // count for a fixed seed.
    const double sign = maximize ? 1.0 : -1.0;
    double best = -1e300;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        SplitMix64 rng(derive_seed(cfg.seed, trial));
        EnsembleState st = make_ensemble(basis, detail::random_isometry(rng, m, rank));
        double v = sign * st.value();
        // Polish only draws that land near the running best; deepen when the
        // polish sets a new record.
        if (best == -1e300 || v > best - 0.1) {
            pairwise_polish(st, basis, rng, cfg.refine_steps, sign);
            v = sign * st.value();
            if (v > best) {
                pairwise_polish(st, basis, rng, 9 * cfg.refine_steps, sign);
                v = sign * st.value();
            }
        }
        best = std::max(best, v);
    }
    return sign * best;
}

} // namespace detail

/// Best sampled ensemble-average concurrence of a bipartite density matrix
/// (sides da x db): a certified lower bound on the concurrence of
/// assistance that approaches it as trials grow.  Pure inputs return the
/// exact pure-state concurrence.
inline double coa_sampling_max(const ComplexMatrix& rho, std::size_t da,
                               std::size_t db, const SamplingConfig& cfg) {
    return detail::sample_ensemble_extremum(rho, da, db, cfg, true,
                                            "coa_sampling_max");
}

/// Least sampled ensemble-average concurrence: a certified upper bound on
/// the (convex-roof) concurrence of the mixed state.
inline double concurrence_sampling_min(const ComplexMatrix& rho, std::size_t da,
                                       std::size_t db, const SamplingConfig& cfg) {
    return detail::sample_ensemble_extremum(rho, da, db, cfg, false,
                                            "concurrence_sampling_min");
}

// ---------------------------------------------------------------------------
// Closed-form certification for W-class states
// ---------------------------------------------------------------------------

struct CertifyCheck {
    std::string name;
    double expected = 0.0;
    double got = 0.0;
    double tol = 0.0;
    bool lower_only = false; ///< sampling check: bracket is one-sided-loose below
    bool pass = false;
};

struct CertifyReport {
    std::vector<CertifyCheck> checks;
    bool pass = true;

    std::string first_failure() const {
        for (const CertifyCheck& c : checks)
            if (!c.pass)
                return c.name;
        return "";
    }
};

/// Cross-checks every closed-form pair and one-vs-rest assistance value of a
/// partitioned W-class state against an independent numerical path:
///   * singleton-qubit pairs: spin-flip singular values (exact),
///   * pure one-vs-rest cuts (no traced sites): pure-state concurrence,
///   * everything else: ensemble-sampling bracket
///     closed - sampling_tol <= sampled max <= closed + tol.
inline CertifyReport certify_gw_closed_forms(const GWStateSpec& spec,
                                             const Partition& part,
                                             const SamplingConfig& cfg,
                                             double tol = 1e-8,
                                             double sampling_tol = 5e-3) {
    validate_spec(spec);
    validate_partition(part, spec.n);
    const StateVector psi = build_gw_vector(spec);
    const PartyWeights w = party_weights(spec, part);
    const std::size_t m = part.parties.size();
    const bool traced = !traced_sites(part, spec.n).empty();

    CertifyReport rep;
    auto add_exact = [&](const std::string& name, double expected, double got) {
        CertifyCheck c{name, expected, got, tol, false,
                       std::abs(expected - got) <= tol};
        rep.pass = rep.pass && c.pass;
        rep.checks.push_back(std::move(c));
    };
    auto add_bracket = [&](const std::string& name, double expected, double got) {
        CertifyCheck c{name, expected, got, sampling_tol, true,
                       got >= expected - sampling_tol && got <= expected + tol};
        rep.pass = rep.pass && c.pass;
        rep.checks.push_back(std::move(c));
    };

    auto party_dim = [&](std::size_t t) {
        std::size_t dim = 1;
        for (std::size_t s = 0; s < part.parties[t].size(); ++s)
            dim *= spec.d;
        return dim;
    };

    // Pair values.
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t l = t + 1; l < m; ++l) {
            const double closed = coa_pair_gw(w, t, l);
            const std::string tag =
                "pair(" + std::to_string(t + 1) + "," + std::to_string(l + 1) + ")";
            std::vector<std::size_t> sites = part.parties[t];
            sites.insert(sites.end(), part.parties[l].begin(),
                         part.parties[l].end());
            const ComplexMatrix rho = reduce_density(psi, sites);
            const std::size_t dt = party_dim(t), dl = party_dim(l);
            if (dt == 2 && dl == 2) {
                add_exact(tag + " spin-flip concurrence", closed,
                          concurrence_wootters(rho));
                add_exact(tag + " spin-flip assistance", closed,
                          coa_two_qubit(rho));
            } else {
                add_bracket(tag + " sampling bracket", closed,
                            coa_sampling_max(rho, dt, dl, cfg));
            }
        }
    }

    // One-vs-rest values.
    for (std::size_t t = 0; t < m && m > 1; ++t) {
        const double closed = coa_one_vs_rest_gw(w, t);
        const std::string tag = "one-vs-rest(" + std::to_string(t + 1) + ")";
        if (!traced) {
            add_exact(tag + " pure concurrence", closed,
                      concurrence_pure(psi, part.parties[t]));
        } else {
            // Reduce with party t leading, the other retained sites behind.
            std::vector<std::size_t> sites = part.parties[t];
            std::size_t db = 1;
            for (std::size_t o = 0; o < m; ++o) {
                if (o == t)
                    continue;
                for (std::size_t s : part.parties[o]) {
                    sites.push_back(s);
                    db *= spec.d;
                }
            }
            const ComplexMatrix rho = reduce_density(psi, sites);
            add_bracket(tag + " sampling bracket", closed,
                        coa_sampling_max(rho, party_dim(t), db, cfg));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The 3 x 2 x 2 witness state
// ---------------------------------------------------------------------------

/// The qutrit-qubit-qubit pure state whose A-marginal is maximally mixed of
/// rank 3 while every decomposition member of rho_AB has reduced spectrum
/// {0, 1/3, 2/3}: (1/sqrt(6)) (sqrt(2)|121> + sqrt(2)|212> + |311> + |322>),
/// digits 1-based per subsystem.
inline StateVector counterexample_state() {
    StateVector psi;
    psi.dims = {3, 2, 2};
    psi.amps.assign(12, cplx(0.0, 0.0));
    const double s6 = 1.0 / std::sqrt(6.0);
    const double s26 = std::sqrt(2.0) * s6;
    auto idx = [](std::size_t a, std::size_t b, std::size_t c) {
        return a * 4 + b * 2 + c;
    };
    psi.amps[idx(0, 1, 0)] = s26; // |121>
    psi.amps[idx(1, 0, 1)] = s26; // |212>
    psi.amps[idx(2, 0, 0)] = s6;  // |311>
    psi.amps[idx(2, 1, 1)] = s6;  // |322>
    return psi;
}

struct CounterexampleReport {
    std::vector<double> rho_a_spectrum;   ///< ascending, expect (1/3,1/3,1/3)
    double spectrum_error = 0.0;          ///< max deviation of the above
    double member_spectrum_error = 0.0;   ///< worst member vs {0, 1/3, 2/3}
    double formula_vs_numeric = 0.0;      ///< worst |closed form - numeric| on grid
    SweepTable curve;                     ///< columns q, lhs, t_ab, residual_bound
    bool pass = true;
};

/// Numerical verification of the witness state: marginal spectrum, sampled
/// decomposition-member spectra of rho_AB, and the closed-form curve
/// lhs(q), t_ab(q), residual(q) cross-checked against spectra-based Tsallis
/// entropies on the q grid.
inline CounterexampleReport counterexample_numeric(const std::vector<double>& q_grid,
                                                   const SamplingConfig& cfg,
                                                   double spectrum_tol = 1e-8,
                                                   double formula_tol = 1e-10) {
    if (q_grid.empty())
        throw std::invalid_argument("counterexample_numeric: empty q grid");
    const StateVector psi = counterexample_state();
    CounterexampleReport rep;

    // Marginal of A: expect the maximally mixed qutrit.
    const ComplexMatrix rho_a = partial_trace_pure(psi, {0});
    const EigenDecomposition eig_a = hermitian_eig(rho_a);
    rep.rho_a_spectrum = eig_a.values;
    for (double lam : eig_a.values)
        rep.spectrum_error =
            std::max(rep.spectrum_error, std::abs(lam - 1.0 / 3.0));
    rep.pass = rep.pass && rep.spectrum_error <= spectrum_tol;

    // Every decomposition member of rho_AB must have A-spectrum {0,1/3,2/3}.
    const ComplexMatrix rho_ab = partial_trace_pure(psi, {0, 1});
    const detail::EnsembleBasis basis =
        detail::ensemble_basis(rho_ab, 3, 2, "counterexample_numeric");
    const std::size_t rank = basis.scaled.size();
    const std::size_t members = std::max<std::size_t>(2 * rank, 4);
    const std::size_t ensembles = std::min<std::size_t>(std::max<std::size_t>(cfg.trials, 1), 64);
    const std::vector<double> target{0.0, 1.0 / 3.0, 2.0 / 3.0};
    for (std::size_t trial = 0; trial < ensembles; ++trial) {
        SplitMix64 rng(derive_seed(cfg.seed, trial));
        const ComplexMatrix u = detail::random_isometry(rng, members, rank);
        for (std::size_t i = 0; i < members; ++i) {
            std::vector<cplx> member(6, cplx(0.0, 0.0));
            for (std::size_t k = 0; k < rank; ++k)
                for (std::size_t x = 0; x < 6; ++x)
                    member[x] += u(i, k) * basis.scaled[k][x];
            double p = 0.0;
            for (const cplx& zx : member)
                p += std::norm(zx);
            if (p < 1e-12)
                continue;
            // A-marginal spectrum of the normalized member (3x2 amplitudes).
            ComplexMatrix ma(3, 3);
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = 0; b < 3; ++b) {
                    cplx g(0.0, 0.0);
                    for (std::size_t x = 0; x < 2; ++x)
                        g += member[a * 2 + x] * std::conj(member[b * 2 + x]);
                    ma(a, b) = g / p;
                }
            const EigenDecomposition meig = hermitian_eig(ma);
            for (std::size_t k = 0; k < 3; ++k)
                rep.member_spectrum_error =
                    std::max(rep.member_spectrum_error,
                             std::abs(meig.values[k] - target[k]));
        }
    }
    rep.pass = rep.pass && rep.member_spectrum_error <= spectrum_tol;

    // Closed-form curve vs spectra-based Tsallis entropies.
    rep.curve.columns = {"q", "lhs", "t_ab", "residual_bound"};
    for (double q : q_grid) {
        const Rank2CounterexampleValues v = tq_rank2_counterexample(q);
        const double lhs_numeric =
            tsallis_entropy({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, q);
        const double tab_numeric =
            tsallis_entropy({0.0, 1.0 / 3.0, 2.0 / 3.0}, q);
        rep.formula_vs_numeric =
            std::max({rep.formula_vs_numeric, std::abs(v.lhs - lhs_numeric),
                      std::abs(v.t_ab - tab_numeric)});
        rep.curve.rows.push_back({q, v.lhs, v.t_ab, v.residual_bound});
    }
    rep.pass = rep.pass && rep.formula_vs_numeric <= formula_tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Random instance generators (shared by the fuzz driver and the test suite)
// ---------------------------------------------------------------------------

/// Random normalized W-class spec with every site carrying at least one
/// excitation level (so party weights stay positive).
inline GWStateSpec random_gw_spec(SplitMix64& rng, std::size_t d, std::size_t n) {
    GWStateSpec spec;
    spec.d = d;
    spec.n = n;
    double norm2 = 0.0;
    for (std::size_t site = 1; site <= n; ++site) {
        bool placed = false;
        for (std::size_t level = 1; level <= d - 1; ++level) {
            // Keep the table sparse for d > 2 but never leave a site empty.
            const bool include = level == d - 1 ? !placed : rng.next_u01() < 0.6;
            if (!include)
                continue;
            placed = true;
            GWCoeff c;
            c.site = site;
            c.level = level;
            c.b = cplx(rng.next_normal(), rng.next_normal());
            norm2 += std::norm(c.b);
            spec.coeffs.push_back(c);
        }
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (GWCoeff& c : spec.coeffs)
        c.b *= scale;
    // Remove the normalization roundoff exactly: rescale once more against
    // the recomputed sum.
    double again = 0.0;
    for (const GWCoeff& c : spec.coeffs)
        again += std::norm(c.b);
    const double fix = 1.0 / std::sqrt(again);
    for (GWCoeff& c : spec.coeffs)
        c.b *= fix;
    return spec;
}

/// Random partition of 1..n into `parties` groups; when allow_traced is set,
/// up to n - parties sites may be left out (traced).
inline Partition random_partition(SplitMix64& rng, std::size_t n,
                                  std::size_t parties, bool allow_traced) {
    if (parties < 1 || parties > n)
        throw std::invalid_argument("random_partition: party count out of range");
    std::vector<std::size_t> sites(n);
    for (std::size_t i = 0; i < n; ++i)
        sites[i] = i + 1;
    // Fisher-Yates with the deterministic generator.
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(sites[i], sites[j]);
    }
    Partition part;
    part.parties.assign(parties, {});
    // First `parties` sites seed the groups so none is empty.
    for (std::size_t t = 0; t < parties; ++t)
        part.parties[t].push_back(sites[t]);
    for (std::size_t i = parties; i < n; ++i) {
        if (allow_traced && rng.next_u01() < 0.3)
            continue; // traced out
        part.parties[rng.next_below(parties)].push_back(sites[i]);
    }
    for (auto& p : part.parties)
        std::sort(p.begin(), p.end());
    return part;
}

} // namespace gwm
