// Tests for the ensemble-sampling extremum search, the closed-form
// certification driver, the rank-3 witness-state verification, the random
// instance generators, and the randomized property sweeps.
//
// Every sampling call here is deterministic (fixed seeds, derived per trial),
// so the assertions are exact reproducibility contracts, not flaky margins.

#include "gwm/figures.hpp"
#include "gwm/fuzz.hpp"
#include "gwm/measures.hpp"
#include "gwm/oracle.hpp"
#include "gwm/rng.hpp"
#include "gwm/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <vector>

using gwm::ComplexMatrix;
using gwm::cplx;
using gwm::SamplingConfig;
using gwm::SplitMix64;

namespace {

SamplingConfig quick_cfg(std::size_t trials) {
    SamplingConfig cfg;
    cfg.trials = trials;
    return cfg;
}

ComplexMatrix identity_mixture(std::size_t dim) {
    ComplexMatrix rho(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        rho(i, i) = cplx(1.0 / static_cast<double>(dim), 0.0);
    return rho;
}

ComplexMatrix bell_density() {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = cplx(0.5, 0.0);
    return rho;
}

/// Random full-rank two-qubit density matrix (Ginibre construction).
ComplexMatrix random_density(SplitMix64& rng, std::size_t dim) {
    ComplexMatrix g(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            g(i, j) = cplx(rng.next_normal(), rng.next_normal());
    ComplexMatrix rho = gwm::matmul(g, gwm::adjoint(g));
    const double tr = gwm::trace(rho).real();
    for (cplx& z : rho.data)
        z /= tr;
    return rho;
}

} // namespace

// ============================================================================
// Sampling extrema: exact cases, determinism, monotonicity
// ============================================================================

TEST(Oracle, RankOneInputsAreExact) {
    // Pure product state: unique decomposition, concurrence 0.
    ComplexMatrix prod(4, 4);
    prod(0, 0) = cplx(1.0, 0.0);
    EXPECT_EQ(gwm::coa_sampling_max(prod, 2, 2, quick_cfg(5)), 0.0);
    EXPECT_EQ(gwm::concurrence_sampling_min(prod, 2, 2, quick_cfg(5)), 0.0);
    // Bell projector: both extrema equal 1.
    const ComplexMatrix bell = bell_density();
    EXPECT_NEAR(gwm::coa_sampling_max(bell, 2, 2, quick_cfg(5)), 1.0, 1e-12);
    EXPECT_NEAR(gwm::concurrence_sampling_min(bell, 2, 2, quick_cfg(5)), 1.0,
                1e-12);
}

TEST(Oracle, MaximallyMixedTwoQubits) {
    // I/4 has assistance value 1 (a Bell-basis decomposition attains it) and
    // convex-roof concurrence 0 (it is separable).  The sampler must land
    // within the advertised attainment gap on the high side and stay inside
    // the mathematical bracket on both sides.
    const ComplexMatrix rho = identity_mixture(4);
    const double smax = gwm::coa_sampling_max(rho, 2, 2, quick_cfg(2000));
    EXPECT_GE(smax, 1.0 - 5e-3);
    EXPECT_LE(smax, 1.0 + 1e-9);
    const double smin =
        gwm::concurrence_sampling_min(rho, 2, 2, quick_cfg(2000));
    EXPECT_GE(smin, 0.0);
    EXPECT_LE(smin, 5e-3);
}

TEST(Oracle, SamplingIsDeterministic) {
    SplitMix64 rng(311);
    const ComplexMatrix rho = random_density(rng, 4);
    const SamplingConfig cfg = quick_cfg(120);
    const double a = gwm::coa_sampling_max(rho, 2, 2, cfg);
    const double b = gwm::coa_sampling_max(rho, 2, 2, cfg);
    EXPECT_EQ(a, b);
    const double c = gwm::concurrence_sampling_min(rho, 2, 2, cfg);
    const double d = gwm::concurrence_sampling_min(rho, 2, 2, cfg);
    EXPECT_EQ(c, d);
}

TEST(Oracle, ExtremaMonotoneInTrialCount) {
    // Per-trial derived seeds make trial t independent of the total count,
    // so a longer run scans a superset of decompositions.
    SplitMix64 rng(7001);
    const ComplexMatrix rho = random_density(rng, 4);
    const double max_small = gwm::coa_sampling_max(rho, 2, 2, quick_cfg(60));
    const double max_large = gwm::coa_sampling_max(rho, 2, 2, quick_cfg(400));
    EXPECT_GE(max_large, max_small);
    const double min_small =
        gwm::concurrence_sampling_min(rho, 2, 2, quick_cfg(60));
    const double min_large =
        gwm::concurrence_sampling_min(rho, 2, 2, quick_cfg(400));
    EXPECT_LE(min_large, min_small);
}

TEST(Oracle, BracketsHoldOnRandomTwoQubitStates) {
    // Every ensemble average lies between the convex roof and the assistance
    // value, both of which have spin-flip closed forms for two qubits.
    SplitMix64 rng(424242);
    const SamplingConfig cfg = quick_cfg(150);
    for (int rep = 0; rep < 60; ++rep) {
        const ComplexMatrix rho = random_density(rng, 4);
        const double coa = gwm::coa_two_qubit(rho);
        const double croof = gwm::concurrence_wootters(rho);
        const double smax = gwm::coa_sampling_max(rho, 2, 2, cfg);
        const double smin = gwm::concurrence_sampling_min(rho, 2, 2, cfg);
        EXPECT_LE(smax, coa + 1e-9) << "case " << rep;
        EXPECT_GE(smin, croof - 1e-9) << "case " << rep;
        EXPECT_LE(smin, smax + 1e-12) << "case " << rep;
    }
}

TEST(Oracle, GwPairBracketsAreTight) {
    // Two-qubit reductions of W-class states are where the sampler must
    // attain both closed forms within the advertised gap.
    const gwm::GWStateSpec spec = gwm::example1_spec();
    const gwm::Partition part = gwm::three_singleton_partition();
    const gwm::StateVector psi = gwm::build_gw_vector(spec);
    const gwm::PartyWeights w = gwm::party_weights(spec, part);
    const SamplingConfig cfg = quick_cfg(400);
    for (std::size_t t = 0; t < 3; ++t) {
        for (std::size_t l = t + 1; l < 3; ++l) {
            const ComplexMatrix rho = gwm::reduce_density(psi, {t + 1, l + 1});
            const double closed = gwm::coa_pair_gw(w, t, l);
            const double croof = gwm::concurrence_wootters(rho);
            const double smax = gwm::coa_sampling_max(rho, 2, 2, cfg);
            const double smin = gwm::concurrence_sampling_min(rho, 2, 2, cfg);
            EXPECT_GE(smax, closed - 5e-3);
            EXPECT_LE(smax, closed + 1e-9);
            EXPECT_GE(smin, croof - 1e-9);
            EXPECT_LE(smin, croof + 5e-3);
        }
    }
}

TEST(Oracle, SamplingInputGuards) {
    EXPECT_THROW(gwm::coa_sampling_max(identity_mixture(16), 4, 4,
                                       quick_cfg(10)),
                 std::length_error); // rank 16 > 8
    EXPECT_THROW(gwm::coa_sampling_max(identity_mixture(4), 2, 2, quick_cfg(0)),
                 std::invalid_argument);
    EXPECT_THROW(gwm::coa_sampling_max(identity_mixture(4), 3, 3, quick_cfg(5)),
                 std::invalid_argument); // sides disagree with the matrix
    ComplexMatrix scaled = identity_mixture(4);
    for (cplx& z : scaled.data)
        z *= 2.0;
    EXPECT_THROW(gwm::coa_sampling_max(scaled, 2, 2, quick_cfg(5)),
                 std::domain_error); // trace 2
    ComplexMatrix indef(4, 4);
    indef(0, 0) = cplx(0.75, 0.0);
    indef(1, 1) = cplx(0.75, 0.0);
    indef(2, 2) = cplx(-0.25, 0.0);
    indef(3, 3) = cplx(-0.25, 0.0);
    EXPECT_THROW(gwm::coa_sampling_max(indef, 2, 2, quick_cfg(5)),
                 std::domain_error); // negative eigenvalue
}

// ============================================================================
// Closed-form certification
// ============================================================================

TEST(Oracle, CertifyFourQubitExample) {
    // Three singleton parties, one traced site: six spin-flip checks for the
    // pairs plus three sampling brackets for the one-vs-rest cuts.
    const gwm::CertifyReport rep = gwm::certify_gw_closed_forms(
        gwm::example1_spec(), gwm::three_singleton_partition(),
        quick_cfg(800));
    EXPECT_TRUE(rep.pass);
    EXPECT_EQ(rep.first_failure(), "");
    ASSERT_EQ(rep.checks.size(), 9u);
    std::size_t brackets = 0;
    for (const gwm::CertifyCheck& c : rep.checks) {
        EXPECT_TRUE(c.pass) << c.name;
        brackets += c.lower_only ? 1 : 0;
    }
    EXPECT_EQ(brackets, 3u);
}

TEST(Oracle, CertifyThreeQubitExample) {
    // No traced sites: the one-vs-rest cuts are certified by the exact
    // pure-state path instead of sampling.
    const gwm::CertifyReport rep = gwm::certify_gw_closed_forms(
        gwm::example2_spec(), gwm::three_singleton_partition(),
        quick_cfg(800));
    EXPECT_TRUE(rep.pass);
    ASSERT_EQ(rep.checks.size(), 9u);
    for (const gwm::CertifyCheck& c : rep.checks)
        EXPECT_FALSE(c.lower_only) << c.name;
}

TEST(Oracle, CertifyRandomQubitSpecs) {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
        SplitMix64 rng(seed);
        const gwm::GWStateSpec spec = gwm::random_gw_spec(rng, 2, 5);
        const gwm::Partition part = gwm::random_partition(rng, 5, 3, true);
        const gwm::CertifyReport rep =
            gwm::certify_gw_closed_forms(spec, part, quick_cfg(400));
        EXPECT_TRUE(rep.pass) << "seed " << seed << ": " << rep.first_failure();
    }
}

TEST(Oracle, CertifyRandomQutritSpec) {
    SplitMix64 rng(77);
    const gwm::GWStateSpec spec = gwm::random_gw_spec(rng, 3, 3);
    const gwm::Partition part = gwm::random_partition(rng, 3, 3, false);
    const gwm::CertifyReport rep =
        gwm::certify_gw_closed_forms(spec, part, quick_cfg(600));
    EXPECT_TRUE(rep.pass) << rep.first_failure();
}

// ============================================================================
// Witness-state verification
// ============================================================================

TEST(Oracle, WitnessStateIsNormalized) {
    const gwm::StateVector psi = gwm::counterexample_state();
    ASSERT_EQ(psi.dims.size(), 3u);
    EXPECT_EQ(psi.total_dim(), 12u);
    double n2 = 0.0;
    for (const cplx& a : psi.amps)
        n2 += std::norm(a);
    EXPECT_NEAR(n2, 1.0, 1e-15);
}

TEST(Oracle, WitnessNumericsPass) {
    std::vector<double> grid = gwm::linspace(gwm::kTsallisLowerQ, 2.0, 13);
    const std::vector<double> upper = gwm::linspace(3.0, gwm::kTsallisUpperQ, 7);
    grid.insert(grid.end(), upper.begin(), upper.end());
    const gwm::CounterexampleReport rep =
        gwm::counterexample_numeric(grid, quick_cfg(32));
    EXPECT_TRUE(rep.pass);
    ASSERT_EQ(rep.rho_a_spectrum.size(), 3u);
    for (double lam : rep.rho_a_spectrum)
        EXPECT_NEAR(lam, 1.0 / 3.0, 1e-10);
    EXPECT_LE(rep.spectrum_error, 1e-10);
    EXPECT_LE(rep.member_spectrum_error, 1e-8);
    EXPECT_LE(rep.formula_vs_numeric, 1e-10);
    ASSERT_EQ(rep.curve.columns.size(), 4u);
    ASSERT_EQ(rep.curve.rows.size(), grid.size());
    for (const std::vector<double>& row : rep.curve.rows)
        EXPECT_LE(row[3], 1e-12) << "q = " << row[0];
    EXPECT_THROW(gwm::counterexample_numeric({}, quick_cfg(4)),
                 std::invalid_argument);
}

TEST(Oracle, WitnessCurveHitsQTwoValues) {
    const gwm::CounterexampleReport rep =
        gwm::counterexample_numeric({2.0}, quick_cfg(4));
    ASSERT_EQ(rep.curve.rows.size(), 1u);
    EXPECT_NEAR(rep.curve.rows[0][1], 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(rep.curve.rows[0][2], 4.0 / 9.0, 1e-14);
    EXPECT_NEAR(rep.curve.rows[0][3], -2.0 / 9.0, 1e-14);
}

// ============================================================================
// Random instance generators
// ============================================================================

TEST(Oracle, RandomSpecsAreValid) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SplitMix64 rng(seed);
        const gwm::GWStateSpec spec = gwm::random_gw_spec(rng, 2 + seed % 3, 4);
        EXPECT_NO_THROW(gwm::validate_spec(spec));
        // Every site must carry at least one excitation.
        std::vector<bool> seen(5, false);
        for (const gwm::GWCoeff& c : spec.coeffs)
            seen[c.site] = true;
        for (std::size_t s = 1; s <= 4; ++s)
            EXPECT_TRUE(seen[s]) << "seed " << seed << " site " << s;
    }
}

TEST(Oracle, RandomPartitionsAreValid) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SplitMix64 rng(seed);
        const gwm::Partition part =
            gwm::random_partition(rng, 6, 3, seed % 2 == 0);
        EXPECT_NO_THROW(gwm::validate_partition(part, 6));
        ASSERT_EQ(part.parties.size(), 3u);
        for (const std::vector<std::size_t>& p : part.parties)
            EXPECT_FALSE(p.empty());
    }
    SplitMix64 rng(5);
    EXPECT_THROW(gwm::random_partition(rng, 4, 0, false),
                 std::invalid_argument);
    EXPECT_THROW(gwm::random_partition(rng, 4, 5, false),
                 std::invalid_argument);
}

// ============================================================================
// Randomized property sweeps
// ============================================================================

TEST(Oracle, FuzzTwoTermBoundsClean) {
    const gwm::FuzzOutcome t1 = gwm::fuzz_theorem(1, 800, 1);
    EXPECT_TRUE(t1.pass()) << t1.worst_reproducer;
    EXPECT_EQ(t1.violations, 0u);
    EXPECT_GE(t1.worst, -1e-10);
    const gwm::FuzzOutcome t3 = gwm::fuzz_theorem(3, 800, 1);
    EXPECT_TRUE(t3.pass()) << t3.worst_reproducer;
    EXPECT_GE(t3.worst, -1e-10);
}

TEST(Oracle, FuzzChainedAlphaClean) {
    const gwm::FuzzOutcome t2 = gwm::fuzz_theorem(2, 800, 1);
    EXPECT_TRUE(t2.pass()) << t2.worst_reproducer;
    EXPECT_EQ(t2.evaluated, 800u);
    EXPECT_GE(t2.worst, -1e-10);
}

TEST(Oracle, FuzzChainedBetaFindsViolations) {
    // The chained beta bound fails as displayed; the sweep must surface the
    // violations with a usable reproducer instead of passing quietly.
    const gwm::FuzzOutcome t4 = gwm::fuzz_theorem(4, 2000, 1);
    EXPECT_FALSE(t4.pass());
    EXPECT_GT(t4.violations, 0u);
    EXPECT_LT(t4.worst, -1e-3);
    EXPECT_FALSE(t4.worst_reproducer.empty());
    EXPECT_NE(t4.worst_reproducer.find("thm4"), std::string::npos);
    EXPECT_NE(t4.worst_reproducer.find("lhs="), std::string::npos);
}

TEST(Oracle, FuzzIsDeterministic) {
    const gwm::FuzzOutcome a = gwm::fuzz_theorem(3, 300, 99);
    const gwm::FuzzOutcome b = gwm::fuzz_theorem(3, 300, 99);
    EXPECT_EQ(a.worst, b.worst);
    EXPECT_EQ(a.worst_seed_index, b.worst_seed_index);
    EXPECT_EQ(a.evaluated, b.evaluated);
    EXPECT_EQ(a.rejected, b.rejected);
    EXPECT_EQ(a.worst_reproducer, b.worst_reproducer);
}

TEST(Oracle, FuzzLemmasClean) {
    const gwm::FuzzOutcome l1 = gwm::fuzz_lemma(1, 5000, 2);
    EXPECT_TRUE(l1.pass()) << l1.worst_reproducer;
    const gwm::FuzzOutcome l2 = gwm::fuzz_lemma(2, 5000, 2);
    EXPECT_TRUE(l2.pass()) << l2.worst_reproducer;
    EXPECT_THROW(gwm::fuzz_lemma(3, 10, 2), std::invalid_argument);
}

TEST(Oracle, FuzzTsallisResidualsClean) {
    const gwm::FuzzOutcome mono = gwm::fuzz_tq(false, 500, 3);
    EXPECT_TRUE(mono.pass()) << mono.worst_reproducer;
    const gwm::FuzzOutcome poly = gwm::fuzz_tq(true, 500, 3);
    EXPECT_TRUE(poly.pass()) << poly.worst_reproducer;
}
