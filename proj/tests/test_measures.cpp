// Unit tests for the entanglement measures: pure and mixed concurrence,
// assistance values, W-class closed forms, Tsallis-q entropies, the f_q
// bridge function, and the rank-2 witness curve.
//
// Reference values were computed independently (exact arithmetic where
// possible, a separate high-precision numerical pass otherwise) and are
// frozen here as literals.

#include "gwm/figures.hpp"
#include "gwm/measures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

using gwm::ComplexMatrix;
using gwm::cplx;
using gwm::GWStateSpec;
using gwm::Partition;
using gwm::PartyWeights;
using gwm::StateVector;

namespace {

// Exact closed-form targets for the four-qubit example state with singleton
// parties on sites 1..3 and site 4 traced: weights (1/2, 1/4, 4/25).
const double kPairAB = std::sqrt(2.0) / 2.0;        // 2 sqrt(1/2 * 1/4)
const double kPairAC = 2.0 * std::sqrt(2.0) / 5.0;  // 2 sqrt(1/2 * 4/25)
const double kRestA = std::sqrt(41.0 / 50.0);       // sqrt(4 * 1/2 * 41/100)

} // namespace

// ============================================================================
// Closed forms on the worked examples
// ============================================================================

TEST(Measures, FourQubitClosedForms) {
    const gwm::ThreePartyValues v = gwm::example1_values();
    EXPECT_NEAR(v.ca_ab, kPairAB, 1e-15);
    EXPECT_NEAR(v.ca_ac, kPairAC, 1e-15);
    EXPECT_NEAR(v.ca_rest, kRestA, 1e-15);
    // Frozen decimal values for quick cross-reference.
    EXPECT_NEAR(v.ca_ab, 0.707106781186548, 1e-14);
    EXPECT_NEAR(v.ca_ac, 0.565685424949238, 1e-14);
    EXPECT_NEAR(v.ca_rest, 0.905538513813742, 1e-14);
}

TEST(Measures, ThreeQubitClosedForms) {
    const gwm::ThreePartyValues v = gwm::example2_values();
    EXPECT_NEAR(v.ca_ab, 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(v.ca_ac, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(v.ca_rest, std::sqrt(5.0) / 3.0, 1e-15);
}

TEST(Measures, PairExponentTwoAdditivity) {
    // One-vs-rest squared equals the sum of squared pair values.
    const gwm::ThreePartyValues v = gwm::example1_values();
    EXPECT_NEAR(v.ca_rest * v.ca_rest, v.ca_ab * v.ca_ab + v.ca_ac * v.ca_ac,
                1e-14);
}

// ============================================================================
// Numerical Wootters path agrees with the closed forms
// ============================================================================

TEST(Measures, WoottersPathMatchesClosedForm) {
    const StateVector psi = gwm::build_gw_vector(gwm::example1_spec());
    const ComplexMatrix rho_ab = gwm::reduce_density(psi, {1, 2});
    const ComplexMatrix rho_ac = gwm::reduce_density(psi, {1, 3});
    // On this family the two-qubit assistance value and the Wootters
    // concurrence coincide; both paths must land on the closed forms.
    EXPECT_NEAR(gwm::coa_two_qubit(rho_ab), kPairAB, 1e-12);
    EXPECT_NEAR(gwm::coa_two_qubit(rho_ac), kPairAC, 1e-12);
    EXPECT_NEAR(gwm::concurrence_wootters(rho_ab), kPairAB, 1e-12);
    EXPECT_NEAR(gwm::concurrence_wootters(rho_ac), kPairAC, 1e-12);
}

TEST(Measures, PurePathMatchesOneVsRest) {
    // No site traced: the pure one-vs-rest concurrence must reproduce the
    // closed-form assistance value.
    const StateVector psi = gwm::build_gw_vector(gwm::example2_spec());
    EXPECT_NEAR(gwm::concurrence_pure(psi, {1}), std::sqrt(5.0) / 3.0, 1e-13);
    EXPECT_NEAR(gwm::concurrence_pure(psi, {2}), std::sqrt(5.0) / 3.0, 1e-13);
    EXPECT_NEAR(gwm::concurrence_pure(psi, {3}),
                2.0 * std::sqrt(2.0) / 3.0, 1e-13);
}

// ============================================================================
// Pure bipartite concurrence
// ============================================================================

TEST(Measures, BipartiteBellAndProduct) {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<cplx> bell{cplx(s, 0), 0.0, 0.0, cplx(s, 0)};
    EXPECT_NEAR(gwm::concurrence_pure_bipartite(bell, 2, 2), 1.0, 1e-15);
    const std::vector<cplx> product{1.0, 0.0, 0.0, 0.0};
    EXPECT_EQ(gwm::concurrence_pure_bipartite(product, 2, 2), 0.0);
}

TEST(Measures, BipartiteScaleInvariance) {
    // The value is defined for the normalized vector; scaling must not move it.
    std::vector<cplx> v{cplx(0.2, 0.1), cplx(0.0, -0.4), cplx(0.5, 0.0),
                        cplx(0.3, 0.3)};
    const double base = gwm::concurrence_pure_bipartite(v, 2, 2);
    for (cplx& z : v)
        z *= 3.0;
    EXPECT_NEAR(gwm::concurrence_pure_bipartite(v, 2, 2), base, 1e-14);
}

TEST(Measures, BipartiteNearSeparableAccuracy)
{
    // A nearly separable vector: (|0> + eps |1>)(|0>) + tiny cross term.
    // The 2x2 amplitude matrix [[1, 0], [eps, t]] has determinant t, so the
    // concurrence of the normalized vector is 2 t / (1 + eps^2 + t^2); a
    // naive 1 - purity evaluation loses this below ~1e-8.
    const double eps = 1e-4, t = 1e-9;
    const std::vector<cplx> v{1.0, 0.0, cplx(eps, 0), cplx(t, 0)};
    const double expected = 2.0 * t / (1.0 + eps * eps + t * t);
    EXPECT_NEAR(gwm::concurrence_pure_bipartite(v, 2, 2), expected,
                1e-15 * expected + 1e-22);
}

TEST(Measures, BipartiteRejectsSizeMismatch) {
    const std::vector<cplx> v{1.0, 0.0, 0.0};
    EXPECT_THROW(gwm::concurrence_pure_bipartite(v, 2, 2), std::invalid_argument);
}

// ============================================================================
// Closed-form guards
// ============================================================================

TEST(Measures, PairClosedFormGuards) {
    const PartyWeights w{0.5, 0.25, 0.16};
    EXPECT_THROW(gwm::coa_pair_gw(w, 0, 0), std::invalid_argument);
    EXPECT_THROW(gwm::coa_pair_gw(w, 0, 3), std::invalid_argument);
    EXPECT_THROW(gwm::coa_one_vs_rest_gw(w, 7), std::invalid_argument);
    const PartyWeights over{0.8, 0.8};
    EXPECT_THROW(gwm::coa_pair_gw(over, 0, 1), std::domain_error);
}

// ============================================================================
// Tsallis-q entropy and the f_q bridge
// ============================================================================

TEST(Measures, TsallisEntropyKnownValues) {
    EXPECT_NEAR(gwm::tsallis_entropy({0.5, 0.5}, 2.0), 0.5, 1e-15);
    EXPECT_NEAR(gwm::tsallis_entropy({1.0, 0.0}, 2.0), 0.0, 1e-15);
    // q = 3 uniform qutrit: (1 - 3 * (1/27)) / 2 = 4/9.
    EXPECT_NEAR(gwm::tsallis_entropy({1.0 / 3, 1.0 / 3, 1.0 / 3}, 3.0),
                4.0 / 9.0, 1e-15);
}

TEST(Measures, TsallisEntropyGuards) {
    EXPECT_THROW(gwm::tsallis_entropy({1.0}, 1.0), std::domain_error);
    EXPECT_THROW(gwm::tsallis_entropy({1.0}, -2.0), std::domain_error);
    EXPECT_THROW(gwm::tsallis_entropy({-0.5, 1.5}, 2.0), std::domain_error);
}

TEST(Measures, FqQuadraticSpecialCase) {
    // f_2(theta) = theta / 2 exactly.
    for (double theta : {0.0, 0.1, 0.5, 0.9, 1.0})
        EXPECT_NEAR(gwm::f_q(theta, 2.0), theta / 2.0, 1e-15);
}

TEST(Measures, FqEndpoints) {
    EXPECT_NEAR(gwm::f_q(0.0, 3.0), 0.0, 1e-15);
    // theta = 1: spectrum (1/2, 1/2) -> (1 - 2^(1-q)) / (q - 1).
    EXPECT_NEAR(gwm::f_q(1.0, 3.0), (1.0 - 0.25) / 2.0, 1e-15);
    EXPECT_THROW(gwm::f_q(1.5, 3.0), std::domain_error);
    EXPECT_THROW(gwm::f_q(-0.5, 3.0), std::domain_error);
    EXPECT_THROW(gwm::f_q(0.5, 1.0), std::domain_error);
}

TEST(Measures, ValidityWindowConstants) {
    EXPECT_NEAR(gwm::kTsallisLowerQ, (5.0 - std::sqrt(13.0)) / 2.0, 1e-15);
    EXPECT_NEAR(gwm::kTsallisUpperQ, (5.0 + std::sqrt(13.0)) / 2.0, 1e-15);
    EXPECT_TRUE(gwm::tsallis_q_in_validity_domain(gwm::kTsallisLowerQ));
    EXPECT_TRUE(gwm::tsallis_q_in_validity_domain(2.0));
    EXPECT_TRUE(gwm::tsallis_q_in_validity_domain(3.0));
    EXPECT_TRUE(gwm::tsallis_q_in_validity_domain(gwm::kTsallisUpperQ));
    EXPECT_FALSE(gwm::tsallis_q_in_validity_domain(2.5));
    EXPECT_FALSE(gwm::tsallis_q_in_validity_domain(0.5));
    EXPECT_FALSE(gwm::tsallis_q_in_validity_domain(4.5));
}

// ============================================================================
// Tsallis-q entanglement on the W-class family
// ============================================================================

TEST(Measures, TqeeoaMatchesSpectrumPath) {
    // On a pure state the one-vs-rest Tsallis-q entanglement is the entropy
    // of the reduced spectrum; the closed form routes through f_q(C^2).
    const GWStateSpec spec = gwm::example2_spec();
    const StateVector psi = gwm::build_gw_vector(spec);
    const Partition part = gwm::three_singleton_partition();
    const PartyWeights w = gwm::party_weights(spec, part);
    for (double q : {gwm::kTsallisLowerQ, 1.3, 2.0, 3.0, 4.0}) {
        for (std::size_t t = 0; t < 3; ++t) {
            const double closed = gwm::tqeeoa_gw(w, t, q);
            const double spectral = gwm::tsallis_pure(psi, {t + 1}, q);
            EXPECT_NEAR(closed, spectral, 1e-12)
                << "q = " << q << ", party " << t;
        }
    }
}

TEST(Measures, TqeeoaPairValue) {
    // Pair (1, 2) of the three-qubit example at q = 2:
    // C = 1/3, f_2(1/9) = 1/18.
    const PartyWeights w{1.0 / 6, 1.0 / 6, 2.0 / 3};
    EXPECT_NEAR(gwm::tqeeoa_pair_gw(w, 0, 1, 2.0), 1.0 / 18.0, 1e-15);
}

TEST(Measures, TqeeoaRejectsOutsideWindow) {
    const PartyWeights w{1.0 / 6, 1.0 / 6, 2.0 / 3};
    EXPECT_THROW(gwm::tqeeoa_gw(w, 0, 2.5), std::domain_error);
    EXPECT_THROW(gwm::tqeeoa_pair_gw(w, 0, 1, 0.2), std::domain_error);
}

// ============================================================================
// Rank-2 witness curve
// ============================================================================

TEST(Measures, WitnessCurveAtQTwo) {
    // q = 2: lhs = 2/3, t_ab = 4/9, residual = -2/9 (exact).
    const gwm::Rank2CounterexampleValues v = gwm::tq_rank2_counterexample(2.0);
    EXPECT_NEAR(v.lhs, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(v.t_ab, 4.0 / 9.0, 1e-15);
    EXPECT_NEAR(v.residual_bound, -2.0 / 9.0, 1e-15);
}

TEST(Measures, WitnessCurveMatchesSpectra) {
    // lhs must equal the Tsallis entropy of (1/3, 1/3, 1/3) and t_ab the
    // entropy of (1/3, 2/3), for q across both validity windows.
    for (double q : {gwm::kTsallisLowerQ, 0.8, 1.5, 2.0, 3.0, 3.7,
                     gwm::kTsallisUpperQ}) {
        const gwm::Rank2CounterexampleValues v = gwm::tq_rank2_counterexample(q);
        const double third = 1.0 / 3.0;
        EXPECT_NEAR(v.lhs, gwm::tsallis_entropy({third, third, third}, q), 1e-13);
        EXPECT_NEAR(v.t_ab, gwm::tsallis_entropy({third, 2 * third}, q), 1e-13);
        EXPECT_LE(v.residual_bound, 0.0);
    }
}
