// Unit tests for the dense complex linear-algebra layer: matrix ops, Kronecker
// products, partial traces, the Jacobi eigensolver, PSD square roots, and the
// spin-flip singular values.

#include "gwm/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

using gwm::ComplexMatrix;
using gwm::cplx;
using gwm::StateVector;

namespace {

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

// |Phi+> = (|00> + |11>) / sqrt(2)
StateVector bell_phi_plus() {
    StateVector psi;
    psi.dims = {2, 2};
    psi.amps = {cplx(1.0 / std::sqrt(2.0), 0.0), 0.0, 0.0,
                cplx(1.0 / std::sqrt(2.0), 0.0)};
    return psi;
}

ComplexMatrix outer(const StateVector& psi) {
    const std::size_t n = psi.amps.size();
    ComplexMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rho(i, j) = psi.amps[i] * std::conj(psi.amps[j]);
    return rho;
}

} // namespace

// ============================================================================
// Basic matrix operations
// ============================================================================

TEST(Tensor, MatmulHandValue) {
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = cplx(1, 1);
    a(0, 1) = 2.0;
    a(1, 0) = 0.0;
    a(1, 1) = cplx(0, -1);
    b(0, 0) = 3.0;
    b(0, 1) = cplx(0, 1);
    b(1, 0) = 1.0;
    b(1, 1) = 1.0;
    const ComplexMatrix c = gwm::matmul(a, b);
    // row 0: (1+i)*3 + 2*1 = 5+3i ; (1+i)*i + 2 = 1+i
    EXPECT_NEAR(std::abs(c(0, 0) - cplx(5, 3)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c(0, 1) - cplx(1, 1)), 0.0, 1e-15);
    // row 1: -i*1 = -i ; -i*1 = -i
    EXPECT_NEAR(std::abs(c(1, 0) - cplx(0, -1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(c(1, 1) - cplx(0, -1)), 0.0, 1e-15);
}

TEST(Tensor, AdjointConjugatesAndTransposes) {
    ComplexMatrix a(2, 3);
    a(0, 1) = cplx(2, 5);
    a(1, 2) = cplx(0, -4);
    const ComplexMatrix d = gwm::adjoint(a);
    ASSERT_EQ(d.rows, 3u);
    ASSERT_EQ(d.cols, 2u);
    EXPECT_NEAR(std::abs(d(1, 0) - cplx(2, -5)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d(2, 1) - cplx(0, 4)), 0.0, 1e-15);
}

TEST(Tensor, TraceAndFrobeniusNorm) {
    ComplexMatrix a(2, 2);
    a(0, 0) = cplx(1, 2);
    a(1, 1) = cplx(3, -2);
    a(0, 1) = cplx(0, 2); // contributes to the norm only
    EXPECT_NEAR(std::abs(gwm::trace(a) - cplx(4, 0)), 0.0, 1e-15);
    // |1+2i|^2 + |3-2i|^2 + |2i|^2 = 5 + 13 + 4 = 22
    EXPECT_NEAR(gwm::frobenius_norm(a), std::sqrt(22.0), 1e-15);
}

TEST(Tensor, HermitizeRemovesDefect) {
    ComplexMatrix a(2, 2);
    a(0, 1) = cplx(1, 1);
    a(1, 0) = cplx(1, -1 + 1e-13);
    EXPECT_GT(gwm::hermiticity_defect(a), 0.0);
    gwm::hermitize(a);
    EXPECT_EQ(gwm::hermiticity_defect(a), 0.0);
}

TEST(Tensor, KronPauliXZ) {
    const ComplexMatrix k = gwm::kron(pauli_x(), pauli_z());
    ASSERT_EQ(k.rows, 4u);
    ASSERT_EQ(k.cols, 4u);
    // sigma_x (x) sigma_z = [[0, sigma_z], [sigma_z, 0]]
    EXPECT_NEAR(std::abs(k(0, 2) - cplx(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k(1, 3) - cplx(-1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k(2, 0) - cplx(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k(3, 1) - cplx(-1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k(0, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(k(2, 3)), 0.0, 1e-15);
}

TEST(Tensor, KronRejectsDimensionOverflow) {
    ComplexMatrix big(1 << 11, 1 << 11);
    EXPECT_THROW(gwm::kron(big, big), std::length_error);
}

// ============================================================================
// Partial trace
// ============================================================================

TEST(Tensor, PartialTraceOfProductFactors) {
    // rho = a (x) b with unit-trace factors: tracing out either side must
    // recover the other exactly.
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = 0.75;
    a(1, 1) = 0.25;
    a(0, 1) = cplx(0.1, 0.2);
    a(1, 0) = cplx(0.1, -0.2);
    b(0, 0) = 0.5;
    b(1, 1) = 0.5;
    b(0, 1) = cplx(0.0, -0.3);
    b(1, 0) = cplx(0.0, 0.3);
    const ComplexMatrix rho = gwm::kron(a, b);
    const ComplexMatrix ra = gwm::partial_trace(rho, {2, 2}, {0});
    const ComplexMatrix rb = gwm::partial_trace(rho, {2, 2}, {1});
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            EXPECT_NEAR(std::abs(ra(i, j) - a(i, j)), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(rb(i, j) - b(i, j)), 0.0, 1e-15);
        }
}

TEST(Tensor, PartialTraceKeepOrderReorders) {
    // Keeping {1, 0} must transpose the subsystem order of keeping {0, 1}.
    ComplexMatrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0;
    b(1, 1) = 1.0;
    const ComplexMatrix rho = gwm::kron(a, b); // |0><0| (x) |1><1|
    const ComplexMatrix swapped = gwm::partial_trace(rho, {2, 2}, {1, 0});
    // Expect |1><1| (x) |0><0|: entry (2, 2) in the swapped ordering.
    EXPECT_NEAR(std::abs(swapped(2, 2) - cplx(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(swapped(1, 1)), 0.0, 1e-15);
}

TEST(Tensor, PartialTracePureMatchesProjectorPath) {
    // 2 x 3 x 2 state with non-trivial amplitudes: reducing the pure state
    // directly must agree entrywise with reducing the full projector.
    StateVector psi;
    psi.dims = {2, 3, 2};
    psi.amps.assign(12, 0.0);
    for (std::size_t k = 0; k < 12; ++k)
        psi.amps[k] = cplx(std::sin(0.7 * double(k) + 0.1),
                           std::cos(1.3 * double(k)));
    double n2 = 0.0;
    for (const cplx& z : psi.amps)
        n2 += std::norm(z);
    for (cplx& z : psi.amps)
        z /= std::sqrt(n2);

    const ComplexMatrix rho = outer(psi);
    for (const std::vector<std::size_t>& keep :
         {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}, {1, 2}, {2, 0}}) {
        const ComplexMatrix direct = gwm::partial_trace_pure(psi, keep);
        const ComplexMatrix via_rho = gwm::partial_trace(rho, psi.dims, keep);
        ASSERT_EQ(direct.rows, via_rho.rows);
        double err = 0.0;
        for (std::size_t i = 0; i < direct.rows; ++i)
            for (std::size_t j = 0; j < direct.cols; ++j)
                err = std::max(err, std::abs(direct(i, j) - via_rho(i, j)));
        EXPECT_LT(err, 1e-14);
        EXPECT_NEAR(std::abs(gwm::trace(direct) - cplx(1, 0)), 0.0, 1e-12);
    }
}

TEST(Tensor, PartialTraceRejectsBadKeepIndex) {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 1.0;
    EXPECT_THROW(gwm::partial_trace(rho, {2, 2}, {2}), std::invalid_argument);
    EXPECT_THROW(gwm::partial_trace(rho, {2, 2}, {0, 0}), std::invalid_argument);
    EXPECT_THROW(gwm::partial_trace(rho, {2, 3}, {0}), std::invalid_argument);
}

TEST(Tensor, PartialTraceEmptyKeepIsFullTrace) {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = 0.3;
    rho(3, 3) = 0.7;
    const ComplexMatrix t = gwm::partial_trace(rho, {2, 2}, {});
    ASSERT_EQ(t.rows, 1u);
    EXPECT_NEAR(std::abs(t(0, 0) - cplx(1, 0)), 0.0, 1e-15);
}

TEST(Tensor, BellReductionIsMaximallyMixed) {
    const ComplexMatrix ra = gwm::partial_trace_pure(bell_phi_plus(), {0});
    EXPECT_NEAR(std::abs(ra(0, 0) - cplx(0.5, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ra(1, 1) - cplx(0.5, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ra(0, 1)), 0.0, 1e-15);
}

// ============================================================================
// Hermitian eigendecomposition
// ============================================================================

TEST(Tensor, EigTwoByTwoReal) {
    ComplexMatrix h(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 2.0;
    h(0, 1) = 1.0;
    h(1, 0) = 1.0;
    const gwm::EigenDecomposition eig = gwm::hermitian_eig(h);
    ASSERT_EQ(eig.values.size(), 2u);
    EXPECT_NEAR(eig.values[0], 1.0, 1e-14);
    EXPECT_NEAR(eig.values[1], 3.0, 1e-14);
}

TEST(Tensor, EigComplexPair) {
    // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
    ComplexMatrix h(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 1.0;
    h(0, 1) = cplx(0, 1);
    h(1, 0) = cplx(0, -1);
    const gwm::EigenDecomposition eig = gwm::hermitian_eig(h);
    EXPECT_NEAR(eig.values[0], 0.0, 1e-14);
    EXPECT_NEAR(eig.values[1], 2.0, 1e-14);
}

TEST(Tensor, EigResidualAndOrthonormality) {
    // 4x4 Hermitian built from a fixed recipe; verify H v = lambda v and
    // V^dagger V = I to near machine precision.
    ComplexMatrix h(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double re = 0.3 * double(i + j) + (i == j ? 1.5 : 0.0);
            const double im = 0.2 * (double(i) - double(j));
            h(i, j) = cplx(re, im);
        }
    const gwm::EigenDecomposition eig = gwm::hermitian_eig(h);
    double resid = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) {
            cplx hv(0, 0);
            for (std::size_t k = 0; k < 4; ++k)
                hv += h(i, k) * eig.vectors(k, j);
            resid = std::max(resid, std::abs(hv - eig.values[j] * eig.vectors(i, j)));
        }
    EXPECT_LT(resid, 1e-12);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            cplx dot(0, 0);
            for (std::size_t k = 0; k < 4; ++k)
                dot += std::conj(eig.vectors(k, a)) * eig.vectors(k, b);
            EXPECT_NEAR(std::abs(dot - (a == b ? cplx(1, 0) : cplx(0, 0))), 0.0,
                        1e-12);
        }
    // Ascending order.
    for (std::size_t j = 1; j < 4; ++j)
        EXPECT_LE(eig.values[j - 1], eig.values[j]);
}

TEST(Tensor, EigRejectsNonHermitian) {
    ComplexMatrix a(2, 2);
    a(0, 1) = 1.0; // a(1,0) stays 0 -> defect 1
    EXPECT_THROW(gwm::hermitian_eig(a), std::domain_error);
}

// ============================================================================
// PSD square root
// ============================================================================

TEST(Tensor, PsdSqrtSquaresBack) {
    ComplexMatrix h(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 2.0;
    h(0, 1) = cplx(0.5, 0.5);
    h(1, 0) = cplx(0.5, -0.5);
    const ComplexMatrix s = gwm::psd_sqrt(h);
    const ComplexMatrix s2 = gwm::matmul(s, s);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_NEAR(std::abs(s2(i, j) - h(i, j)), 0.0, 1e-13);
}

TEST(Tensor, PsdSqrtRejectsNegativeEigenvalue) {
    const ComplexMatrix z = pauli_z(); // eigenvalues +1, -1
    EXPECT_THROW(gwm::psd_sqrt(z), std::domain_error);
}

// ============================================================================
// Spin-flip singular values
// ============================================================================

TEST(Tensor, WoottersLambdasBellState) {
    // A maximally entangled pure state has lambdas (1, 0, 0, 0).
    const ComplexMatrix rho = outer(bell_phi_plus());
    const std::array<double, 4> z = gwm::wootters_lambdas(rho);
    EXPECT_NEAR(z[0], 1.0, 1e-10);
    EXPECT_NEAR(z[1], 0.0, 1e-10);
    EXPECT_NEAR(z[2], 0.0, 1e-10);
    EXPECT_NEAR(z[3], 0.0, 1e-10);
}

TEST(Tensor, WoottersLambdasMaximallyMixed) {
    // I/4 is spin-flip invariant: all four lambdas are 1/4.
    ComplexMatrix rho(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        rho(i, i) = 0.25;
    const std::array<double, 4> z = gwm::wootters_lambdas(rho);
    for (double v : z)
        EXPECT_NEAR(v, 0.25, 1e-12);
    // Sorted descending.
    for (std::size_t i = 1; i < 4; ++i)
        EXPECT_GE(z[i - 1], z[i]);
}

TEST(Tensor, WoottersLambdasProductState) {
    // The spin flip of |01><01| is |10><10|, so the product rho rho~ vanishes
    // and all four singular values are zero.
    ComplexMatrix rho(4, 4);
    rho(1, 1) = 1.0;
    const std::array<double, 4> z = gwm::wootters_lambdas(rho);
    for (double v : z)
        EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(Tensor, WoottersLambdasRejectsBadInput) {
    ComplexMatrix not4(2, 2);
    not4(0, 0) = 1.0;
    EXPECT_THROW(gwm::wootters_lambdas(not4), std::invalid_argument);
    ComplexMatrix traceless(4, 4);
    traceless(0, 0) = 2.0; // trace 2, not a state
    EXPECT_THROW(gwm::wootters_lambdas(traceless), std::domain_error);
}
